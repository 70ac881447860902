#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "optcv/sampling.hpp"

namespace optcv {

using IndexSet = std::vector<std::size_t>;

/// Disjoint train / test / discarded index sets over 0..n−1.
class SplitPlan {
 public:
  /// Sorts the sets and checks disjointness, bounds and non-emptiness of
  /// train and test; throws DegenerateInput otherwise.
  SplitPlan(std::size_t n, IndexSet train, IndexSet test, IndexSet discarded, std::string scheme);

  std::size_t n() const { return n_; }
  const IndexSet& train() const { return train_; }
  const IndexSet& test() const { return test_; }
  const IndexSet& discarded() const { return discarded_; }
  const std::string& scheme() const { return scheme_; }

 private:
  std::size_t n_;
  IndexSet train_;
  IndexSet test_;
  IndexSet discarded_;
  std::string scheme_;
};

/// Symmetric boolean adjacency with an empty diagonal.
class Adjacency {
 public:
  explicit Adjacency(std::size_t n);

  std::size_t size() const { return n_; }
  bool connected(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }
  /// Adds the undirected edge i–j; self-loops are rejected.
  void connect(std::size_t i, std::size_t j);

  static Adjacency path(std::size_t n);
  static Adjacency complete(std::size_t n);

 private:
  std::size_t n_;
  std::vector<unsigned char> cells_;
};

/// Dependency structure attached to a data set.
struct DependencyMetadata {
  std::optional<std::vector<std::size_t>> ordering;
  std::optional<std::vector<std::string>> groups;
  std::optional<Adjacency> adjacency;
};

/// Throws DimensionError when a present field does not have length n or the
/// ordering is not a permutation.
void validate(const DependencyMetadata& metadata, std::size_t n);

/// Random k-fold; fold sizes differ by at most one.
std::vector<SplitPlan> kfold(std::size_t n, std::size_t k, SeededStream& stream);

std::vector<SplitPlan> leave_one_out(std::size_t n);

/// Tail block of ⌈n·test_fraction⌉ observations as test, `gap` discarded
/// observations before it, everything earlier as train.
SplitPlan temporal_block(std::size_t n, double test_fraction, std::size_t gap);

/// Contiguous k-fold on the time axis; training observations within `gap`
/// positions of the test block are discarded.
std::vector<SplitPlan> non_dependent_cv(std::size_t n, std::size_t k, std::size_t gap);

/// One plan per distinct label (in sorted label order).
std::vector<SplitPlan> leave_one_group_out(const std::vector<std::string>& groups);

/// Uniform random test set of ⌈n·test_fraction⌉ nodes. With `buffer`, every
/// training node adjacent to a test node is discarded.
SplitPlan network_neighborhood_split(const Adjacency& adjacency, double test_fraction, bool buffer,
                                     SeededStream& stream);

/// `index,assignment` with assignment in {train,test,discarded}; indices not
/// in any set are omitted.
void write_csv(std::ostream& out, const SplitPlan& plan);

}  // namespace optcv
