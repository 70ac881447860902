#include "optcv/splitters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "optcv/error.hpp"

namespace optcv {
namespace {

std::size_t tail_size(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DimensionError("test_fraction must lie in (0, 1), got " + std::to_string(fraction));
  }
  // Guard against 0.2·100 landing a hair above 20.
  const double raw = static_cast<double>(n) * fraction;
  return static_cast<std::size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
}

IndexSet range(std::size_t first, std::size_t last) {
  IndexSet out(last - first);
  std::iota(out.begin(), out.end(), first);
  return out;
}

}  // namespace

SplitPlan::SplitPlan(std::size_t n, IndexSet train, IndexSet test, IndexSet discarded,
                     std::string scheme)
    : n_(n),
      train_(std::move(train)),
      test_(std::move(test)),
      discarded_(std::move(discarded)),
      scheme_(std::move(scheme)) {
  if (train_.empty()) throw DegenerateInput(scheme_ + ": training set is empty");
  if (test_.empty()) throw DegenerateInput(scheme_ + ": test set is empty");
  std::vector<unsigned char> seen(n_, 0);
  for (IndexSet* set : {&train_, &test_, &discarded_}) {
    std::sort(set->begin(), set->end());
    for (std::size_t i : *set) {
      if (i >= n_) throw DegenerateInput(scheme_ + ": index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw DegenerateInput(scheme_ + ": index " + std::to_string(i) + " assigned twice");
    }
  }
}

Adjacency::Adjacency(std::size_t n) : n_(n), cells_(n * n, 0) {}

void Adjacency::connect(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw DimensionError("adjacency index out of range");
  if (i == j) throw DegenerateInput("adjacency must have an empty diagonal");
  cells_[i * n_ + j] = 1;
  cells_[j * n_ + i] = 1;
}

Adjacency Adjacency::path(std::size_t n) {
  Adjacency a(n);
  for (std::size_t i = 1; i < n; ++i) a.connect(i - 1, i);
  return a;
}

Adjacency Adjacency::complete(std::size_t n) {
  Adjacency a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a.connect(i, j);
  }
  return a;
}

void validate(const DependencyMetadata& metadata, std::size_t n) {
  if (metadata.ordering) {
    const auto& order = *metadata.ordering;
    if (order.size() != n) throw DimensionError("ordering length must equal n");
    std::vector<bool> seen(n, false);
    for (std::size_t i : order) {
      if (i >= n || seen[i]) throw DimensionError("ordering must be a permutation of 0..n-1");
      seen[i] = true;
    }
  }
  if (metadata.groups && metadata.groups->size() != n) {
    throw DimensionError("group labels length must equal n");
  }
  if (metadata.adjacency && metadata.adjacency->size() != n) {
    throw DimensionError("adjacency size must equal n");
  }
}

std::vector<SplitPlan> kfold(std::size_t n, std::size_t k, SeededStream& stream) {
  if (k < 2 || k > n) {
    throw DimensionError("kfold needs 2 <= k <= n, got k=" + std::to_string(k) +
                         ", n=" + std::to_string(n));
  }
  IndexSet perm = range(0, n);
  stream.shuffle(perm.begin(), perm.end());
  const std::string tag = k == n ? "loo" : "kfold" + std::to_string(k);
  std::vector<SplitPlan> plans;
  plans.reserve(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    IndexSet test(perm.begin() + static_cast<std::ptrdiff_t>(start),
                  perm.begin() + static_cast<std::ptrdiff_t>(start + size));
    IndexSet train;
    train.reserve(n - size);
    train.insert(train.end(), perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(start));
    train.insert(train.end(), perm.begin() + static_cast<std::ptrdiff_t>(start + size), perm.end());
    plans.emplace_back(n, std::move(train), std::move(test), IndexSet{}, tag);
    start += size;
  }
  return plans;
}

std::vector<SplitPlan> leave_one_out(std::size_t n) {
  if (n < 2) throw DimensionError("leave-one-out needs n >= 2");
  std::vector<SplitPlan> plans;
  plans.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    IndexSet train = range(0, n);
    train.erase(train.begin() + static_cast<std::ptrdiff_t>(i));
    plans.emplace_back(n, std::move(train), IndexSet{i}, IndexSet{}, "loo");
  }
  return plans;
}

SplitPlan temporal_block(std::size_t n, double test_fraction, std::size_t gap) {
  const std::size_t test_size = tail_size(n, test_fraction);
  if (test_size == 0 || test_size + gap >= n) {
    throw DimensionError("temporal block with n=" + std::to_string(n) + ", test size " +
                         std::to_string(test_size) + " and gap " + std::to_string(gap) +
                         " leaves no training data");
  }
  const std::size_t test_start = n - test_size;
  const std::size_t train_end = test_start - gap;
  const std::string tag = gap == 0 ? "temporal_block" : "temporal_block_gap" + std::to_string(gap);
  return SplitPlan(n, range(0, train_end), range(test_start, n), range(train_end, test_start), tag);
}

std::vector<SplitPlan> non_dependent_cv(std::size_t n, std::size_t k, std::size_t gap) {
  if (k < 2 || k > n) {
    throw DimensionError("non-dependent CV needs 2 <= k <= n, got k=" + std::to_string(k) +
                         ", n=" + std::to_string(n));
  }
  const std::string tag = "non_dependent_cv_h" + std::to_string(gap);
  std::vector<SplitPlan> plans;
  plans.reserve(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    const std::size_t stop = start + size;
    IndexSet train;
    IndexSet discarded;
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= start && i < stop) continue;
      const std::size_t distance = i < start ? start - i : i - (stop - 1);
      (distance <= gap ? discarded : train).push_back(i);
    }
    if (train.empty()) {
      throw DimensionError("non-dependent CV with gap " + std::to_string(gap) +
                           " leaves fold " + std::to_string(f) + " without training data");
    }
    plans.emplace_back(n, std::move(train), range(start, stop), std::move(discarded), tag);
    start = stop;
  }
  return plans;
}

std::vector<SplitPlan> leave_one_group_out(const std::vector<std::string>& groups) {
  std::map<std::string, IndexSet> members;
  for (std::size_t i = 0; i < groups.size(); ++i) members[groups[i]].push_back(i);
  if (members.size() < 2) {
    throw DegenerateInput("leave-one-group-out needs at least two distinct groups");
  }
  std::vector<SplitPlan> plans;
  plans.reserve(members.size());
  for (const auto& [label, test] : members) {
    IndexSet train;
    train.reserve(groups.size() - test.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (groups[i] != label) train.push_back(i);
    }
    plans.emplace_back(groups.size(), std::move(train), test, IndexSet{}, "leave_one_group_out");
  }
  return plans;
}

SplitPlan network_neighborhood_split(const Adjacency& adjacency, double test_fraction, bool buffer,
                                     SeededStream& stream) {
  const std::size_t n = adjacency.size();
  const std::size_t test_size = tail_size(n, test_fraction);
  if (test_size == 0 || test_size >= n) {
    throw DimensionError("network split test size " + std::to_string(test_size) +
                         " must lie in [1, n)");
  }
  IndexSet perm = range(0, n);
  stream.shuffle(perm.begin(), perm.end());
  std::vector<unsigned char> in_test(n, 0);
  for (std::size_t i = 0; i < test_size; ++i) in_test[perm[i]] = 1;

  IndexSet train;
  IndexSet test;
  IndexSet discarded;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_test[i]) {
      test.push_back(i);
      continue;
    }
    bool touches_test = false;
    if (buffer) {
      for (std::size_t j = 0; j < n && !touches_test; ++j) {
        touches_test = in_test[j] && adjacency.connected(i, j);
      }
    }
    (touches_test ? discarded : train).push_back(i);
  }
  const std::string tag = buffer ? "network_buffered" : "network_holdout";
  if (train.empty()) {
    throw DegenerateInput(tag + ": buffering around the test nodes leaves no training data");
  }
  return SplitPlan(n, std::move(train), std::move(test), std::move(discarded), tag);
}

void write_csv(std::ostream& out, const SplitPlan& plan) {
  std::vector<const char*> label(plan.n(), nullptr);
  for (std::size_t i : plan.train()) label[i] = "train";
  for (std::size_t i : plan.test()) label[i] = "test";
  for (std::size_t i : plan.discarded()) label[i] = "discarded";
  out << "index,assignment\n";
  for (std::size_t i = 0; i < plan.n(); ++i) {
    if (label[i]) out << i << ',' << label[i] << '\n';
  }
}

}  // namespace optcv
