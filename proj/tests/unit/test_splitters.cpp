#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "optcv/error.hpp"
#include "optcv/sampling.hpp"
#include "optcv/splitters.hpp"

using namespace optcv;

namespace {

IndexSet range(std::size_t first, std::size_t last) {
  IndexSet out;
  for (std::size_t i = first; i <= last; ++i) out.push_back(i);
  return out;
}

bool disjoint_cover(const SplitPlan& p) {
  std::vector<int> seen(p.n(), 0);
  for (const IndexSet* set : {&p.train(), &p.test(), &p.discarded()}) {
    for (std::size_t i : *set) ++seen[i];
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

}  // namespace

TEST_CASE("kfold examples") {
  SeededStream s(1, 0);
  const auto plans = kfold(10, 5, s);
  REQUIRE(plans.size() == 5);
  std::set<std::size_t> tested;
  for (const auto& p : plans) {
    CHECK(p.test().size() == 2);
    CHECK(disjoint_cover(p));
    tested.insert(p.test().begin(), p.test().end());
  }
  CHECK(tested.size() == 10);

  SeededStream again(1, 0);
  const auto replay = kfold(10, 5, again);
  for (std::size_t i = 0; i < 5; ++i) CHECK(replay[i].test() == plans[i].test());

  SeededStream t(2, 0);
  const auto loo = kfold(4, 4, t);
  CHECK(loo.size() == 4);
  CHECK(loo.front().scheme() == "loo");
  CHECK(leave_one_out(4)[2].test() == IndexSet{2});
  CHECK_THROWS(kfold(3, 4, t));
  CHECK_THROWS(kfold(3, 1, t));
}

TEST_CASE("temporal block examples") {
  const SplitPlan a = temporal_block(100, 0.2, 0);
  CHECK(a.train() == range(0, 79));
  CHECK(a.test() == range(80, 99));
  CHECK(a.discarded().empty());

  const SplitPlan b = temporal_block(100, 0.2, 5);
  CHECK(b.train() == range(0, 74));
  CHECK(b.discarded() == range(75, 79));
  CHECK(b.test() == range(80, 99));

  CHECK_THROWS(temporal_block(100, 0.2, 80));
  CHECK_THROWS(temporal_block(100, 0.0, 0));
  CHECK_THROWS(temporal_block(100, 1.0, 0));
}

TEST_CASE("non-dependent cv examples") {
  const auto plans = non_dependent_cv(10, 2, 1);
  REQUIRE(plans.size() == 2);
  CHECK(plans[0].test() == range(0, 4));
  CHECK(plans[0].train() == range(6, 9));
  CHECK(plans[0].discarded() == IndexSet{5});
  CHECK(plans[1].discarded() == IndexSet{4});

  const auto plain = non_dependent_cv(10, 5, 0);
  for (std::size_t f = 0; f < 5; ++f) {
    CHECK(plain[f].test() == range(2 * f, 2 * f + 1));
    CHECK(plain[f].discarded().empty());
  }
  CHECK_THROWS(non_dependent_cv(10, 2, 5));
}

TEST_CASE("leave one group out examples") {
  const auto plans = leave_one_group_out({"a", "a", "b", "b", "c"});
  REQUIRE(plans.size() == 3);
  CHECK(plans[0].test() == IndexSet{0, 1});
  CHECK(plans[1].test() == IndexSet{2, 3});
  CHECK(plans[2].test() == IndexSet{4});

  const auto singletons = leave_one_group_out({"x", "y", "z"});
  CHECK(singletons.size() == 3);
  for (const auto& p : singletons) CHECK(p.test().size() == 1);
  CHECK_THROWS_AS(leave_one_group_out({"a", "a"}), DegenerateInput);
}

TEST_CASE("network split examples") {
  SeededStream s(4, 0);
  const SplitPlan holdout = network_neighborhood_split(Adjacency(20), 0.25, true, s);
  CHECK(holdout.test().size() == 5);
  CHECK(holdout.discarded().empty());
  CHECK(holdout.train().size() == 15);

  CHECK_THROWS_AS(network_neighborhood_split(Adjacency::complete(10), 0.2, true, s), DegenerateInput);

  Adjacency cliques(6);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      cliques.connect(i, j);
      cliques.connect(i + 3, j + 3);
    }
  }
  int matched = 0;
  for (std::uint64_t seed = 0; seed < 200 && matched < 3; ++seed) {
    SeededStream t(seed, 0);
    std::optional<SplitPlan> plan;
    try {
      plan = network_neighborhood_split(cliques, 0.5, true, t);
    } catch (const DegenerateInput&) {
      continue;
    }
    const SplitPlan& p = *plan;
    if (p.test() == IndexSet{0, 1, 2} || p.test() == IndexSet{3, 4, 5}) {
      ++matched;
      const IndexSet other = p.test().front() == 0 ? IndexSet{3, 4, 5} : IndexSet{0, 1, 2};
      CHECK(p.train() == other);
      CHECK(p.discarded().empty());
    }
  }
  CHECK(matched > 0);
}

TEST_CASE("randomised structural properties") {
  SeededStream s(99, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 6 + s.below(60);
    const std::size_t k = 2 + s.below(std::min<std::size_t>(n - 1, 8));
    for (const auto& p : kfold(n, k, s)) CHECK(disjoint_cover(p));

    const std::size_t gap = s.below(3);
    const std::size_t folds = 2 + s.below(3);
    if (n / folds > 2 * gap + 1) {
      for (const auto& p : non_dependent_cv(n, folds, gap)) {
        CHECK(disjoint_cover(p));
        for (std::size_t tr : p.train()) {
          for (std::size_t te : p.test()) {
            const std::size_t d = tr > te ? tr - te : te - tr;
            CHECK(d > gap);
          }
        }
      }
    }

    Adjacency g(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (s.uniform() < 0.05) g.connect(i, j);
      }
    }
    try {
      const SplitPlan p = network_neighborhood_split(g, 0.2, true, s);
      CHECK(disjoint_cover(p));
      for (std::size_t tr : p.train()) {
        for (std::size_t te : p.test()) CHECK_FALSE(g.connected(tr, te));
      }
    } catch (const DegenerateInput&) {
    }
  }
}

TEST_CASE("plan validation and csv") {
  CHECK_THROWS_AS(SplitPlan(4, {0, 1}, {1, 2}, {}, "x"), DegenerateInput);
  CHECK_THROWS_AS(SplitPlan(4, {0, 1}, {}, {}, "x"), DegenerateInput);
  CHECK_THROWS_AS(SplitPlan(4, {0, 5}, {2}, {}, "x"), DegenerateInput);
  const SplitPlan p(4, {3, 0}, {2}, {1}, "x");
  CHECK(p.train() == IndexSet{0, 3});
  std::ostringstream out;
  write_csv(out, p);
  CHECK(out.str() == "index,assignment\n0,train\n1,discarded\n2,test\n3,train\n");

  DependencyMetadata meta;
  meta.ordering = std::vector<std::size_t>{0, 0, 1};
  CHECK_THROWS_AS(validate(meta, 3), DimensionError);
  meta.ordering = std::vector<std::size_t>{2, 0, 1};
  CHECK_NOTHROW(validate(meta, 3));
  meta.groups = std::vector<std::string>{"a"};
  CHECK_THROWS_AS(validate(meta, 3), DimensionError);
}
