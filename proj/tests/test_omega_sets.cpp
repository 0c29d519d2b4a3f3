#include "helpers.hpp"

#include "pathlift/errors.hpp"
#include "pathlift/random_instances.hpp"

using namespace testing;
using namespace pathlift::omega;

TEST_CASE("measure of simple sets") {
  CHECK(measure(IntervalSet()) == 0);
  CHECK(measure(IntervalSet::full()) == 1);
  CHECK(measure(set({{"0", "1/2"}, {"3/4", "1"}})) == q("3/4"));
}

TEST_CASE("construction normalizes to canonical form") {
  const auto a = set({{"1/2", "3/4"}, {"0", "1/4"}, {"1/4", "1/2"}, {"1/3", "1/3"}});
  CHECK(a == IntervalSet::of(0, q("3/4")));
  CHECK(a.size() == 1);
  CHECK_THROWS_AS(set({{"1/2", "3/2"}}), DomainError);
  CHECK_THROWS_AS(set({{"1/2", "1/4"}}), DomainError);
}

TEST_CASE("boolean operations") {
  CHECK(intersect(set({{"0", "1/2"}}), set({{"1/4", "3/4"}})) == set({{"1/4", "1/2"}}));
  const auto a = set({{"0", "1/3"}, {"1/2", "1"}});
  CHECK(unite(a, IntervalSet()) == a);
  CHECK(difference(IntervalSet::full(), set({{"1/3", "2/3"}})) == set({{"0", "1/3"}, {"2/3", "1"}}));
  CHECK(unite(set({{"0", "1/2"}}), set({{"1/2", "1"}})) == IntervalSet::full());
  CHECK(difference(a, a).empty());
  CHECK(is_subset(set({{"1/2", "3/4"}}), a));
  CHECK_FALSE(is_subset(set({{"1/4", "3/4"}}), a));
}

TEST_CASE("prefix carves from the left") {
  const auto a = set({{"0", "1/2"}, {"3/4", "1"}});
  CHECK(prefix(a, 0).empty());
  CHECK(prefix(a, q("1/2")) == set({{"0", "1/2"}}));
  CHECK(prefix(a, q("5/8")) == set({{"0", "1/2"}, {"3/4", "7/8"}}));
  CHECK(prefix(a, q("3/4")) == a);
  CHECK_THROWS_AS(prefix(a, q("-1/8")), DomainError);
  CHECK_THROWS_AS(prefix(a, q("7/8")), DomainError);
}

TEST_CASE("split into consecutive slabs") {
  const std::vector<Rational> w{q("1/2"), q("1/4"), q("1/4")};
  const auto parts = split(IntervalSet::full(), w);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == set({{"0", "1/2"}}));
  CHECK(parts[1] == set({{"1/2", "3/4"}}));
  CHECK(parts[2] == set({{"3/4", "1"}}));

  const auto a = set({{"0", "1/2"}, {"3/4", "1"}});
  const std::vector<Rational> whole{q("3/4")};
  CHECK(split(a, whole) == std::vector<IntervalSet>{a});
  const std::vector<Rational> two{q("1/2"), q("1/4")};
  CHECK(split(a, two) == std::vector<IntervalSet>{set({{"0", "1/2"}}), set({{"3/4", "1"}})});

  const std::vector<Rational> zero_middle{q("1/4"), q("0"), q("1/2")};
  const auto z = split(a, zero_middle);
  CHECK(z[1].empty());
  CHECK(z[2] == set({{"1/4", "1/2"}, {"3/4", "1"}}));

  const std::vector<Rational> short_sum{q("1/2")};
  CHECK_THROWS_AS(split(a, short_sum), DomainError);
  const std::vector<Rational> negative{q("1"), q("-1/4")};
  CHECK_THROWS_AS(split(a, negative), DomainError);
}

TEST_CASE("inverse prefix mass") {
  CHECK(inverse_prefix_mass(set({{"1/2", "1"}}), IntervalSet::full(), 0) == q("1/2"));
  const auto a = set({{"0", "1/4"}, {"1/2", "3/4"}});
  CHECK(inverse_prefix_mass(a, a, measure(a)) == measure(a));
  CHECK(inverse_prefix_mass(a, IntervalSet::full(), q("1/4")) == q("1/2"));
  CHECK(inverse_prefix_mass(a, IntervalSet::full(), q("1/8")) == q("1/8"));
  // Full mass is reached at 3/4 but the largest such s is the whole base.
  CHECK(inverse_prefix_mass(a, IntervalSet::full(), q("1/2")) == 1);
  // Coordinates of the base, not of [0,1): base = [1/2,1), a = [3/4,1).
  CHECK(inverse_prefix_mass(set({{"3/4", "1"}}), set({{"1/2", "1"}}), q("1/8")) == q("3/8"));
  CHECK_THROWS_AS(inverse_prefix_mass(a, IntervalSet::full(), q("3/4")), DomainError);
}

TEST_CASE("randomized algebra identities") {
  pathlift::random::Engine rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto space = pathlift::random::metric_space(rng, 3);
    const auto x = pathlift::random::random_variable(rng, space);
    const auto y = pathlift::random::random_variable(rng, space);
    const auto& a = x.block(0);
    const auto& b = y.block(1);
    CHECK(measure(unite(a, b)) + measure(intersect(a, b)) == measure(a) + measure(b));
    CHECK(unite(difference(a, b), intersect(a, b)) == a);
    CHECK(disjoint(difference(a, b), b));
    // Rebuilding from scrambled pieces gives back the same canonical list.
    std::vector<Interval> pieces;
    for (const auto& iv : a.intervals()) {
      const Rational mid = (iv.left + iv.right) / 2;
      pieces.push_back({mid, iv.right});
      pieces.push_back({iv.left, mid});
    }
    std::reverse(pieces.begin(), pieces.end());
    CHECK(IntervalSet(pieces) == a);
  }
}
