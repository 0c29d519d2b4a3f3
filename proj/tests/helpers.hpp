#pragma once

#include "pathlift/path_lift.hpp"

#include <doctest.h>

#include <initializer_list>
#include <ostream>
#include <string>

namespace pathlift {

// doctest prints mpq_class through this.
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << to_string(r); }

}  // namespace pathlift

namespace testing {

using namespace pathlift;

inline Rational q(const char* text) { return parse_rational(text); }

inline omega::IntervalSet set(std::initializer_list<std::pair<const char*, const char*>> ivs) {
  std::vector<omega::Interval> out;
  for (const auto& [l, r] : ivs) out.push_back({q(l), q(r)});
  return omega::IntervalSet(std::move(out));
}

/// Two points a, b at distance d.
inline SpacePtr two_points(const char* d) {
  return FiniteMetricSpace::create({"a", "b"}, {{q("0"), q(d)}, {q(d), q("0")}});
}

/// Three points with all pairwise distances 1.
inline SpacePtr three_points() {
  return FiniteMetricSpace::create({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

inline Measure weights(const SpacePtr& space, std::initializer_list<const char*> w) {
  std::vector<Rational> out;
  for (const char* v : w) out.push_back(q(v));
  return Measure(space, std::move(out));
}

}  // namespace testing
