#pragma once

#include "pathlift/rational.hpp"

#include <span>
#include <vector>

namespace pathlift::omega {

/// Half-open interval [left, right).
struct Interval {
  Rational left;
  Rational right;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A measurable subset of the sample space [0,1) with Lebesgue measure:
/// a finite union of half-open rational intervals.
///
/// The representation is canonical. Intervals are sorted, nonempty, and
/// separated by gaps (no two touch), so two sets are equal exactly when
/// their interval lists are equal.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Normalizes an arbitrary list: drops empty intervals, sorts, and merges
  /// overlapping or touching ones. Throws DomainError if an endpoint lies
  /// outside [0,1] or left > right.
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet full();
  static IntervalSet of(const Rational& left, const Rational& right);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  // Appends in increasing order, merging with the last interval when they
  // touch. Callers guarantee sorted input inside [0,1].
  void append_sorted(const Rational& left, const Rational& right);

  friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
  friend IntervalSet unite(const IntervalSet&, const IntervalSet&);
  friend IntervalSet difference(const IntervalSet&, const IntervalSet&);
  friend IntervalSet unite_all(std::span<const IntervalSet>);
  friend IntervalSet prefix(const IntervalSet&, const Rational&);
  friend std::vector<IntervalSet> split(const IntervalSet&, std::span<const Rational>);

  std::vector<Interval> intervals_;
};

Rational measure(const IntervalSet& a);

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet difference(const IntervalSet& a, const IntervalSet& b);

/// Union of many sets in one merge pass.
IntervalSet unite_all(std::span<const IntervalSet> parts);

bool is_subset(const IntervalSet& a, const IntervalSet& b);
bool disjoint(const IntervalSet& a, const IntervalSet& b);

/// The leftmost part of `a` with measure `t`. For fixed `a` the map
/// t -> prefix(a, t) is increasing under inclusion, which makes it a
/// nested family indexed by mass in [0, measure(a)].
/// Throws DomainError unless 0 <= t <= measure(a).
IntervalSet prefix(const IntervalSet& a, const Rational& t);

/// Cuts `a` into consecutive leftmost slabs with the given masses.
/// Weights must be nonnegative and sum to measure(a) exactly.
std::vector<IntervalSet> split(const IntervalSet& a, std::span<const Rational> weights);

/// Largest s in [0, measure(base)] with measure(a ∩ prefix(base, s)) = gamma.
///
/// s -> measure(a ∩ prefix(base, s)) is continuous, piecewise linear with
/// slopes 0 and 1, and nondecreasing, so the answer is found by walking
/// a ∩ base in the order prefix() consumes base.
/// Throws DomainError unless 0 <= gamma <= measure(a ∩ base).
Rational inverse_prefix_mass(const IntervalSet& a, const IntervalSet& base, const Rational& gamma);

}  // namespace pathlift::omega
