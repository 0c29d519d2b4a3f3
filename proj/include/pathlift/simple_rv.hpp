#pragma once

#include "pathlift/metric_measure.hpp"
#include "pathlift/omega_sets.hpp"

#include <vector>

namespace pathlift {

/// A simple random variable on [0,1) with values in a finite metric space,
/// stored as one block per point: the variable equals point i on block i.
/// Blocks are pairwise disjoint and cover [0,1); empty blocks are allowed.
class SimpleRandomVariable {
 public:
  SimpleRandomVariable(SpacePtr space, std::vector<omega::IntervalSet> blocks);

  /// The constant variable equal to `point`.
  static SimpleRandomVariable constant(SpacePtr space, std::size_t point);

  const SpacePtr& space() const { return space_; }
  const std::vector<omega::IntervalSet>& blocks() const { return blocks_; }
  const omega::IntervalSet& block(std::size_t i) const { return blocks_[i]; }

  friend bool operator==(const SimpleRandomVariable& a, const SimpleRandomVariable& b) {
    return same_space(a.space_, b.space_) && a.blocks_ == b.blocks_;
  }

 private:
  SpacePtr space_;
  std::vector<omega::IntervalSet> blocks_;
};

Measure law(const SimpleRandomVariable& x);

/// Matrix of P(X = a_i, Y = a_j).
RationalMatrix joint_mass(const SimpleRandomVariable& x, const SimpleRandomVariable& y);

/// Ky Fan distance inf{ε : P(d(X,Y) ≥ ε) ≤ ε}.
Rational kyfan_rho(const SimpleRandomVariable& x, const SimpleRandomVariable& y);

/// Builds Y on the same sample space with P(X = a_i, Y = a_j) = π_ij by
/// cutting each block of X into leftmost slabs of sizes π_i·.
SimpleRandomVariable realize_coupling(const SimpleRandomVariable& x, const CouplingMatrix& coupling);

/// A variable with law `target` at Ky Fan distance exactly
/// q(law(x), target) from x.
SimpleRandomVariable match_to_law(const SimpleRandomVariable& x, const Measure& target);

/// Consecutive slabs of [0,1) in point order with lengths equal to the weights.
SimpleRandomVariable canonical_rv(const Measure& law);

}  // namespace pathlift
