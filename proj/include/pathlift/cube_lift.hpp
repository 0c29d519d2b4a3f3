#pragma once

#include "pathlift/simple_rv.hpp"

#include <vector>

namespace pathlift {

/// Multi-affine interpolation g on [0,1]^n through n+1 corner measures:
///   g(t_1) = (1 − t_1) mu_1 + t_1 mu_2,
///   g(t_1..t_k) = (1 − t_k) g(t_1..t_{k−1}) + t_k mu_{k+1}.
class CubeInterpolation {
 public:
  explicit CubeInterpolation(std::vector<Measure> corners);

  const SpacePtr& space() const { return corners_.front().space(); }
  const std::vector<Measure>& corners() const { return corners_; }
  std::size_t dimension() const { return corners_.size() - 1; }

 private:
  std::vector<Measure> corners_;
};

inline constexpr std::size_t kMaxCubeDimension = 3;
inline constexpr std::size_t kDefaultCubeGrid = 9;

Measure g_eval(const CubeInterpolation& cube, const std::vector<Rational>& point);

/// Random variable with law g_eval(cube, point), built level by level.
///
/// Level 1 is the segment lift between canonical_rv(mu_1) and
/// canonical_rv(mu_2). Level k+1 starts from the level-k value A and the
/// fixed variable B = canonical_rv(mu_{k+2}), and on each cell A_i ∩ B_j
/// moves the part lying in the leftmost s* of B_j over to a_j, where s* is
/// chosen so that part has mass t_{k+1}·P(A_i ∩ B_j).
SimpleRandomVariable g_lift_eval(const CubeInterpolation& cube, const std::vector<Rational>& point);

}  // namespace pathlift
