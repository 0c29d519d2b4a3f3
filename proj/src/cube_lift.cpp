#include "pathlift/cube_lift.hpp"

#include "pathlift/errors.hpp"
#include "pathlift/path_lift.hpp"
#include "transfer.hpp"

namespace pathlift {

CubeInterpolation::CubeInterpolation(std::vector<Measure> corners) : corners_(std::move(corners)) {
  if (corners_.size() < 2) throw DomainError("cube interpolation needs at least two corners");
  for (const auto& c : corners_) require_same_space(corners_.front().space(), c.space(), "cube");
}

namespace {

void check_point(const CubeInterpolation& cube, const std::vector<Rational>& point) {
  if (point.size() != cube.dimension()) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, cube has " +
                      std::to_string(cube.dimension()));
  }
  for (const auto& t : point) {
    if (t < 0 || t > 1) throw DomainError("coordinate " + to_string(t) + " outside [0,1]");
  }
}

}  // namespace

Measure g_eval(const CubeInterpolation& cube, const std::vector<Rational>& point) {
  check_point(cube, point);
  Measure g = cube.corners()[0];
  for (std::size_t k = 0; k < point.size(); ++k) g = mixture(g, cube.corners()[k + 1], point[k]);
  return g;
}

SimpleRandomVariable g_lift_eval(const CubeInterpolation& cube, const std::vector<Rational>& point) {
  check_point(cube, point);
  const auto& corners = cube.corners();
  SimpleRandomVariable value =
      SegmentLift(canonical_rv(corners[0]), canonical_rv(corners[1]), 0, 1).eval(point[0]);

  const std::size_t m = cube.space()->size();
  for (std::size_t k = 1; k < point.size(); ++k) {
    const Rational& t = point[k];
    if (t == 0) continue;
    const SimpleRandomVariable target = canonical_rv(corners[k + 1]);
    detail::CellGrid cells(m, std::vector<omega::IntervalSet>(m));
    detail::CellGrid moved(m, std::vector<omega::IntervalSet>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        cells[i][j] = omega::intersect(value.block(i), target.block(j));
        if (i == j || cells[i][j].empty()) continue;
        const Rational gamma = t * omega::measure(cells[i][j]);
        const auto& base = target.block(j);
        const Rational s = omega::inverse_prefix_mass(cells[i][j], base, gamma);
        moved[i][j] = omega::intersect(cells[i][j], omega::prefix(base, s));
      }
    }
    value = SimpleRandomVariable(value.space(), detail::transfer_blocks(cells, moved));
  }
  return value;
}

}  // namespace pathlift
