#pragma once

#include "pathlift/simple_rv.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace pathlift {

/// Piecewise-affine path of measures: on [t_i, t_{i+1}] it interpolates
/// linearly between the vertex measures mu_i and mu_{i+1}.
class PolygonalPath {
 public:
  PolygonalPath(std::vector<Rational> breakpoints, std::vector<Measure> vertices);

  const SpacePtr& space() const { return vertices_.front().space(); }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Measure>& vertices() const { return vertices_; }

  /// Exact value at t in [0,1]; returns the vertex itself at a breakpoint.
  Measure eval(const Rational& t) const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Measure> vertices_;
};

/// A path of measures known only through point queries, with a declared
/// Lipschitz constant L for the Prokhorov distance:
/// q(alpha(s), alpha(t)) <= L |s - t|.
///
/// Every query is remembered and checked against all earlier queries;
/// the first violating pair raises DomainError naming both times. Copies
/// share the query record. Queries are thread safe.
class SampledPath {
 public:
  using Sampler = std::function<Measure(const Rational&)>;

  SampledPath(SpacePtr space, Sampler sampler, Rational lipschitz);

  /// A polygonal path presented as a sampled one.
  static SampledPath from_polygonal(PolygonalPath path, Rational lipschitz);

  const SpacePtr& space() const;
  const Rational& lipschitz() const;
  Measure operator()(const Rational& t) const;

  std::size_t queried_count() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Lipschitz constant of a polygonal path for the total variation distance,
/// max over pieces of TV(mu_i, mu_{i+1}) / (t_{i+1} - t_i). Since q <= TV it
/// is also a valid Prokhorov Lipschitz constant.
Rational polygonal_tv_lipschitz(const PolygonalPath& path);

/// Continuous path of random variables from `start` at time a to `end` at
/// time b. Each cell E_ij = {start = a_i, end = a_j} with i != j hands its
/// mass over from a_i to a_j from the left, at constant speed:
/// at relative time s the leftmost s·P(E_ij) of the cell already reads a_j.
class SegmentLift {
 public:
  SegmentLift(SimpleRandomVariable start, SimpleRandomVariable end, Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const SimpleRandomVariable& start() const { return start_; }
  const SimpleRandomVariable& end() const { return end_; }
  const std::vector<std::vector<omega::IntervalSet>>& cells() const { return cells_; }
  const RationalMatrix& cell_mass() const { return cell_mass_; }

  /// Exact value at t in [a,b]; equals start at a and end at b.
  SimpleRandomVariable eval(const Rational& t) const;

 private:
  SimpleRandomVariable start_;
  SimpleRandomVariable end_;
  Rational a_;
  Rational b_;
  std::vector<std::vector<omega::IntervalSet>> cells_;
  RationalMatrix cell_mass_;
};

SegmentLift segment_lift(const SimpleRandomVariable& x, const SimpleRandomVariable& y,
                         const Rational& a, const Rational& b);
SimpleRandomVariable segment_eval(const SegmentLift& segment, const Rational& t);

/// Chain of segment lifts sharing their vertex variables at the breakpoints.
class LiftedPath {
 public:
  LiftedPath(std::vector<Rational> breakpoints, std::vector<SimpleRandomVariable> vertices);

  const SpacePtr& space() const { return vertices_.front().space(); }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<SimpleRandomVariable>& vertices() const { return vertices_; }
  const std::vector<SegmentLift>& pieces() const { return pieces_; }

  SimpleRandomVariable eval(const Rational& t) const;
  /// The piece used to evaluate at t (the one starting at t on a breakpoint).
  const SegmentLift& piece_at(const Rational& t) const;
  Rational min_piece_length() const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<SimpleRandomVariable> vertices_;
  std::vector<SegmentLift> pieces_;
};

/// Exact evidence about a lifted path, recomputable from the lift and its
/// target.
struct Certificate {
  std::vector<Rational> grid;
  /// Prokhorov distance between law(lift(t)) and target(t) at each grid time.
  std::vector<Rational> law_gaps;
  Rational max_law_gap = 0;
  /// Ky Fan distance between consecutive grid values.
  std::vector<Rational> continuity_table;
  Rational min_piece_length = 0;
  /// Bound on ρ between any two times in one grid step:
  /// max table entry + 2·(largest grid step)/(shortest piece).
  Rational continuity_bound = 0;
  bool start_ok = false;
  bool end_ok = false;
  /// Sup over the grid of ρ between successive liftings, one per refinement
  /// round, and the budget 5(ε_n + ε_{n+1}) each entry is held to.
  std::vector<Rational> decay_table;
  std::vector<Rational> decay_budget;

  bool decay_within_budget() const;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline constexpr std::size_t kDefaultGridPoints = 257;

/// Uniform grid i/(n-1), i = 0..n-1, merged with `extra` times, sorted and
/// deduplicated.
std::vector<Rational> verification_grid(std::size_t n, const std::vector<Rational>& extra);

Measure polygonal_eval(const PolygonalPath& path, const Rational& t);

/// Lifting of a polygonal path with prescribed endpoint variables. Interior
/// vertices are chained by match_to_law, so each is as close as possible to
/// the previous one; the last segment runs into `end`.
/// Throws DomainError if law(start) != path(0) or law(end) != path(1).
LiftedPath lift_polygonal(const PolygonalPath& path, const SimpleRandomVariable& start,
                          const SimpleRandomVariable& end);

/// Polygonal interpolation of `alpha` at t_i = i/N, N = ceil(2L/ε), which
/// stays within Prokhorov distance 2L/N <= ε of alpha.
PolygonalPath approximate_polygonal(const SampledPath& alpha, const Rational& epsilon);

struct ReliftResult {
  LiftedPath lift;
  /// Sup over the verification grid of ρ(prev(t), lift(t)); at most 5ε.
  Rational sup_rho;
};

/// Lifting of `path` that stays within Ky Fan distance 5ε of `prev`, given
/// that law(prev(t)) is within Prokhorov distance ε of path(t). Endpoints are
/// kept from `prev`.
///
/// The breakpoints of both paths are refined until prev moves by at most ε
/// per piece; each refined vertex of prev is matched to the target law, and
/// consecutive matches are joined by segment lifts. The precondition is
/// checked on the verification grid together with every refined breakpoint.
ReliftResult relift_near(const LiftedPath& prev, const PolygonalPath& path, const Rational& epsilon,
                         std::size_t grid_points = kDefaultGridPoints);

struct PathLiftResult {
  LiftedPath lift;
  PolygonalPath polygonal;
  Certificate certificate;
};

/// Lifts a Lipschitz path of measures with prescribed endpoint variables.
///
/// Round n approximates alpha by a polygonal within ε_n, with
/// ε_n = tol·5^(iterations-n); round 1 lifts it directly and later rounds
/// relift near the previous lift within 5(ε_n + ε_{n+1}). The result is an
/// exact lifting of the last polygonal, which is within tol of alpha.
PathLiftResult lift_path(const SampledPath& alpha, const SimpleRandomVariable& start,
                         const SimpleRandomVariable& end, const Rational& tol,
                         std::size_t iterations, std::size_t grid_points = kDefaultGridPoints);

/// A polygonal target needs no approximation: it is lifted exactly in one pass.
PathLiftResult lift_path(const PolygonalPath& path, const SimpleRandomVariable& start,
                         const SimpleRandomVariable& end,
                         std::size_t grid_points = kDefaultGridPoints);

struct Endpoints {
  SimpleRandomVariable start;
  SimpleRandomVariable end;
};

/// Certificate for `lift` against `target` over the verification grid plus
/// every breakpoint. Endpoint flags compare against `endpoints` when given,
/// otherwise against the endpoint laws of the target.
Certificate verify_lift(const LiftedPath& lift, const PolygonalPath& target, std::size_t grid_points,
                        const std::optional<Endpoints>& endpoints = std::nullopt);
Certificate verify_lift(const LiftedPath& lift, const SampledPath& target, std::size_t grid_points,
                        const std::optional<Endpoints>& endpoints = std::nullopt);

}  // namespace pathlift
