#include "pathlift/path_lift.hpp"

#include "pathlift/errors.hpp"
#include "transfer.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace pathlift {

namespace {

void require_unit_partition(const std::vector<Rational>& breakpoints, const char* what) {
  if (breakpoints.size() < 2) throw DomainError(std::string(what) + " needs at least two breakpoints");
  if (breakpoints.front() != 0 || breakpoints.back() != 1) {
    throw DomainError(std::string(what) + " breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= breakpoints[i - 1]) {
      throw DomainError(std::string(what) + " breakpoints are not strictly increasing at " +
                        to_string(breakpoints[i]));
    }
  }
}

// Index i of the piece [t_i, t_{i+1}] used at time t; a breakpoint belongs to
// the piece that starts there, except t = 1.
std::size_t piece_index(const std::vector<Rational>& breakpoints, const Rational& t) {
  if (t < 0 || t > 1) throw DomainError("time " + to_string(t) + " outside [0,1]");
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints.begin());
  return std::min(idx, breakpoints.size() - 1) - 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polygonal and sampled paths

PolygonalPath::PolygonalPath(std::vector<Rational> breakpoints, std::vector<Measure> vertices)
    : breakpoints_(std::move(breakpoints)), vertices_(std::move(vertices)) {
  for (auto& t : breakpoints_) t.canonicalize();
  require_unit_partition(breakpoints_, "polygonal");
  if (vertices_.size() != breakpoints_.size()) {
    throw DomainError("polygonal has " + std::to_string(vertices_.size()) + " vertices for " +
                      std::to_string(breakpoints_.size()) + " breakpoints");
  }
  for (const auto& v : vertices_) require_same_space(vertices_.front().space(), v.space(), "polygonal");
}

Measure PolygonalPath::eval(const Rational& t) const {
  const std::size_t i = piece_index(breakpoints_, t);
  if (t == breakpoints_[i]) return vertices_[i];
  if (t == breakpoints_[i + 1]) return vertices_[i + 1];
  const Rational s = (t - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return mixture(vertices_[i], vertices_[i + 1], s);
}

Measure polygonal_eval(const PolygonalPath& path, const Rational& t) { return path.eval(t); }

Rational polygonal_tv_lipschitz(const PolygonalPath& path) {
  Rational best = 0;
  const auto& bp = path.breakpoints();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const Rational slope =
        total_variation(path.vertices()[i], path.vertices()[i + 1]) / (bp[i + 1] - bp[i]);
    best = std::max(best, slope);
  }
  return best;
}

struct SampledPath::State {
  SpacePtr space;
  Sampler sampler;
  Rational lipschitz;
  std::mutex mutex;
  std::map<Rational, Measure> queried;
};

SampledPath::SampledPath(SpacePtr space, Sampler sampler, Rational lipschitz)
    : state_(std::make_shared<State>()) {
  if (lipschitz < 0) throw DomainError("Lipschitz constant " + to_string(lipschitz) + " is negative");
  state_->space = std::move(space);
  state_->sampler = std::move(sampler);
  state_->lipschitz = std::move(lipschitz);
}

SampledPath SampledPath::from_polygonal(PolygonalPath path, Rational lipschitz) {
  SpacePtr space = path.space();
  return SampledPath(
      std::move(space), [p = std::move(path)](const Rational& t) { return p.eval(t); },
      std::move(lipschitz));
}

const SpacePtr& SampledPath::space() const { return state_->space; }
const Rational& SampledPath::lipschitz() const { return state_->lipschitz; }

std::size_t SampledPath::queried_count() const {
  std::lock_guard lock(state_->mutex);
  return state_->queried.size();
}

Measure SampledPath::operator()(const Rational& t) const {
  if (t < 0 || t > 1) throw DomainError("time " + to_string(t) + " outside [0,1]");
  std::lock_guard lock(state_->mutex);
  if (const auto it = state_->queried.find(t); it != state_->queried.end()) return it->second;

  Measure value = state_->sampler(t);
  require_same_space(state_->space, value.space(), "sampled path");
  const Rational& lip = state_->lipschitz;
  for (const auto& [s, other] : state_->queried) {
    const Rational allowed = lip * abs(Rational(t - s));
    // q <= 1 and q <= total variation; only the rest needs the exact distance.
    if (allowed >= 1 || total_variation(value, other) <= allowed) continue;
    const Rational q = prokhorov_coupling(other, value).distance;
    if (q > allowed) {
      throw DomainError("Lipschitz bound " + to_string(lip) + " violated between t = " +
                        to_string(s) + " and t = " + to_string(t) + ": q = " + to_string(q) +
                        " > " + to_string(allowed));
    }
  }
  state_->queried.emplace(t, value);
  return value;
}

// ---------------------------------------------------------------------------
// Segments and lifted paths

SegmentLift::SegmentLift(SimpleRandomVariable start, SimpleRandomVariable end, Rational a, Rational b)
    : start_(std::move(start)), end_(std::move(end)), a_(std::move(a)), b_(std::move(b)) {
  if (a_ >= b_) throw DomainError("segment needs a < b, got [" + to_string(a_) + ", " + to_string(b_) + "]");
  require_same_space(start_.space(), end_.space(), "segment_lift");
  const std::size_t m = start_.blocks().size();
  cells_.assign(m, std::vector<omega::IntervalSet>(m));
  cell_mass_.assign(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      cells_[i][j] = omega::intersect(start_.block(i), end_.block(j));
      cell_mass_[i][j] = omega::measure(cells_[i][j]);
    }
  }
}

SimpleRandomVariable SegmentLift::eval(const Rational& t) const {
  if (t < a_ || t > b_) {
    throw DomainError("time " + to_string(t) + " outside segment [" + to_string(a_) + ", " +
                      to_string(b_) + "]");
  }
  if (t == a_) return start_;
  if (t == b_) return end_;
  const Rational s = (t - a_) / (b_ - a_);
  const std::size_t m = cells_.size();
  detail::CellGrid moved(m, std::vector<omega::IntervalSet>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && !cells_[i][j].empty()) moved[i][j] = omega::prefix(cells_[i][j], s * cell_mass_[i][j]);
    }
  }
  return SimpleRandomVariable(start_.space(), detail::transfer_blocks(cells_, moved));
}

SegmentLift segment_lift(const SimpleRandomVariable& x, const SimpleRandomVariable& y,
                         const Rational& a, const Rational& b) {
  return SegmentLift(x, y, a, b);
}

SimpleRandomVariable segment_eval(const SegmentLift& segment, const Rational& t) { return segment.eval(t); }

LiftedPath::LiftedPath(std::vector<Rational> breakpoints, std::vector<SimpleRandomVariable> vertices)
    : breakpoints_(std::move(breakpoints)), vertices_(std::move(vertices)) {
  require_unit_partition(breakpoints_, "lifted path");
  if (vertices_.size() != breakpoints_.size()) {
    throw DomainError("lifted path has " + std::to_string(vertices_.size()) + " vertices for " +
                      std::to_string(breakpoints_.size()) + " breakpoints");
  }
  pieces_.reserve(breakpoints_.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    pieces_.emplace_back(vertices_[i], vertices_[i + 1], breakpoints_[i], breakpoints_[i + 1]);
  }
}

const SegmentLift& LiftedPath::piece_at(const Rational& t) const {
  return pieces_[piece_index(breakpoints_, t)];
}

SimpleRandomVariable LiftedPath::eval(const Rational& t) const { return piece_at(t).eval(t); }

Rational LiftedPath::min_piece_length() const {
  Rational best = 1;
  for (const auto& p : pieces_) best = std::min(best, Rational(p.b() - p.a()));
  return best;
}

// ---------------------------------------------------------------------------
// Certificates

bool Certificate::decay_within_budget() const {
  if (decay_table.size() != decay_budget.size()) return false;
  for (std::size_t i = 0; i < decay_table.size(); ++i) {
    if (decay_table[i] > decay_budget[i]) return false;
  }
  return true;
}

std::vector<Rational> verification_grid(std::size_t n, const std::vector<Rational>& extra) {
  if (n < 2) throw DomainError("verification grid needs at least 2 points");
  std::vector<Rational> grid;
  grid.reserve(n + extra.size());
  for (std::size_t i = 0; i < n; ++i) grid.push_back(rat(static_cast<long>(i), static_cast<long>(n - 1)));
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

template <typename Target>
Certificate verify_against(const LiftedPath& lift, Target&& target, std::vector<Rational> extra,
                           std::size_t grid_points, const std::optional<Endpoints>& endpoints) {
  extra.insert(extra.end(), lift.breakpoints().begin(), lift.breakpoints().end());
  Certificate cert;
  cert.grid = verification_grid(grid_points, extra);

  std::vector<SimpleRandomVariable> values;
  values.reserve(cert.grid.size());
  for (const auto& t : cert.grid) {
    values.push_back(lift.eval(t));
    const Rational gap = prokhorov_coupling(law(values.back()), target(t)).distance;
    cert.max_law_gap = std::max(cert.max_law_gap, gap);
    cert.law_gaps.push_back(gap);
  }
  Rational max_step = 0, max_entry = 0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    cert.continuity_table.push_back(kyfan_rho(values[k], values[k + 1]));
    max_entry = std::max(max_entry, cert.continuity_table.back());
    max_step = std::max(max_step, Rational(cert.grid[k + 1] - cert.grid[k]));
  }
  cert.min_piece_length = lift.min_piece_length();
  cert.continuity_bound = max_entry + 2 * max_step / cert.min_piece_length;

  if (endpoints) {
    cert.start_ok = values.front() == endpoints->start;
    cert.end_ok = values.back() == endpoints->end;
  } else {
    cert.start_ok = law(values.front()) == target(Rational(0));
    cert.end_ok = law(values.back()) == target(Rational(1));
  }
  return cert;
}

}  // namespace

Certificate verify_lift(const LiftedPath& lift, const PolygonalPath& target, std::size_t grid_points,
                        const std::optional<Endpoints>& endpoints) {
  require_same_space(lift.space(), target.space(), "verify_lift");
  return verify_against(
      lift, [&](const Rational& t) { return target.eval(t); }, target.breakpoints(), grid_points,
      endpoints);
}

Certificate verify_lift(const LiftedPath& lift, const SampledPath& target, std::size_t grid_points,
                        const std::optional<Endpoints>& endpoints) {
  require_same_space(lift.space(), target.space(), "verify_lift");
  return verify_against(lift, target, {}, grid_points, endpoints);
}

// ---------------------------------------------------------------------------
// Constructions

LiftedPath lift_polygonal(const PolygonalPath& path, const SimpleRandomVariable& start,
                          const SimpleRandomVariable& end) {
  require_same_space(path.space(), start.space(), "lift_polygonal");
  require_same_space(path.space(), end.space(), "lift_polygonal");
  if (law(start) != path.vertices().front()) {
    throw DomainError("precondition: law of the start variable differs from the path at t = 0");
  }
  if (law(end) != path.vertices().back()) {
    throw DomainError("precondition: law of the end variable differs from the path at t = 1");
  }
  const std::size_t count = path.vertices().size();
  std::vector<SimpleRandomVariable> vertices;
  vertices.reserve(count);
  vertices.push_back(start);
  for (std::size_t i = 1; i + 1 < count; ++i) {
    vertices.push_back(match_to_law(vertices.back(), path.vertices()[i]));
  }
  vertices.push_back(end);
  return LiftedPath(path.breakpoints(), std::move(vertices));
}

PolygonalPath approximate_polygonal(const SampledPath& alpha, const Rational& epsilon) {
  if (epsilon <= 0) throw DomainError("approximation tolerance must be positive");
  const mpz_class n = std::max(mpz_class(1), ceil(Rational(2 * alpha.lipschitz() / epsilon)));
  if (!n.fits_slong_p() || n > 1'000'000) {
    throw DomainError("approximation needs " + n.get_str() + " pieces, too many");
  }
  const long count = n.get_si();
  std::vector<Rational> breakpoints;
  std::vector<Measure> vertices;
  for (long i = 0; i <= count; ++i) {
    breakpoints.push_back(rat(i, count));
    vertices.push_back(alpha(breakpoints.back()));
  }
  return PolygonalPath(std::move(breakpoints), std::move(vertices));
}

ReliftResult relift_near(const LiftedPath& prev, const PolygonalPath& path, const Rational& epsilon,
                         std::size_t grid_points) {
  require_same_space(prev.space(), path.space(), "relift_near");
  if (epsilon < 0) throw DomainError("relift tolerance must be nonnegative");
  const auto& prev_start = prev.vertices().front();
  const auto& prev_end = prev.vertices().back();
  if (law(prev_start) != path.vertices().front() || law(prev_end) != path.vertices().back()) {
    throw DomainError("precondition: endpoint laws of the previous lift differ from the new path");
  }

  // Common refinement of both breakpoint sets, then subdivide so that prev
  // moves by at most ε per piece (prev is (1/piece length)-Lipschitz in ρ).
  std::vector<Rational> coarse = prev.breakpoints();
  coarse.insert(coarse.end(), path.breakpoints().begin(), path.breakpoints().end());
  std::sort(coarse.begin(), coarse.end());
  coarse.erase(std::unique(coarse.begin(), coarse.end()), coarse.end());
  std::vector<Rational> refined{coarse.front()};
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    const Rational& u = coarse[i];
    const Rational& v = coarse[i + 1];
    long parts = 1;
    if (epsilon > 0) {
      const auto& piece = prev.piece_at(u);
      const mpz_class need = ceil(Rational((v - u) / ((piece.b() - piece.a()) * epsilon)));
      parts = std::max(1L, need.get_si());
    }
    for (long k = 1; k <= parts; ++k) refined.push_back(u + (v - u) * rat(k, parts));
  }

  const auto grid = verification_grid(grid_points, refined);
  std::vector<SimpleRandomVariable> prev_values;
  prev_values.reserve(grid.size());
  for (const auto& t : grid) {
    prev_values.push_back(prev.eval(t));
    const Rational gap = prokhorov_coupling(law(prev_values.back()), path.eval(t)).distance;
    if (gap > epsilon) {
      throw DomainError("precondition: q(law(prev(t)), path(t)) = " + to_string(gap) + " > " +
                        to_string(epsilon) + " at t = " + to_string(t));
    }
  }

  std::vector<SimpleRandomVariable> vertices;
  vertices.reserve(refined.size());
  vertices.push_back(prev_start);
  for (std::size_t i = 1; i + 1 < refined.size(); ++i) {
    vertices.push_back(match_to_law(prev.eval(refined[i]), path.eval(refined[i])));
  }
  vertices.push_back(prev_end);
  LiftedPath lift(std::move(refined), std::move(vertices));

  Rational sup_rho = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    sup_rho = std::max(sup_rho, kyfan_rho(prev_values[k], lift.eval(grid[k])));
  }
  if (sup_rho > 5 * epsilon) {
    throw InvariantError("relift moved by " + to_string(sup_rho) + " > 5ε = " + to_string(Rational(5 * epsilon)));
  }
  return ReliftResult{std::move(lift), std::move(sup_rho)};
}

PathLiftResult lift_path(const SampledPath& alpha, const SimpleRandomVariable& start,
                         const SimpleRandomVariable& end, const Rational& tol, std::size_t iterations,
                         std::size_t grid_points) {
  if (tol <= 0) throw DomainError("tolerance must be positive");
  if (iterations == 0) throw DomainError("at least one iteration is required");
  require_same_space(alpha.space(), start.space(), "lift_path");
  require_same_space(alpha.space(), end.space(), "lift_path");
  if (law(start) != alpha(Rational(0))) {
    throw DomainError("precondition: law of the start variable differs from the path at t = 0");
  }
  if (law(end) != alpha(Rational(1))) {
    throw DomainError("precondition: law of the end variable differs from the path at t = 1");
  }

  std::vector<Rational> eps(iterations);
  eps.back() = tol;
  for (std::size_t n = iterations - 1; n-- > 0;) eps[n] = eps[n + 1] * 5;

  PolygonalPath polygonal = approximate_polygonal(alpha, eps[0]);
  LiftedPath lift = lift_polygonal(polygonal, start, end);
  std::vector<Rational> decay, budget;
  for (std::size_t n = 0; n + 1 < iterations; ++n) {
    PolygonalPath next = approximate_polygonal(alpha, eps[n + 1]);
    const Rational gap = eps[n] + eps[n + 1];
    ReliftResult step = relift_near(lift, next, gap, grid_points);
    decay.push_back(step.sup_rho);
    budget.push_back(5 * gap);
    lift = std::move(step.lift);
    polygonal = std::move(next);
  }

  Certificate cert = verify_lift(lift, alpha, grid_points, Endpoints{start, end});
  cert.decay_table = std::move(decay);
  cert.decay_budget = std::move(budget);
  return PathLiftResult{std::move(lift), std::move(polygonal), std::move(cert)};
}

PathLiftResult lift_path(const PolygonalPath& path, const SimpleRandomVariable& start,
                         const SimpleRandomVariable& end, std::size_t grid_points) {
  LiftedPath lift = lift_polygonal(path, start, end);
  Certificate cert = verify_lift(lift, path, grid_points, Endpoints{start, end});
  return PathLiftResult{std::move(lift), path, std::move(cert)};
}

}  // namespace pathlift
