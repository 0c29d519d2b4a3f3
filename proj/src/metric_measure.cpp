#include "pathlift/metric_measure.hpp"

#include "bipartite_flow.hpp"
#include "pathlift/errors.hpp"

#include <algorithm>

namespace pathlift {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, RationalMatrix dist)
    : points_(std::move(points)), dist_(std::move(dist)) {}

std::shared_ptr<const FiniteMetricSpace> FiniteMetricSpace::create(std::vector<std::string> points,
                                                                   RationalMatrix dist) {
  const std::size_t m = points.size();
  if (m == 0) throw DomainError("metric space has no points");
  if (dist.size() != m) throw DomainError("distance matrix row count does not match point count");
  for (std::size_t i = 0; i < m; ++i) {
    if (dist[i].size() != m) throw DomainError("distance matrix is not square");
    for (auto& d : dist[i]) d.canonicalize();
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw DomainError("duplicate point \"" + points[i] + "\"");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (dist[i][i] != 0) {
      throw DomainError("nonzero diagonal: d(" + points[i] + "," + points[i] + ") = " +
                        to_string(dist[i][i]));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (dist[i][j] != dist[j][i]) {
        throw DomainError("asymmetry: d(" + points[i] + "," + points[j] + ") = " +
                          to_string(dist[i][j]) + " but d(" + points[j] + "," + points[i] +
                          ") = " + to_string(dist[j][i]));
      }
      if (i != j && dist[i][j] <= 0) {
        throw DomainError("nonpositive distance between distinct points " + points[i] + " and " +
                          points[j]);
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          throw DomainError("triangle violation (" + points[i] + "," + points[j] + "," +
                            points[k] + "): d(" + points[i] + "," + points[k] + ") = " +
                            to_string(dist[i][k]) + " > " + to_string(dist[i][j]) + " + " +
                            to_string(dist[j][k]));
        }
      }
    }
  }

  std::shared_ptr<FiniteMetricSpace> space(
      new FiniteMetricSpace(std::move(points), std::move(dist)));
  for (const auto& row : space->dist_) {
    for (const auto& d : row) {
      if (d > 0) space->thresholds_.push_back(d);
    }
  }
  std::sort(space->thresholds_.begin(), space->thresholds_.end());
  space->thresholds_.erase(std::unique(space->thresholds_.begin(), space->thresholds_.end()),
                           space->thresholds_.end());
  return space;
}

std::size_t FiniteMetricSpace::index_of(const std::string& point) const {
  const auto it = std::find(points_.begin(), points_.end(), point);
  if (it == points_.end()) throw DomainError("unknown point \"" + point + "\"");
  return static_cast<std::size_t>(it - points_.begin());
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!same_space(a, b)) throw DomainError(std::string(what) + ": operands live on different spaces");
}

Measure::Measure(SpacePtr space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw DomainError("measure without a space");
  if (weights_.size() != space_->size()) {
    throw DomainError("measure has " + std::to_string(weights_.size()) + " weights for " +
                      std::to_string(space_->size()) + " points");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i].canonicalize();
    if (weights_[i] < 0) {
      throw DomainError("negative weight " + to_string(weights_[i]) + " at point " +
                        space_->points()[i]);
    }
    total += weights_[i];
  }
  if (total != 1) throw DomainError("weights sum to " + to_string(total) + ", not 1");
}

Measure Measure::dirac(SpacePtr space, std::size_t point) {
  std::vector<Rational> w(space->size(), 0);
  w.at(point) = 1;
  return Measure(std::move(space), std::move(w));
}

CouplingMatrix::CouplingMatrix(SpacePtr space, RationalMatrix mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  const std::size_t m = space_->size();
  Rational total = 0;
  if (mass_.size() != m) throw DomainError("coupling has wrong row count");
  for (const auto& row : mass_) {
    if (row.size() != m) throw DomainError("coupling is not square");
    for (const auto& v : row) {
      if (v < 0) throw DomainError("coupling has negative mass " + to_string(v));
      total += v;
    }
  }
  if (total != 1) throw DomainError("coupling mass sums to " + to_string(total) + ", not 1");
}

std::vector<Rational> CouplingMatrix::row_marginal() const {
  std::vector<Rational> out(mass_.size(), 0);
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    for (const auto& v : mass_[i]) out[i] += v;
  }
  return out;
}

std::vector<Rational> CouplingMatrix::column_marginal() const {
  std::vector<Rational> out(mass_.size(), 0);
  for (const auto& row : mass_) {
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  }
  return out;
}

Measure mixture(const Measure& mu, const Measure& nu, const Rational& t) {
  require_same_space(mu.space(), nu.space(), "mixture");
  if (t < 0 || t > 1) throw DomainError("mixture parameter " + to_string(t) + " outside [0,1]");
  std::vector<Rational> w(mu.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1 - t) * mu[i] + t * nu[i];
  return Measure(mu.space(), std::move(w));
}

Rational total_variation(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "total_variation");
  Rational excess = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > nu[i]) excess += mu[i] - nu[i];
  }
  return excess;
}

namespace {

// Minimizes over the threshold intervals (d_{k-1}, d_k] of the space, with
// d_0 = 0 and a last interval (d_r, ∞). `excess(k)` is the mass that must
// sit at distance >= ε for ε inside interval k; the smallest feasible ε there
// is max(d_{k-1}, excess), provided it does not leave the interval.
// Feasible sets are upward closed, so the first feasible interval holds the
// infimum and the scan stops there.
template <typename Excess>
Rational minimize_over_thresholds(const std::vector<Rational>& thresholds, Excess&& excess) {
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    const Rational lower = k == 0 ? Rational(0) : thresholds[k - 1];
    const Rational candidate = std::max(lower, Rational(excess(k)));
    if (candidate <= thresholds[k]) return candidate;
  }
  const Rational lower = thresholds.empty() ? Rational(0) : thresholds.back();
  return std::max(lower, Rational(excess(thresholds.size())));
}

}  // namespace

Rational kyfan_functional(const CouplingMatrix& coupling) {
  const auto& space = *coupling.space();
  const auto& thresholds = space.thresholds();
  const std::size_t m = space.size();
  return minimize_over_thresholds(thresholds, [&](std::size_t k) {
    if (k == thresholds.size()) return Rational(0);
    Rational far = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (space.dist(i, j) >= thresholds[k]) far += coupling(i, j);
      }
    }
    return far;
  });
}

ProkhorovResult prokhorov_coupling(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "prokhorov_coupling");
  const auto& space = *mu.space();
  const auto& thresholds = space.thresholds();
  const std::size_t m = space.size();

  // Interval k admits pairs at distance <= d_{k-1} as "close"; the flow over
  // those edges is the most mass a coupling can keep below ε.
  // The scan stops at the optimal interval, so the flow left behind is the
  // one for the optimal threshold.
  detail::BipartiteFlow flow(mu.weights(), nu.weights());
  const Rational q = minimize_over_thresholds(thresholds, [&](std::size_t k) {
    const Rational radius = k == 0 ? Rational(0) : thresholds[k - 1];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (space.dist(i, j) <= radius) flow.allow(i, j);
      }
    }
    return Rational(1 - flow.augment());
  });

  // Residual marginals go to the remaining pairs, northwest-corner order.
  // Any residual pair is necessarily far apart, otherwise the flow was not
  // maximal.
  RationalMatrix mass = flow.flow();
  std::vector<Rational> rows(m), cols(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = mu[i];
    cols[i] = nu[i];
    for (std::size_t j = 0; j < m; ++j) {
      rows[i] -= mass[i][j];
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) cols[j] -= mass[i][j];
  }
  std::size_t i = 0, j = 0;
  while (i < m && j < m) {
    if (rows[i] == 0) {
      ++i;
      continue;
    }
    if (cols[j] == 0) {
      ++j;
      continue;
    }
    const Rational moved = std::min(rows[i], cols[j]);
    mass[i][j] += moved;
    rows[i] -= moved;
    cols[j] -= moved;
  }
  return ProkhorovResult{q, CouplingMatrix(mu.space(), std::move(mass))};
}

Rational prokhorov_subsets(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "prokhorov_subsets");
  const auto& space = *mu.space();
  const std::size_t m = space.size();
  if (m > kSubsetOracleMaxPoints) {
    throw DomainError("subset enumeration is limited to " +
                      std::to_string(kSubsetOracleMaxPoints) + " points, space has " +
                      std::to_string(m));
  }
  const std::size_t subsets = std::size_t{1} << m;

  std::vector<Rational> mu_mass(subsets, 0), nu_mass(subsets, 0);
  for (std::size_t a = 1; a < subsets; ++a) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(a));
    mu_mass[a] = mu_mass[a & (a - 1)] + mu[low];
    nu_mass[a] = nu_mass[a & (a - 1)] + nu[low];
  }

  const auto& thresholds = space.thresholds();
  std::vector<std::size_t> near(m), hull(subsets);
  return minimize_over_thresholds(thresholds, [&](std::size_t k) {
    // For ε in interval k, x ∈ A^ε iff d(x, A) <= d_{k-1}.
    const Rational radius = k == 0 ? Rational(0) : thresholds[k - 1];
    for (std::size_t x = 0; x < m; ++x) {
      near[x] = 0;
      for (std::size_t y = 0; y < m; ++y) {
        if (space.dist(x, y) <= radius) near[x] |= std::size_t{1} << y;
      }
    }
    Rational worst = 0;
    hull[0] = 0;
    for (std::size_t a = 1; a < subsets; ++a) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(a));
      hull[a] = hull[a & (a - 1)] | near[low];
      const Rational gap = mu_mass[a] - nu_mass[hull[a]];
      if (gap > worst) worst = gap;
    }
    return worst;
  });
}

}  // namespace pathlift
