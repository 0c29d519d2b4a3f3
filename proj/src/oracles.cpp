#include "pathlift/oracles.hpp"

#include "pathlift/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace pathlift::oracle {

namespace {

template <typename FarMass>
Rational scan(const SpacePtr& space, FarMass&& far_mass) {
  std::vector<Rational> candidates{Rational(0)};
  for (const auto& row : space->dist()) {
    for (const auto& d : row) {
      candidates.push_back(d);
      candidates.push_back(far_mass(d));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& c : candidates) {
    if (far_mass(c) <= c) return c;
  }
  throw InvariantError("Ky Fan scan found no feasible candidate");
}

}  // namespace

Rational kyfan_scan(const SimpleRandomVariable& x, const SimpleRandomVariable& y) {
  require_same_space(x.space(), y.space(), "kyfan_scan");
  const auto& space = *x.space();
  return scan(x.space(), [&](const Rational& c) {
    omega::IntervalSet far;
    for (std::size_t i = 0; i < space.size(); ++i) {
      for (std::size_t j = 0; j < space.size(); ++j) {
        if (space.dist(i, j) > c) far = omega::unite(far, omega::intersect(x.block(i), y.block(j)));
      }
    }
    return omega::measure(far);
  });
}

Rational kyfan_scan(const SpacePtr& space, const RationalMatrix& mass) {
  return scan(space, [&](const Rational& c) {
    Rational far = 0;
    for (std::size_t i = 0; i < space->size(); ++i) {
      for (std::size_t j = 0; j < space->size(); ++j) {
        if (space->dist(i, j) > c) far += mass[i][j];
      }
    }
    return far;
  });
}

namespace {

// Solves the marginal equations restricted to `cells`; returns the unique
// solution if the system has full column rank.
std::optional<std::vector<Rational>> solve_basis(const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                                                 const Measure& mu, const Measure& nu) {
  const std::size_t m = mu.size();
  const std::size_t rows = 2 * m, cols = cells.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    a[cells[c].first][c] = 1;
    a[m + cells[c].second][c] = 1;
  }
  for (std::size_t i = 0; i < m; ++i) {
    a[i][cols] = mu[i];
    a[m + i][cols] = nu[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < cols) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][cols] / a[i][pivot_col[i]];
  return x;
}

}  // namespace

std::vector<RationalMatrix> transport_vertices(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "transport_vertices");
  const std::size_t m = mu.size();
  const std::size_t basis = 2 * m - 1;
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) all.emplace_back(i, j);
  }
  std::set<std::vector<std::vector<std::string>>> seen;
  std::vector<RationalMatrix> out;
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(basis), true);
  do {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (pick[k]) cells.push_back(all[k]);
    }
    const auto x = solve_basis(cells, mu, nu);
    if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v < 0; })) continue;
    RationalMatrix mass(m, std::vector<Rational>(m, 0));
    for (std::size_t c = 0; c < cells.size(); ++c) mass[cells[c].first][cells[c].second] = (*x)[c];
    std::vector<std::vector<std::string>> key(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& v : mass[i]) key[i].push_back(to_string(v));
    }
    if (seen.insert(key).second) out.push_back(std::move(mass));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace pathlift::oracle
