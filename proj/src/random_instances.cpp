#include "pathlift/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace pathlift::random {

namespace {

long uniform(Engine& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Rational unit_rational(Engine& rng, long den) { return rat(uniform(rng, 0, den), den); }

SpacePtr metric_space(Engine& rng, std::size_t m) {
  std::vector<std::string> points;
  for (std::size_t i = 0; i < m; ++i) points.push_back(std::string(1, static_cast<char>('a' + i)));
  RationalMatrix dist(m, std::vector<Rational>(m, 0));
  if (uniform(rng, 0, 1) == 0) {
    const Rational c = rat(uniform(rng, 1, 6), 12);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) dist[i][j] = dist[j][i] = c * (1 + rat(uniform(rng, 0, 4), 4));
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) dist[i][j] = dist[j][i] = rat(uniform(rng, 1, 10), 8);
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
        }
      }
    }
  }
  return FiniteMetricSpace::create(std::move(points), std::move(dist));
}

Measure measure(Engine& rng, const SpacePtr& space) {
  const std::size_t m = space->size();
  std::vector<long> raw(m);
  const bool sparse = uniform(rng, 0, 2) == 0;
  long total = 0;
  while (total == 0) {
    for (auto& r : raw) r = (sparse && uniform(rng, 0, 1) == 0) ? 0 : uniform(rng, 0, 6);
    total = std::accumulate(raw.begin(), raw.end(), 0L);
  }
  std::vector<Rational> w;
  for (long r : raw) w.push_back(rat(r, total));
  return Measure(space, std::move(w));
}

SimpleRandomVariable random_variable(Engine& rng, const SpacePtr& space) {
  const long pieces = uniform(rng, 1, 3 * static_cast<long>(space->size()));
  const long den = 4 * pieces + uniform(rng, 0, 7);
  std::vector<long> cuts{0, den};
  for (long k = 1; k < pieces; ++k) cuts.push_back(uniform(rng, 1, den - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<omega::Interval>> parts(space->size());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto label = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(space->size()) - 1));
    parts[label].push_back({rat(cuts[k], den), rat(cuts[k + 1], den)});
  }
  std::vector<omega::IntervalSet> blocks;
  for (auto& p : parts) blocks.emplace_back(std::move(p));
  return SimpleRandomVariable(space, std::move(blocks));
}

SimpleRandomVariable random_variable_with_law(Engine& rng, const Measure& law) {
  // Pull a random partition back through a coupling with its own law.
  const SimpleRandomVariable scaffold = random_variable(rng, law.space());
  const std::size_t m = law.size();
  const Measure from = pathlift::law(scaffold);
  RationalMatrix mass(m, std::vector<Rational>(m, 0));
  std::vector<Rational> rows = from.weights(), cols = law.weights();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t jj = 0; jj < m; ++jj) {
      const std::size_t j = order[jj];
      const Rational moved = std::min(rows[i], cols[j]);
      mass[i][j] += moved;
      rows[i] -= moved;
      cols[j] -= moved;
    }
  }
  return realize_coupling(scaffold, CouplingMatrix(law.space(), std::move(mass)));
}

PolygonalPath polygonal(Engine& rng, const SpacePtr& space, std::size_t vertices) {
  const long den = 8 * static_cast<long>(vertices);
  std::vector<long> cuts;
  while (cuts.size() + 2 < vertices) {
    const long c = uniform(rng, 1, den - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> breakpoints{Rational(0)};
  for (long c : cuts) breakpoints.push_back(rat(c, den));
  breakpoints.push_back(Rational(1));
  std::vector<Measure> values;
  for (std::size_t i = 0; i < vertices; ++i) values.push_back(measure(rng, space));
  return PolygonalPath(std::move(breakpoints), std::move(values));
}

std::pair<PolygonalPath, Rational> lipschitz_polygonal(Engine& rng, const SpacePtr& space,
                                                       std::size_t pieces,
                                                       const Rational& max_lipschitz) {
  PolygonalPath shape = polygonal(rng, space, pieces + 1);
  const auto& bp = shape.breakpoints();
  std::vector<Measure> values{shape.vertices().front()};
  for (std::size_t i = 0; i < pieces; ++i) {
    // TV(mu, (1-c)mu + c nu) = c TV(mu, nu) <= c, so c <= L·length keeps the slope below L.
    const Rational cap = std::min(Rational(1), Rational(max_lipschitz * (bp[i + 1] - bp[i])));
    const Rational c = cap * rat(uniform(rng, 1, 4), 4);
    values.push_back(mixture(values.back(), shape.vertices()[i + 1], c));
  }
  PolygonalPath path(bp, std::move(values));
  Rational lipschitz = polygonal_tv_lipschitz(path);
  return {std::move(path), std::move(lipschitz)};
}

}  // namespace pathlift::random
