#include "helpers.hpp"

#include "pathlift/errors.hpp"
#include "pathlift/oracles.hpp"
#include "pathlift/random_instances.hpp"

using namespace testing;

TEST_CASE("metric space validation") {
  CHECK(two_points("1")->size() == 2);
  CHECK(two_points("1")->thresholds() == std::vector<Rational>{1});

  SUBCASE("triangle violation names the triple") {
    try {
      FiniteMetricSpace::create({"a", "b", "c"}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
      FAIL("expected a triangle violation");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("triangle violation (a,b,c)") != std::string::npos);
    }
  }
  SUBCASE("asymmetry") {
    try {
      FiniteMetricSpace::create({"a", "b"}, {{0, q("1/2")}, {q("1/3"), 0}});
      FAIL("expected asymmetry");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("asymmetry") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(FiniteMetricSpace::create({"a", "b"}, {{1, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(FiniteMetricSpace::create({"a", "b"}, {{0, 0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(FiniteMetricSpace::create({"a", "a"}, {{0, 1}, {1, 0}}), DomainError);
}

TEST_CASE("measures and mixtures") {
  const auto s = two_points("1");
  const auto mu = weights(s, {"3/4", "1/4"});
  const auto nu = weights(s, {"1/4", "3/4"});
  CHECK(mixture(mu, nu, 0) == mu);
  CHECK(mixture(Measure::dirac(s, 0), Measure::dirac(s, 1), q("1/2")) == weights(s, {"1/2", "1/2"}));
  CHECK(mixture(mu, nu, q("1/3")) == weights(s, {"7/12", "5/12"}));
  CHECK_THROWS_AS(mixture(mu, nu, q("4/3")), DomainError);
  CHECK_THROWS_AS(mixture(mu, weights(two_points("2"), {"1", "0"}), q("1/2")), DomainError);
  CHECK_THROWS_AS(weights(s, {"1/2", "1/4"}), DomainError);
  CHECK_THROWS_AS(weights(s, {"3/2", "-1/2"}), DomainError);
  CHECK(total_variation(mu, nu) == q("1/2"));
}

TEST_CASE("Ky Fan functional of couplings") {
  const auto half = two_points("1/2");
  CHECK(kyfan_functional(CouplingMatrix(half, {{q("1/3"), 0}, {0, q("2/3")}})) == 0);
  CHECK(kyfan_functional(CouplingMatrix(half, {{0, 1}, {0, 0}})) == q("1/2"));
  const auto one = two_points("1");
  CHECK(kyfan_functional(CouplingMatrix(one, {{q("3/4"), q("1/4")}, {0, 0}})) == q("1/4"));
  // Mass 3/4 beyond distance 1/2 is not feasible below 1/2 and is at 1/2's right.
  CHECK(kyfan_functional(CouplingMatrix(half, {{q("1/4"), q("3/4")}, {0, 0}})) == q("1/2"));
}

TEST_CASE("Prokhorov distance examples") {
  const auto half = two_points("1/2");
  const auto one = two_points("1");
  const auto mu = weights(one, {"3/4", "1/4"});

  const auto same = prokhorov_coupling(mu, mu);
  CHECK(same.distance == 0);
  CHECK(same.coupling.mass() == RationalMatrix{{q("3/4"), 0}, {0, q("1/4")}});

  CHECK(prokhorov_coupling(Measure::dirac(half, 0), Measure::dirac(half, 1)).distance == q("1/2"));
  CHECK(prokhorov_subsets(Measure::dirac(half, 0), Measure::dirac(half, 1)) == q("1/2"));

  const auto nu = weights(one, {"1/4", "3/4"});
  const auto r = prokhorov_coupling(mu, nu);
  CHECK(r.distance == q("1/2"));
  CHECK(kyfan_functional(r.coupling) == q("1/2"));
  CHECK(prokhorov_subsets(mu, nu) == q("1/2"));
  CHECK(prokhorov_subsets(mu, mu) == 0);
}

TEST_CASE("subset oracle refuses large spaces") {
  std::vector<std::string> pts;
  RationalMatrix d(17, std::vector<Rational>(17, 1));
  for (int i = 0; i < 17; ++i) {
    pts.push_back("p" + std::to_string(i));
    d[i][i] = 0;
  }
  const auto s = FiniteMetricSpace::create(pts, d);
  CHECK_THROWS_AS(prokhorov_subsets(Measure::dirac(s, 0), Measure::dirac(s, 1)), DomainError);
  CHECK(prokhorov_coupling(Measure::dirac(s, 0), Measure::dirac(s, 1)).distance == 1);
}

TEST_CASE("Dirac distances are min(d, 1)") {
  pathlift::random::Engine rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto s = pathlift::random::metric_space(rng, 4);
    const auto x = static_cast<std::size_t>(k % 4), y = static_cast<std::size_t>((k / 4) % 4);
    const Rational expected = std::min(Rational(1), s->dist(x, y));
    CHECK(prokhorov_coupling(Measure::dirac(s, x), Measure::dirac(s, y)).distance == expected);
    CHECK(prokhorov_subsets(Measure::dirac(s, x), Measure::dirac(s, y)) == expected);
  }
}

TEST_CASE("Coupling and subset formulations agree, and witness optimality on random instances") {
  pathlift::random::Engine rng(3);
  for (int k = 0; k < 300; ++k) {
    const auto s = pathlift::random::metric_space(rng, 1 + static_cast<std::size_t>(k % 8));
    const auto mu = pathlift::random::measure(rng, s);
    const auto nu = pathlift::random::measure(rng, s);
    const auto r = prokhorov_coupling(mu, nu);
    CHECK(r.distance == prokhorov_subsets(mu, nu));
    CHECK(kyfan_functional(r.coupling) == r.distance);
    CHECK(oracle::kyfan_scan(s, r.coupling.mass()) == r.distance);
    CHECK(r.coupling.row_marginal() == mu.weights());
    CHECK(r.coupling.column_marginal() == nu.weights());
  }
}

TEST_CASE("no vertex coupling beats the optimum") {
  pathlift::random::Engine rng(5);
  for (int k = 0; k < 60; ++k) {
    const auto s = pathlift::random::metric_space(rng, 2 + static_cast<std::size_t>(k % 2));
    const auto mu = pathlift::random::measure(rng, s);
    const auto nu = pathlift::random::measure(rng, s);
    const Rational best = prokhorov_coupling(mu, nu).distance;
    const auto vertices = oracle::transport_vertices(mu, nu);
    REQUIRE_FALSE(vertices.empty());
    Rational min_vertex = 2;
    for (const auto& v : vertices) {
      const Rational value = kyfan_functional(CouplingMatrix(s, v));
      CHECK(value >= best);
      CHECK(value == oracle::kyfan_scan(s, v));
      min_vertex = std::min(min_vertex, value);
    }
    CHECK(min_vertex >= best);
  }
}

TEST_CASE("Prokhorov metric axioms and mixture contraction") {
  pathlift::random::Engine rng(9);
  for (int k = 0; k < 200; ++k) {
    const auto s = pathlift::random::metric_space(rng, 2 + static_cast<std::size_t>(k % 4));
    const auto a = pathlift::random::measure(rng, s);
    const auto b = pathlift::random::measure(rng, s);
    const auto c = pathlift::random::measure(rng, s);
    const Rational ab = prokhorov_coupling(a, b).distance;
    CHECK(ab == prokhorov_coupling(b, a).distance);
    CHECK((ab == 0) == (a == b));
    CHECK(ab <= prokhorov_coupling(a, c).distance + prokhorov_coupling(c, b).distance);
    CHECK(ab <= 1);
    CHECK(ab <= total_variation(a, b));
    const Rational t = pathlift::random::unit_rational(rng, 20);
    CHECK(prokhorov_coupling(b, mixture(b, a, t)).distance <= prokhorov_coupling(b, a).distance);
  }
}
