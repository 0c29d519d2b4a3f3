#include "pathlift/selftest.hpp"

#include "pathlift/cube_lift.hpp"
#include "pathlift/oracles.hpp"
#include "pathlift/path_lift.hpp"
#include "pathlift/random_instances.hpp"

#include <functional>
#include <sstream>

namespace pathlift {

namespace {

using random::Engine;

struct Suite {
  const char* name;
  std::size_t count;
  // Returns an empty string on success, a description otherwise.
  std::function<std::string(Engine&)> check;
};

std::size_t pick(Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

std::vector<Suite> suites() {
  return {
      {"omega.prefix_chain", 200,
       [](Engine& rng) {
         const auto x = random::random_variable(rng, random::metric_space(rng, 3));
         const auto& a = x.block(pick(rng, 0, 2));
         const Rational total = omega::measure(a);
         Rational s = random::unit_rational(rng, 12) * total;
         Rational t = random::unit_rational(rng, 12) * total;
         if (s > t) std::swap(s, t);
         const auto ps = omega::prefix(a, s), pt = omega::prefix(a, t);
         return fail_if(!omega::is_subset(ps, pt) || !omega::is_subset(pt, a) ||
                            omega::measure(pt) != t || omega::measure(ps) != s,
                        "prefix chain broken");
       }},
      {"omega.split_partition", 200,
       [](Engine& rng) {
         const auto x = random::random_variable(rng, random::metric_space(rng, 4));
         const auto& a = x.block(0);
         const auto law = random::measure(rng, x.space());
         std::vector<Rational> w;
         for (const auto& v : law.weights()) w.push_back(v * omega::measure(a));
         const auto parts = omega::split(a, w);
         for (std::size_t i = 0; i < parts.size(); ++i) {
           if (omega::measure(parts[i]) != w[i]) return std::string("split weight mismatch");
           for (std::size_t j = i + 1; j < parts.size(); ++j) {
             if (!omega::disjoint(parts[i], parts[j])) return std::string("split parts overlap");
           }
         }
         return fail_if(omega::unite_all(parts) != a, "split parts do not cover");
       }},
      {"omega.inverse_prefix_mass", 200,
       [](Engine& rng) {
         const auto x = random::random_variable(rng, random::metric_space(rng, 3));
         const auto y = random::random_variable(rng, x.space());
         const auto& a = x.block(0);
         const auto& base = y.block(1);
         const Rational gamma = random::unit_rational(rng, 10) * omega::measure(omega::intersect(a, base));
         const Rational s = omega::inverse_prefix_mass(a, base, gamma);
         return fail_if(omega::measure(omega::intersect(a, omega::prefix(base, s))) != gamma,
                        "inverse prefix mass inconsistent");
       }},
      {"measure.coupling_subset_equality", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 1, 6));
         const auto mu = random::measure(rng, space), nu = random::measure(rng, space);
         const auto result = prokhorov_coupling(mu, nu);
         return fail_if(result.distance != prokhorov_subsets(mu, nu) ||
                            kyfan_functional(result.coupling) != result.distance ||
                            result.coupling.row_marginal() != mu.weights() ||
                            result.coupling.column_marginal() != nu.weights(),
                        "coupling and subset formulations disagree");
       }},
      {"measure.q_metric_axioms", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto a = random::measure(rng, space), b = random::measure(rng, space),
                    c = random::measure(rng, space);
         const Rational ab = prokhorov_coupling(a, b).distance;
         return fail_if(ab != prokhorov_coupling(b, a).distance || (ab == 0) != (a == b) ||
                            ab > prokhorov_coupling(a, c).distance + prokhorov_coupling(c, b).distance ||
                            ab > 1,
                        "q metric axiom violated");
       }},
      {"measure.mixture_contraction", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto mu = random::measure(rng, space), nu = random::measure(rng, space);
         const Rational t = random::unit_rational(rng, 16);
         return fail_if(prokhorov_coupling(nu, mixture(nu, mu, t)).distance > prokhorov_coupling(nu, mu).distance,
                        "mixture moved further than the endpoint");
       }},
      {"rv.kyfan_scan_oracle", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto x = random::random_variable(rng, space), y = random::random_variable(rng, space);
         return fail_if(kyfan_rho(x, y) != oracle::kyfan_scan(x, y), "ρ disagrees with direct scan");
       }},
      {"rv.rho_metric_axioms", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto x = random::random_variable(rng, space), y = random::random_variable(rng, space),
                    z = random::random_variable(rng, space);
         const Rational xy = kyfan_rho(x, y);
         return fail_if(xy != kyfan_rho(y, x) || (xy == 0) != (x == y) ||
                            xy > kyfan_rho(x, z) + kyfan_rho(z, y),
                        "ρ metric axiom violated");
       }},
      {"rv.match_optimality", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 6));
         const auto x = random::random_variable(rng, space);
         const auto nu = random::measure(rng, space);
         const auto y = match_to_law(x, nu);
         return fail_if(law(y) != nu || kyfan_rho(x, y) != prokhorov_subsets(law(x), nu),
                        "match_to_law is not law-exact and optimal");
       }},
      {"rv.q_below_rho", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 6));
         const auto x = random::random_variable(rng, space), y = random::random_variable(rng, space);
         return fail_if(prokhorov_subsets(law(x), law(y)) > kyfan_rho(x, y), "q exceeds ρ");
       }},
      {"segment.law_mixture", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto x = random::random_variable(rng, space), y = random::random_variable(rng, space);
         const Rational a = random::unit_rational(rng, 4) / 2, b = a + rat(1, 2);
         const SegmentLift seg(x, y, a, b);
         const Rational t = a + (b - a) * random::unit_rational(rng, 24);
         const Rational s = (t - a) / (b - a);
         return fail_if(law(seg.eval(t)) != mixture(law(x), law(y), s) || seg.eval(a) != x || seg.eval(b) != y,
                        "segment law is not the mixture");
       }},
      {"segment.regularity", 150,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 5));
         const auto x = random::random_variable(rng, space), y = random::random_variable(rng, space);
         const SegmentLift seg(x, y, 0, 1);
         const Rational s = random::unit_rational(rng, 20), t = random::unit_rational(rng, 20);
         const auto xs = seg.eval(s), xt = seg.eval(t);
         return fail_if(kyfan_rho(xs, xt) > abs(Rational(t - s)) || kyfan_rho(x, xt) > kyfan_rho(x, y),
                        "segment regularity bound violated");
       }},
      {"polygonal.lift_law_identity", 30,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 3, 5));
         const auto path = random::polygonal(rng, space, pick(rng, 4, 8));
         const auto start = random::random_variable_with_law(rng, path.vertices().front());
         const auto end = random::random_variable_with_law(rng, path.vertices().back());
         const auto lift = lift_polygonal(path, start, end);
         for (int k = 0; k < 20; ++k) {
           const Rational t = random::unit_rational(rng, 97);
           if (law(lift.eval(t)) != path.eval(t)) return std::string("law identity fails");
         }
         return fail_if(lift.eval(0) != start || lift.eval(1) != end, "endpoints not prescribed");
       }},
      {"polygonal.relift_bound", 10,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 4));
         const auto base = random::polygonal(rng, space, pick(rng, 2, 4));
         std::vector<Measure> moved{base.vertices().front()};
         Rational eps = 0;
         for (std::size_t i = 1; i + 1 < base.vertices().size(); ++i) {
           moved.push_back(mixture(base.vertices()[i], random::measure(rng, space), rat(1, 8)));
           eps = std::max(eps, prokhorov_coupling(base.vertices()[i], moved.back()).distance);
         }
         moved.push_back(base.vertices().back());
         const PolygonalPath target(base.breakpoints(), std::move(moved));
         const auto prev = lift_polygonal(base, canonical_rv(base.vertices().front()),
                                          canonical_rv(base.vertices().back()));
         if (eps == 0) eps = rat(1, 16);
         const auto result = relift_near(prev, target, eps, 33);
         const auto cert = verify_lift(result.lift, target, 33);
         return fail_if(result.sup_rho > 5 * eps || cert.max_law_gap != 0, "relift bound violated");
       }},
      {"pipeline.decay", 2,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, 3);
         auto [path, lip] = random::lipschitz_polygonal(rng, space, 3, 2);
         const SampledPath alpha = SampledPath::from_polygonal(path, lip);
         const auto result = lift_path(alpha, canonical_rv(path.vertices().front()),
                                       canonical_rv(path.vertices().back()), rat(1, 5), 2, 33);
         const auto& c = result.certificate;
         return fail_if(c.max_law_gap > rat(1, 5) || !c.decay_within_budget() || !c.start_ok || !c.end_ok,
                        "pipeline certificate fails");
       }},
      {"cube.law_identity", 20,
       [](Engine& rng) {
         const auto space = random::metric_space(rng, pick(rng, 2, 4));
         const std::size_t n = pick(rng, 1, 3);
         std::vector<Measure> corners;
         for (std::size_t k = 0; k <= n; ++k) corners.push_back(random::measure(rng, space));
         const CubeInterpolation cube(std::move(corners));
         std::vector<Rational> point;
         for (std::size_t k = 0; k < n; ++k) point.push_back(random::unit_rational(rng, 6));
         return fail_if(law(g_lift_eval(cube, point)) != g_eval(cube, point), "cube law identity fails");
       }},
  };
}

}  // namespace

bool SelftestReport::all_passed() const {
  for (const auto& s : suites) {
    if (s.passed != s.total) return false;
  }
  return true;
}

std::string SelftestReport::summary() const {
  std::ostringstream out;
  out << "selftest seed " << seed << "\n";
  std::size_t passed = 0, total = 0;
  for (const auto& s : suites) {
    out << (s.passed == s.total ? "PASS " : "FAIL ") << s.name << " " << s.passed << "/" << s.total;
    if (!s.first_failure.empty()) out << " first failure: " << s.first_failure;
    out << "\n";
    passed += s.passed;
    total += s.total;
  }
  out << "total " << passed << "/" << total << "\n";
  return out.str();
}

SelftestReport run_selftest(std::uint64_t seed, std::size_t scale) {
  SelftestReport report;
  report.seed = seed;
  std::size_t index = 0;
  for (const auto& suite : suites()) {
    // Each suite gets its own stream so suites stay reproducible on their own.
    Engine rng(seed * 1000003ULL + index++);
    SuiteResult result{suite.name, 0, suite.count * scale, {}};
    for (std::size_t k = 0; k < result.total; ++k) {
      std::string failure;
      try {
        failure = suite.check(rng);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      if (failure.empty()) {
        ++result.passed;
      } else if (result.first_failure.empty()) {
        result.first_failure = "instance " + std::to_string(k) + ": " + failure;
      }
    }
    report.suites.push_back(std::move(result));
  }
  return report;
}

}  // namespace pathlift
