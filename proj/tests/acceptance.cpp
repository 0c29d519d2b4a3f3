// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "pathlift/cube_lift.hpp"
#include "pathlift/errors.hpp"
#include "pathlift/oracles.hpp"
#include "pathlift/path_lift.hpp"
#include "pathlift/random_instances.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#ifndef PATHLIFT_CLI_PATH
#define PATHLIFT_CLI_PATH "pathlift"
#endif

using namespace pathlift;
namespace rnd = pathlift::random;

namespace {

struct Outcome {
  bool ok = true;
  std::size_t instances = 0;
  std::string note;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what + " (instance " + std::to_string(instances) + ")";
    }
  }
};

using Clock = std::chrono::steady_clock;

bool run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    out.ok = false;
    if (out.note.empty()) out.note = "over time limit";
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (out.ok ? "PASS " : "FAIL ") << id << ' ' << name << ": " << out.instances << " instances, " << timing;
  if (limit_s > 0) std::cout << " (limit " << limit_s << "s)";
  if (!out.note.empty()) std::cout << " - " << out.note;
  std::cout << std::endl;
  return out.ok;
}

std::size_t pick(rnd::Engine& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Outcome coupling_subset_equality() {
  Outcome out;
  rnd::Engine rng(101);
  for (; out.instances < 500; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 1, 8));
    const auto mu = rnd::measure(rng, s), nu = rnd::measure(rng, s);
    const auto res = prokhorov_coupling(mu, nu);
    out.check(res.distance == prokhorov_subsets(mu, nu), "coupling and subset formulations differ");
    out.check(res.coupling.row_marginal() == mu.weights() && res.coupling.column_marginal() == nu.weights(), "witness marginals");
    out.check(kyfan_functional(res.coupling) == res.distance, "witness does not attain q");
  }
  return out;
}

Outcome match_optimality() {
  Outcome out;
  rnd::Engine rng(202);
  for (; out.instances < 500; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 1, 6));
    const auto x = rnd::random_variable(rng, s);
    const auto nu = rnd::measure(rng, s);
    const auto y = match_to_law(x, nu);
    out.check(law(y) == nu, "law of matched variable");
    out.check(kyfan_rho(x, y) == prokhorov_coupling(law(x), nu).distance, "rho of match differs from q");
    const auto z = rnd::random_variable(rng, s);
    out.check(prokhorov_coupling(law(x), law(z)).distance <= kyfan_rho(x, z), "q exceeds rho");
  }
  return out;
}

Outcome mixture_identity() {
  Outcome out;
  rnd::Engine rng(303);
  for (; out.instances < 500; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 1, 6));
    const auto x = rnd::random_variable(rng, s), y = rnd::random_variable(rng, s);
    const Rational a = rnd::unit_rational(rng, 12) / 2;
    const Rational b = a + Rational(1, 2) + rnd::unit_rational(rng, 12) / 2;
    const SegmentLift seg(x, y, a, b);
    out.check(seg.eval(a) == x && seg.eval(b) == y, "segment endpoints");
    for (int k = 0; k < 10; ++k) {
      const Rational t = a + (b - a) * rnd::unit_rational(rng, 997);
      const Rational sfrac = (t - a) / (b - a);
      out.check(law(seg.eval(t)) == mixture(law(x), law(y), sfrac), "law mixture");
    }
  }
  return out;
}

Outcome segment_regularity() {
  Outcome out;
  rnd::Engine rng(404);
  for (; out.instances < 500; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 1, 6));
    const auto x = rnd::random_variable(rng, s), y = rnd::random_variable(rng, s);
    const Rational a = rnd::unit_rational(rng, 8) / 2, b = a + Rational(1, 3);
    const SegmentLift seg(x, y, a, b);
    const Rational t1 = a + (b - a) * rnd::unit_rational(rng, 211);
    const Rational t2 = a + (b - a) * rnd::unit_rational(rng, 211);
    const auto v1 = seg.eval(t1), v2 = seg.eval(t2);
    out.check(oracle::kyfan_scan(v1, v2) <= abs(Rational(t2 - t1)) / (b - a), "segment Lipschitz bound");
    out.check(kyfan_rho(x, v1) <= kyfan_rho(x, y), "distance from start exceeds rho(X,Y)");
  }
  return out;
}

Outcome mixture_contraction() {
  Outcome out;
  rnd::Engine rng(505);
  for (; out.instances < 500; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 1, 7));
    const auto mu = rnd::measure(rng, s), nu = rnd::measure(rng, s);
    const Rational t = rnd::unit_rational(rng, 64);
    out.check(prokhorov_coupling(nu, mixture(nu, mu, t)).distance <= prokhorov_coupling(nu, mu).distance,
              "mixture moved farther than the far end");
  }
  return out;
}

Outcome polygonal_lifting() {
  Outcome out;
  rnd::Engine rng(606);
  for (; out.instances < 60; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 3, 5));
    const auto path = rnd::polygonal(rng, s, pick(rng, 4, 8));
    const auto start = rnd::random_variable_with_law(rng, path.vertices().front());
    const auto end = rnd::random_variable_with_law(rng, path.vertices().back());
    const auto lift = lift_polygonal(path, start, end);
    out.check(lift.eval(0) == start && lift.eval(1) == end, "prescribed endpoints");
    for (int k = 0; k < 100; ++k) {
      const Rational t = rnd::unit_rational(rng, 1009);
      out.check(law(lift.eval(t)) == path.eval(t), "law identity");
    }
    const auto wrong = rnd::measure(rng, s);
    if (wrong != path.vertices().back()) {
      bool rejected = false;
      try {
        lift_polygonal(path, start, rnd::random_variable_with_law(rng, wrong));
      } catch (const DomainError&) {
        rejected = true;
      }
      out.check(rejected, "endpoint law mismatch accepted");
    }
  }
  return out;
}

Outcome relift_bound() {
  Outcome out;
  rnd::Engine rng(707);
  for (; out.instances < 200; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 2, 4));
    const auto base = rnd::polygonal(rng, s, pick(rng, 2, 5));
    const Rational w = Rational(1, static_cast<long>(pick(rng, 2, 10)));
    std::vector<Measure> moved{base.vertices().front()};
    Rational eps = 0;
    for (std::size_t i = 1; i + 1 < base.vertices().size(); ++i) {
      moved.push_back(mixture(base.vertices()[i], rnd::measure(rng, s), w));
      eps = std::max(eps, prokhorov_coupling(base.vertices()[i], moved.back()).distance);
    }
    moved.push_back(base.vertices().back());
    if (eps == 0) eps = Rational(1, 50);
    const PolygonalPath target(base.breakpoints(), std::move(moved));
    const auto prev = lift_polygonal(base, rnd::random_variable_with_law(rng, base.vertices().front()),
                                     rnd::random_variable_with_law(rng, base.vertices().back()));
    const auto r = relift_near(prev, target, eps, 65);
    out.check(r.sup_rho <= 5 * eps, "sup rho above 5 eps");
    Rational sup = 0;
    for (const auto& t : verification_grid(65, r.lift.breakpoints())) {
      const auto v = r.lift.eval(t);
      out.check(law(v) == target.eval(t), "relift is not a lifting of the target");
      sup = std::max(sup, oracle::kyfan_scan(prev.eval(t), v));
    }
    out.check(sup == r.sup_rho, "certified sup differs from recomputation");
  }
  return out;
}

Outcome pipeline() {
  Outcome out;
  rnd::Engine rng(808);
  const Rational tol(1, 25);
  for (; out.instances < 20; ++out.instances) {
    const auto s = rnd::metric_space(rng, pick(rng, 2, 4));
    auto [path, lip] = rnd::lipschitz_polygonal(rng, s, pick(rng, 3, 6), 4);
    const auto alpha = SampledPath::from_polygonal(path, lip);
    const auto start = rnd::random_variable_with_law(rng, path.vertices().front());
    const auto end = rnd::random_variable_with_law(rng, path.vertices().back());
    const auto r = lift_path(alpha, start, end, tol, 3);
    const auto& c = r.certificate;
    out.check(c.max_law_gap <= tol, "law gap above tolerance");
    out.check(c.decay_table.size() == 2 && c.decay_within_budget(), "decay table over budget");
    out.check(c.decay_budget.size() == 2 && c.decay_budget[1] * 5 == c.decay_budget[0], "budget ratio");
    out.check(c.start_ok && c.end_ok, "endpoints in certificate");
    out.check(r.lift.eval(0) == start && r.lift.eval(1) == end, "endpoints not preserved");
  }
  return out;
}

Outcome cube_lifting() {
  Outcome out;
  rnd::Engine rng(909);
  const auto s = rnd::metric_space(rng, 5);
  for (std::size_t n : {2, 3}) {
    for (int rep = 0; rep < 3; ++rep, ++out.instances) {
      std::vector<Measure> corners;
      for (std::size_t k = 0; k <= n; ++k) corners.push_back(rnd::measure(rng, s));
      const CubeInterpolation cube(corners);
      const CubeInterpolation lower(std::vector<Measure>(corners.begin(), corners.end() - 1));
      std::size_t total = 1;
      for (std::size_t d = 0; d < n; ++d) total *= 5;
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<Rational> p;
        for (std::size_t d = 0, rest = idx; d < n; ++d, rest /= 5) p.push_back(rat(static_cast<long>(rest % 5), 4));
        out.check(law(g_lift_eval(cube, p)) == g_eval(cube, p), "law identity on grid");
        if (p.back() == 0) {
          const std::vector<Rational> head(p.begin(), p.end() - 1);
          out.check(g_lift_eval(cube, p) == g_lift_eval(lower, head), "zero slice");
        } else if (p.back() == 1) {
          out.check(law(g_lift_eval(cube, p)) == corners.back(), "unit slice");
        }
      }
    }
  }
  return out;
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, text};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  return {pclose(pipe), text};
}

Outcome determinism() {
  Outcome out;
  const std::string cmd = std::string("\"") + PATHLIFT_CLI_PATH + "\" selftest --seed 0";
  const auto first = capture(cmd);
  const auto second = capture(cmd);
  out.instances = 2;
  out.check(first.first == 0 && second.first == 0, "selftest exited nonzero");
  out.check(!first.second.empty(), "selftest printed nothing");
  out.check(first.second == second.second, "outputs differ");
  return out;
}

}  // namespace

int main() {
  bool all = true;
  all &= run(1, "coupling-subset-equality", 60, coupling_subset_equality);
  all &= run(2, "match-optimality", 0, match_optimality);
  all &= run(3, "law-mixture-identity", 0, mixture_identity);
  all &= run(4, "segment-regularity", 0, segment_regularity);
  all &= run(5, "mixture-contraction", 0, mixture_contraction);
  all &= run(6, "polygonal-lifting", 0, polygonal_lifting);
  all &= run(7, "relift-bound", 0, relift_bound);
  all &= run(8, "pipeline", 120, pipeline);
  all &= run(9, "cube-lifting", 60, cube_lifting);
  all &= run(10, "selftest-determinism", 0, determinism);
  return all ? 0 : 1;
}
