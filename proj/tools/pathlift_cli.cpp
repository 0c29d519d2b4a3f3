// Command-line front end for the pathlift library.
//
// Exit codes: 0 success, 2 precondition violation or bad input,
// 3 internal invariant failure (a certified bound that should hold did not).

#include "pathlift/cube_lift.hpp"
#include "pathlift/errors.hpp"
#include "pathlift/path_lift.hpp"
#include "pathlift/selftest.hpp"
#include "pathlift/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace pathlift;
using io::Json;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitInvariant = 3;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string tolerance = "1/25";
  std::size_t iterations = 3;
  std::size_t grid = kDefaultGridPoints;
  std::size_t cube_grid = kDefaultCubeGrid;
  std::uint64_t seed = 0;
  std::size_t scale = 1;
  std::string out;
  std::string endpoints;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  // Write to a sibling file and rename, so readers never see a partial file.
  const std::string tmp = out + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ParseError(out + ": cannot open for writing");
    file << text;
  }
  if (std::rename(tmp.c_str(), out.c_str()) != 0) throw ParseError(out + ": cannot replace file");
}

void emit(const Json& doc, const std::string& out) { emit(doc.dump(2) + "\n", out); }

Rational tolerance(const RunConfig& cfg) {
  const Rational tol = parse_rational(cfg.tolerance);
  if (tol <= 0) throw DomainError("--tol must be positive");
  return tol;
}

// A lift file is either a bare lifted path or the output of `lift`/`relift`.
const Json& lift_section(const Json& doc) { return doc.contains("lift") ? doc["lift"] : doc; }

int cmd_prokhorov(const RunConfig& cfg) {
  const Measure mu = io::measure_from_json(io::read_json_file(cfg.inputs.at(0)));
  const Measure nu_raw = io::measure_from_json(io::read_json_file(cfg.inputs.at(1)));
  require_same_space(mu.space(), nu_raw.space(), "prokhorov");
  const Measure nu(mu.space(), nu_raw.weights());

  const auto result = prokhorov_coupling(mu, nu);
  Json report{{"q_coupling", io::to_json(result.distance)},
              {"coupling", io::to_json(result.coupling)["mass"]},
              {"kyfan_of_coupling", io::to_json(kyfan_functional(result.coupling))}};
  if (mu.space()->size() <= kSubsetOracleMaxPoints) {
    const Rational q_subsets = prokhorov_subsets(mu, nu);
    report["q_subsets"] = io::to_json(q_subsets);
    report["equal"] = q_subsets == result.distance;
    report["oracle"] = "enabled";
  } else {
    report["q_subsets"] = nullptr;
    report["equal"] = nullptr;
    report["oracle"] = "disabled: space has " + std::to_string(mu.space()->size()) + " points, limit is " +
                       std::to_string(kSubsetOracleMaxPoints);
    std::cerr << "notice: subset oracle disabled for spaces with more than " << kSubsetOracleMaxPoints
              << " points\n";
  }
  emit(report, cfg.out);
  return report["equal"] == false ? kExitInvariant : 0;
}

int cmd_kyfan(const RunConfig& cfg) {
  const auto x = io::rv_from_json(io::read_json_file(cfg.inputs.at(0)));
  const auto y = io::rv_from_json(io::read_json_file(cfg.inputs.at(1)), x.space());
  Json joint = Json::array();
  for (const auto& row : joint_mass(x, y)) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(io::to_json(v));
    joint.push_back(r);
  }
  emit(Json{{"rho", io::to_json(kyfan_rho(x, y))}, {"joint_mass", joint}}, cfg.out);
  return 0;
}

int cmd_match(const RunConfig& cfg) {
  const auto x = io::rv_from_json(io::read_json_file(cfg.inputs.at(0)));
  const Measure nu_raw = io::measure_from_json(io::read_json_file(cfg.inputs.at(1)));
  require_same_space(x.space(), nu_raw.space(), "match");
  const Measure nu(x.space(), nu_raw.weights());
  const auto y = match_to_law(x, nu);
  const Rational rho = kyfan_rho(x, y);
  const Rational q = prokhorov_coupling(law(x), nu).distance;
  emit(Json{{"y", io::to_json(y)},
            {"rho", io::to_json(rho)},
            {"q", io::to_json(q)},
            {"law_ok", law(y) == nu},
            {"optimal", rho == q}},
       cfg.out);
  return law(y) == nu && rho == q ? 0 : kExitInvariant;
}

int cmd_segment(const RunConfig& cfg) {
  const auto x = io::rv_from_json(io::read_json_file(cfg.inputs.at(0)));
  const auto y = io::rv_from_json(io::read_json_file(cfg.inputs.at(1)), x.space());
  const SegmentLift seg(x, y, 0, 1);
  const auto grid = verification_grid(cfg.grid, {});
  Json laws = Json::array(), rho_start = Json::array(), continuity = Json::array();
  bool mixture_ok = true;
  std::optional<SimpleRandomVariable> previous;
  for (const auto& t : grid) {
    const auto value = seg.eval(t);
    const Measure l = law(value);
    mixture_ok = mixture_ok && l == mixture(law(x), law(y), t);
    Json w = Json::array();
    for (const auto& v : l.weights()) w.push_back(io::to_json(v));
    laws.push_back(w);
    rho_start.push_back(io::to_json(kyfan_rho(x, value)));
    if (previous) continuity.push_back(io::to_json(kyfan_rho(*previous, value)));
    previous = value;
  }
  Json grid_json = Json::array();
  for (const auto& t : grid) grid_json.push_back(io::to_json(t));
  emit(Json{{"grid", grid_json},
            {"laws", laws},
            {"law_mixture_ok", mixture_ok},
            {"rho_to_start", rho_start},
            {"rho_start_end", io::to_json(kyfan_rho(x, y))},
            {"continuity_table", continuity}},
       cfg.out);
  return mixture_ok ? 0 : kExitInvariant;
}

int cmd_lift(const RunConfig& cfg) {
  const auto input = io::path_from_json(io::read_json_file(cfg.inputs.at(0)));
  std::optional<Endpoints> ends;
  if (cfg.inputs.size() > 1) {
    ends = io::endpoints_from_json(io::read_json_file(cfg.inputs[1]), input.space);
  }

  PathLiftResult result = [&] {
    if (input.kind == "polygonal") {
      const auto& path = *input.polygonal;
      if (!ends) ends = Endpoints{canonical_rv(path.vertices().front()), canonical_rv(path.vertices().back())};
      return lift_path(path, ends->start, ends->end, cfg.grid);
    }
    const auto& alpha = *input.sampled;
    if (!ends) ends = Endpoints{canonical_rv(alpha(Rational(0))), canonical_rv(alpha(Rational(1)))};
    return lift_path(alpha, ends->start, ends->end, tolerance(cfg), cfg.iterations, cfg.grid);
  }();

  const auto& cert = result.certificate;
  const Rational allowed = input.kind == "polygonal" ? Rational(0) : tolerance(cfg);
  const bool holds = cert.max_law_gap <= allowed && cert.decay_within_budget() && cert.start_ok && cert.end_ok;
  emit(Json{{"lift", io::to_json(result.lift)},
            {"polygonal", io::to_json(result.polygonal)},
            {"certificate", io::to_json(cert)},
            {"certified", holds}},
       cfg.out);
  return holds ? 0 : kExitInvariant;
}

int cmd_relift(const RunConfig& cfg) {
  const LiftedPath prev = io::lift_from_json(lift_section(io::read_json_file(cfg.inputs.at(0))));
  const auto input = io::path_from_json(io::read_json_file(cfg.inputs.at(1)));
  if (!input.polygonal) throw DomainError("relift needs a polygonal target path");
  const Rational eps = parse_rational(cfg.tolerance);
  const auto result = relift_near(prev, *input.polygonal, eps, cfg.grid);
  const Certificate cert = verify_lift(result.lift, *input.polygonal, cfg.grid,
                                       Endpoints{prev.vertices().front(), prev.vertices().back()});
  const bool holds = result.sup_rho <= 5 * eps && cert.max_law_gap == 0 && cert.start_ok && cert.end_ok;
  emit(Json{{"lift", io::to_json(result.lift)},
            {"sup_rho", io::to_json(result.sup_rho)},
            {"bound", io::to_json(Rational(5 * eps))},
            {"certificate", io::to_json(cert)},
            {"certified", holds}},
       cfg.out);
  return holds ? 0 : kExitInvariant;
}

int cmd_verify(const RunConfig& cfg) {
  const Json lift_doc = io::read_json_file(cfg.inputs.at(0));
  const LiftedPath lift = io::lift_from_json(lift_section(lift_doc));
  const auto input = io::path_from_json(io::read_json_file(cfg.inputs.at(1)));
  std::optional<Endpoints> ends;
  if (!cfg.endpoints.empty()) ends = io::endpoints_from_json(io::read_json_file(cfg.endpoints), input.space);

  Certificate cert = input.kind == "polygonal" ? verify_lift(lift, *input.polygonal, cfg.grid, ends)
                                               : verify_lift(lift, *input.sampled, cfg.grid, ends);
  // Decay between earlier refinement rounds cannot be recomputed from the
  // final lift; it is carried over from the lift file.
  if (lift_doc.contains("certificate")) {
    const Certificate recorded = io::certificate_from_json(lift_doc["certificate"]);
    cert.decay_table = recorded.decay_table;
    cert.decay_budget = recorded.decay_budget;
  }
  emit(io::to_json(cert), cfg.out);
  return cert.start_ok && cert.end_ok && cert.decay_within_budget() ? 0 : kExitInvariant;
}

int cmd_cube(const RunConfig& cfg) {
  const CubeInterpolation cube = io::cube_from_json(io::read_json_file(cfg.inputs.at(0)));
  const std::size_t n = cube.dimension();
  if (n > kMaxCubeDimension) {
    throw DomainError("cube dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxCubeDimension));
  }
  const std::size_t g = cfg.cube_grid;
  if (g < 2) throw DomainError("--grid must be at least 2");
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) count *= g;

  auto point_of = [&](std::size_t index) {
    std::vector<Rational> p(n);
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = rat(static_cast<long>(index % g), static_cast<long>(g - 1));
      index /= g;
    }
    return p;
  };
  std::vector<SimpleRandomVariable> values;
  Json gaps = Json::array();
  Rational max_gap = 0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto p = point_of(idx);
    values.push_back(g_lift_eval(cube, p));
    const Rational gap = prokhorov_coupling(law(values.back()), g_eval(cube, p)).distance;
    max_gap = std::max(max_gap, gap);
    gaps.push_back(io::to_json(gap));
  }
  Json adjacent = Json::object();
  Rational max_rho = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < n; ++k) {
    Json table = Json::array();
    for (std::size_t idx = 0; idx < count; ++idx) {
      if ((idx / stride) % g == g - 1) continue;
      const Rational r = kyfan_rho(values[idx], values[idx + stride]);
      max_rho = std::max(max_rho, r);
      table.push_back(io::to_json(r));
    }
    adjacent["axis_" + std::to_string(k + 1)] = table;
    stride *= g;
  }
  emit(Json{{"dimension", n},
            {"grid", g},
            {"points", count},
            {"law_gaps", gaps},
            {"max_law_gap", io::to_json(max_gap)},
            {"adjacent_rho", adjacent},
            {"max_adjacent_rho", io::to_json(max_rho)}},
       cfg.out);
  return max_gap == 0 ? 0 : kExitInvariant;
}

int cmd_selftest(const RunConfig& cfg) {
  const SelftestReport report = run_selftest(cfg.seed, cfg.scale);
  emit(report.summary(), cfg.out);
  return report.all_passed() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact liftings of paths of probability measures to paths of random variables"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add = [&](const std::string& name, const std::string& help, std::size_t min_inputs,
                 std::size_t max_inputs) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (max_inputs > 0) sub->add_option("inputs", cfg.inputs, "Input JSON files")->expected(min_inputs, max_inputs)->required(min_inputs > 0);
    sub->add_option("--out", cfg.out, "Write the result here instead of stdout");
    return sub;
  };

  add("prokhorov", "Prokhorov distance between two measures (coupling and subset formulations)", 2, 2);
  add("kyfan", "Ky Fan distance between two random variables", 2, 2);
  add("match", "Random variable with a target law at optimal distance from the input", 2, 2);
  add("segment", "Segment lift between two random variables, tabulated on a grid", 2, 2)
      ->add_option("--grid", cfg.grid, "Grid points");
  auto* lift = add("lift", "Lift a path of measures with prescribed endpoints", 1, 2);
  lift->add_option("--tol", cfg.tolerance, "Target Prokhorov tolerance (p/q)");
  lift->add_option("--iters", cfg.iterations, "Refinement rounds")->check(CLI::PositiveNumber);
  lift->add_option("--grid", cfg.grid, "Verification grid points");
  auto* relift = add("relift", "Relift a polygonal path near an existing lift", 2, 2);
  relift->add_option("--tol", cfg.tolerance, "Precondition distance ε (p/q)");
  relift->add_option("--grid", cfg.grid, "Verification grid points");
  auto* verify = add("verify", "Recompute the certificate of a lift against a path", 2, 2);
  verify->add_option("--grid", cfg.grid, "Verification grid points");
  verify->add_option("--endpoints", cfg.endpoints, "Prescribed endpoint variables");
  add("cube", "Lift the multi-affine interpolation of corner measures on a grid", 1, 1)
      ->add_option("--grid", cfg.cube_grid, "Grid points per axis");
  auto* selftest = add("selftest", "Run the randomized invariant suites", 0, 0);
  selftest->add_option("--seed", cfg.seed, "Random seed");
  selftest->add_option("--scale", cfg.scale, "Instance count multiplier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "prokhorov") return cmd_prokhorov(cfg);
    if (name == "kyfan") return cmd_kyfan(cfg);
    if (name == "match") return cmd_match(cfg);
    if (name == "segment") return cmd_segment(cfg);
    if (name == "lift") return cmd_lift(cfg);
    if (name == "relift") return cmd_relift(cfg);
    if (name == "verify") return cmd_verify(cfg);
    if (name == "cube") return cmd_cube(cfg);
    if (name == "selftest") return cmd_selftest(cfg);
  } catch (const DomainError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitInvariant;
}
