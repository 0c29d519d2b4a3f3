#include "pathlift/serialize.hpp"

#include "pathlift/errors.hpp"

#include <fstream>
#include <sstream>

namespace pathlift::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return a;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

}  // namespace

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string, got " + j.dump());
}

Json to_json(const omega::IntervalSet& set) {
  Json out = Json::array();
  for (const auto& iv : set.intervals()) out.push_back(Json::array({to_json(iv.left), to_json(iv.right)}));
  return out;
}

omega::IntervalSet interval_set_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("interval set must be an array of [left, right] pairs");
  std::vector<omega::Interval> ivs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("interval must be a [left, right] pair");
    ivs.push_back({rational_from_json(pair[0]), rational_from_json(pair[1])});
  }
  return omega::IntervalSet(std::move(ivs));
}

Json to_json(const FiniteMetricSpace& space) {
  Json dist = Json::array();
  for (const auto& row : space.dist()) dist.push_back(rationals_to_json(row));
  return Json{{"points", space.points()}, {"dist", dist}};
}

SpacePtr space_from_json(const Json& j) {
  std::vector<std::string> points;
  for (const auto& p : array_field(j, "points")) {
    if (!p.is_string()) throw ParseError("point names must be strings");
    points.push_back(p.get<std::string>());
  }
  RationalMatrix dist;
  for (const auto& row : array_field(j, "dist")) dist.push_back(rationals_from_json(row));
  return FiniteMetricSpace::create(std::move(points), std::move(dist));
}

Json to_json(const Measure& measure) {
  return Json{{"space", to_json(*measure.space())}, {"weights", rationals_to_json(measure.weights())}};
}

Measure measure_from_json(const Json& j) {
  return measure_from_json(array_field(j, "weights"), space_from_json(field(j, "space")));
}

Measure measure_from_json(const Json& weights, const SpacePtr& space) {
  return Measure(space, rationals_from_json(weights));
}

Json to_json(const SimpleRandomVariable& x, bool with_space) {
  Json blocks = Json::object();
  const auto& points = x.space()->points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!x.block(i).empty()) blocks[points[i]] = to_json(x.block(i));
  }
  Json out{{"blocks", blocks}};
  if (with_space) out["space"] = to_json(*x.space());
  return out;
}

SimpleRandomVariable rv_from_json(const Json& j) { return rv_from_json(j, space_from_json(field(j, "space"))); }

SimpleRandomVariable rv_from_json(const Json& j, const SpacePtr& space) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_object()) throw ParseError("\"blocks\" must map point names to interval lists");
  std::vector<omega::IntervalSet> out(space->size());
  for (const auto& [name, set] : blocks.items()) out[space->index_of(name)] = interval_set_from_json(set);
  return SimpleRandomVariable(space, std::move(out));
}

Json to_json(const CouplingMatrix& coupling) {
  Json mass = Json::array();
  for (const auto& row : coupling.mass()) mass.push_back(rationals_to_json(row));
  return Json{{"mass", mass}};
}

Json to_json(const PolygonalPath& path) {
  Json vertices = Json::array();
  for (const auto& v : path.vertices()) vertices.push_back(rationals_to_json(v.weights()));
  return Json{{"space", to_json(*path.space())},
              {"kind", "polygonal"},
              {"breakpoints", rationals_to_json(path.breakpoints())},
              {"vertices", vertices}};
}

PathInput path_from_json(const Json& j) {
  PathInput in;
  in.space = space_from_json(field(j, "space"));
  in.kind = field(j, "kind").get<std::string>();
  if (in.kind == "polygonal") {
    std::vector<Measure> vertices;
    for (const auto& v : array_field(j, "vertices")) vertices.push_back(measure_from_json(v, in.space));
    in.polygonal.emplace(rationals_from_json(array_field(j, "breakpoints")), std::move(vertices));
    if (j.contains("lipschitz")) {
      in.sampled.emplace(SampledPath::from_polygonal(*in.polygonal, rational_from_json(j["lipschitz"])));
    }
  } else if (in.kind == "sampled") {
    std::vector<Rational> times;
    std::vector<Measure> values;
    for (const auto& s : array_field(j, "samples")) {
      times.push_back(rational_from_json(field(s, "t")));
      values.push_back(measure_from_json(array_field(s, "weights"), in.space));
    }
    in.sampled.emplace(SampledPath::from_polygonal(PolygonalPath(std::move(times), std::move(values)),
                                                   rational_from_json(field(j, "lipschitz"))));
  } else {
    throw ParseError("path kind must be \"polygonal\" or \"sampled\", got \"" + in.kind + "\"");
  }
  return in;
}

Endpoints endpoints_from_json(const Json& j, const SpacePtr& space) {
  SpacePtr own = j.contains("space") ? space_from_json(j["space"]) : space;
  require_same_space(own, space, "endpoints");
  return Endpoints{rv_from_json(field(j, "start"), space), rv_from_json(field(j, "end"), space)};
}

Json to_json(const Endpoints& endpoints) {
  return Json{{"space", to_json(*endpoints.start.space())},
              {"start", to_json(endpoints.start)},
              {"end", to_json(endpoints.end)}};
}

Json to_json(const LiftedPath& lift) {
  Json vertices = Json::array();
  for (const auto& v : lift.vertices()) vertices.push_back(to_json(v));
  return Json{{"space", to_json(*lift.space())},
              {"breakpoints", rationals_to_json(lift.breakpoints())},
              {"vertices", vertices}};
}

LiftedPath lift_from_json(const Json& j) {
  const SpacePtr space = space_from_json(field(j, "space"));
  std::vector<SimpleRandomVariable> vertices;
  for (const auto& v : array_field(j, "vertices")) vertices.push_back(rv_from_json(v, space));
  return LiftedPath(rationals_from_json(array_field(j, "breakpoints")), std::move(vertices));
}

Json to_json(const Certificate& cert) {
  return Json{{"grid", rationals_to_json(cert.grid)},
              {"law_gaps", rationals_to_json(cert.law_gaps)},
              {"max_law_gap", to_json(cert.max_law_gap)},
              {"continuity_table", rationals_to_json(cert.continuity_table)},
              {"min_piece_length", to_json(cert.min_piece_length)},
              {"continuity_bound", to_json(cert.continuity_bound)},
              {"endpoint_ok", Json{{"start", cert.start_ok}, {"end", cert.end_ok}}},
              {"decay_table", rationals_to_json(cert.decay_table)},
              {"decay_budget", rationals_to_json(cert.decay_budget)}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.grid = rationals_from_json(array_field(j, "grid"));
  cert.law_gaps = rationals_from_json(array_field(j, "law_gaps"));
  cert.max_law_gap = rational_from_json(field(j, "max_law_gap"));
  cert.continuity_table = rationals_from_json(array_field(j, "continuity_table"));
  cert.min_piece_length = rational_from_json(field(j, "min_piece_length"));
  cert.continuity_bound = rational_from_json(field(j, "continuity_bound"));
  const Json& ends = field(j, "endpoint_ok");
  cert.start_ok = field(ends, "start").get<bool>();
  cert.end_ok = field(ends, "end").get<bool>();
  cert.decay_table = rationals_from_json(array_field(j, "decay_table"));
  cert.decay_budget = rationals_from_json(array_field(j, "decay_budget"));
  return cert;
}

CubeInterpolation cube_from_json(const Json& j) {
  const SpacePtr space = space_from_json(field(j, "space"));
  std::vector<Measure> corners;
  for (const auto& c : array_field(j, "corners")) corners.push_back(measure_from_json(c, space));
  return CubeInterpolation(std::move(corners));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

}  // namespace pathlift::io
