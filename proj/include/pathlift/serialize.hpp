#pragma once

#include "pathlift/cube_lift.hpp"
#include "pathlift/path_lift.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace pathlift::io {

using Json = nlohmann::json;

// Every rational is written as a "p/q" string; there is no floating point
// anywhere in the formats.

Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json to_json(const omega::IntervalSet& set);
omega::IntervalSet interval_set_from_json(const Json& j);

Json to_json(const FiniteMetricSpace& space);
SpacePtr space_from_json(const Json& j);

/// {"space": ..., "weights": [...]}
Json to_json(const Measure& measure);
Measure measure_from_json(const Json& j);
/// Weight list alone, on a known space.
Measure measure_from_json(const Json& weights, const SpacePtr& space);

/// {"blocks": {"a": [...], ...}}; points without an entry get an empty block.
Json to_json(const SimpleRandomVariable& x, bool with_space = false);
SimpleRandomVariable rv_from_json(const Json& j);
SimpleRandomVariable rv_from_json(const Json& j, const SpacePtr& space);

Json to_json(const CouplingMatrix& coupling);

/// Path input file:
///   {"space": ..., "kind": "polygonal" | "sampled",
///    "breakpoints": [...], "vertices": [[weights], ...],
///    "lipschitz": "p/q", "samples": [{"t": "p/q", "weights": [...]}, ...]}
/// A sampled path is the piecewise-affine interpolation of its samples,
/// treated as a black box with the declared Lipschitz constant.
struct PathInput {
  SpacePtr space;
  std::string kind;
  std::optional<PolygonalPath> polygonal;  // kind == "polygonal"
  std::optional<SampledPath> sampled;      // kind == "sampled"
};
PathInput path_from_json(const Json& j);
Json to_json(const PolygonalPath& path);

/// {"start": {"blocks": ...}, "end": {"blocks": ...}}, with an optional space.
Endpoints endpoints_from_json(const Json& j, const SpacePtr& space);
Json to_json(const Endpoints& endpoints);

/// {"space": ..., "breakpoints": [...], "vertices": [{"blocks": ...}, ...]}
Json to_json(const LiftedPath& lift);
LiftedPath lift_from_json(const Json& j);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

/// {"space": ..., "corners": [[weights], ...]}
CubeInterpolation cube_from_json(const Json& j);

/// Reads and parses a JSON file; errors carry the file name and position.
Json read_json_file(const std::string& path);

}  // namespace pathlift::io
