#pragma once

#include "pathlift/cube_lift.hpp"
#include "pathlift/path_lift.hpp"

#include <random>

namespace pathlift::random {

using Engine = std::mt19937_64;

/// Uniform rational k/den, k in [0, den].
Rational unit_rational(Engine& rng, long den);

/// Random metric space with m points. Alternates between distances drawn
/// from [c, 2c] (any such matrix is a metric) and shortest-path closures of
/// random weighted graphs, which produce ties and sparse threshold sets.
SpacePtr metric_space(Engine& rng, std::size_t m);

/// Random probability vector with small denominators; some weights are zero.
Measure measure(Engine& rng, const SpacePtr& space);

/// Random partition of [0,1) into rational intervals with random labels,
/// so blocks are typically unions of several intervals.
SimpleRandomVariable random_variable(Engine& rng, const SpacePtr& space);

/// Random variable with the given law whose blocks are scattered.
SimpleRandomVariable random_variable_with_law(Engine& rng, const Measure& law);

/// Polygonal with `vertices` vertices at random interior breakpoints.
PolygonalPath polygonal(Engine& rng, const SpacePtr& space, std::size_t vertices);

/// Piecewise-affine path whose total-variation Lipschitz constant is at most
/// `max_lipschitz`; returns the path and that constant.
std::pair<PolygonalPath, Rational> lipschitz_polygonal(Engine& rng, const SpacePtr& space,
                                                       std::size_t pieces, const Rational& max_lipschitz);

}  // namespace pathlift::random
