#pragma once

#include "pathlift/simple_rv.hpp"

#include <vector>

// Brute-force reference computations used only to check the main code paths
// (self test, unit and acceptance suites). They share no code with the
// functions they check beyond the basic set algebra.

namespace pathlift::oracle {

/// Ky Fan distance by scanning candidate values c and testing
/// P(d(X,Y) > c) <= c on the set ⋃_{d(a_i,a_j) > c} (A_i ∩ B_j) directly.
Rational kyfan_scan(const SimpleRandomVariable& x, const SimpleRandomVariable& y);

/// Same scan over the mass matrix of a coupling.
Rational kyfan_scan(const SpacePtr& space, const RationalMatrix& mass);

/// All vertices of the transportation polytope with marginals mu and nu,
/// by exact basis enumeration. Intended for m <= 3.
std::vector<RationalMatrix> transport_vertices(const Measure& mu, const Measure& nu);

}  // namespace pathlift::oracle
