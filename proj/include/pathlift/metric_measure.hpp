#pragma once

#include "pathlift/rational.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pathlift {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// A finite metric space with rational distances. Validated on construction
/// (symmetry, zero diagonal, positivity off the diagonal, triangle inequality).
class FiniteMetricSpace {
 public:
  static std::shared_ptr<const FiniteMetricSpace> create(std::vector<std::string> points,
                                                         RationalMatrix dist);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const RationalMatrix& dist() const { return dist_; }
  const Rational& dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  std::size_t index_of(const std::string& point) const;

  /// Distinct pairwise distances, sorted ascending, excluding zero.
  const std::vector<Rational>& thresholds() const { return thresholds_; }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.points_ == b.points_ && a.dist_ == b.dist_;
  }

 private:
  FiniteMetricSpace(std::vector<std::string> points, RationalMatrix dist);

  std::vector<std::string> points_;
  RationalMatrix dist_;
  std::vector<Rational> thresholds_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

/// Probability measure on a finite metric space: nonnegative weights summing
/// to one, indexed by point.
class Measure {
 public:
  Measure(SpacePtr space, std::vector<Rational> weights);

  static Measure dirac(SpacePtr space, std::size_t point);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }

  friend bool operator==(const Measure& a, const Measure& b) {
    return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> weights_;
};

/// Joint probability mass on space × space with recorded marginals.
class CouplingMatrix {
 public:
  CouplingMatrix(SpacePtr space, RationalMatrix mass);

  const SpacePtr& space() const { return space_; }
  const RationalMatrix& mass() const { return mass_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return mass_[i][j]; }

  std::vector<Rational> row_marginal() const;
  std::vector<Rational> column_marginal() const;

 private:
  SpacePtr space_;
  RationalMatrix mass_;
};

/// (1 − t)·mu + t·nu.
Measure mixture(const Measure& mu, const Measure& nu, const Rational& t);

/// Total variation distance, max over subsets A of |mu(A) − nu(A)|.
Rational total_variation(const Measure& mu, const Measure& nu);

/// inf{ε > 0 : π{(x,y) : d(x,y) ≥ ε} ≤ ε}, exact.
Rational kyfan_functional(const CouplingMatrix& coupling);

struct ProkhorovResult {
  Rational distance;
  CouplingMatrix coupling;
};

/// Prokhorov distance computed as the minimum Ky Fan value over couplings,
/// together with a coupling that attains it.
ProkhorovResult prokhorov_coupling(const Measure& mu, const Measure& nu);

/// Prokhorov distance from its definition over closed sets,
/// inf{ε : mu(A) ≤ nu(A^ε) + ε for all A ⊆ S}, with A^ε = {x : d(x, A) < ε}.
/// Enumerates all 2^m subsets, so m is capped.
Rational prokhorov_subsets(const Measure& mu, const Measure& nu);

inline constexpr std::size_t kSubsetOracleMaxPoints = 16;

}  // namespace pathlift
