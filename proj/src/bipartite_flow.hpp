#pragma once

#include "pathlift/metric_measure.hpp"

#include <vector>

namespace pathlift::detail {

/// Maximum flow from supplies to demands over a growing set of allowed
/// bipartite edges, exact over the rationals (shortest augmenting paths).
///
/// Edges are only ever added, so the current flow stays feasible and each
/// call to augment() continues from it.
class BipartiteFlow {
 public:
  BipartiteFlow(std::vector<Rational> supply, std::vector<Rational> demand);

  void allow(std::size_t row, std::size_t col);
  /// Saturates the network over the currently allowed edges; returns the total flow.
  const Rational& augment();

  const Rational& value() const { return value_; }
  /// Flow on each row -> column edge.
  RationalMatrix flow() const;

 private:
  std::size_t m_;
  std::size_t n_;  // rows + cols + 2
  std::vector<std::vector<Rational>> residual_;
  std::vector<std::vector<bool>> allowed_;
  Rational value_ = 0;
};

}  // namespace pathlift::detail
