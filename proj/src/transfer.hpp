#pragma once

#include "pathlift/omega_sets.hpp"

#include <vector>

namespace pathlift::detail {

using CellGrid = std::vector<std::vector<omega::IntervalSet>>;

/// Blocks of the variable that reads a_i on cell E_ij = {X = a_i, Y = a_j},
/// except on moved[i][j] ⊆ E_ij (i != j), where it already reads a_j:
///   block_i = E_ii ∪ ⋃_{k≠i} moved[k][i] ∪ ⋃_{j≠i} (E_ij \ moved[i][j]).
inline std::vector<omega::IntervalSet> transfer_blocks(const CellGrid& cells, const CellGrid& moved) {
  const std::size_t m = cells.size();
  std::vector<omega::IntervalSet> blocks(m);
  std::vector<omega::IntervalSet> parts;
  for (std::size_t i = 0; i < m; ++i) {
    parts.clear();
    parts.push_back(cells[i][i]);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      if (!moved[k][i].empty()) parts.push_back(moved[k][i]);
      if (!cells[i][k].empty()) parts.push_back(omega::difference(cells[i][k], moved[i][k]));
    }
    blocks[i] = omega::unite_all(parts);
  }
  return blocks;
}

}  // namespace pathlift::detail
