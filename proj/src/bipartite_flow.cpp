#include "bipartite_flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace pathlift::detail {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

// Node layout: 0 source, 1..m rows, m+1..2m columns, 2m+1 sink.
BipartiteFlow::BipartiteFlow(std::vector<Rational> supply, std::vector<Rational> demand)
    : m_(supply.size()),
      n_(2 * supply.size() + 2),
      residual_(n_, std::vector<Rational>(n_, 0)),
      allowed_(m_, std::vector<bool>(m_, false)) {
  for (std::size_t i = 0; i < m_; ++i) {
    residual_[0][1 + i] = supply[i];
    residual_[1 + m_ + i][n_ - 1] = demand[i];
  }
}

void BipartiteFlow::allow(std::size_t row, std::size_t col) {
  if (allowed_[row][col]) return;
  allowed_[row][col] = true;
  // min(supply, demand) is never binding, so it stands in for infinity.
  const Rational s = residual_[0][1 + row] + residual_[1 + row][0];
  const Rational d = residual_[1 + m_ + col][n_ - 1] + residual_[n_ - 1][1 + m_ + col];
  residual_[1 + row][1 + m_ + col] += std::min(s, d);
}

const Rational& BipartiteFlow::augment() {
  const std::size_t sink = n_ - 1;
  std::vector<std::size_t> parent(n_);
  while (true) {
    std::fill(parent.begin(), parent.end(), kNone);
    parent[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty() && parent[sink] == kNone) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n_; ++v) {
        if (parent[v] == kNone && residual_[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] == kNone) return value_;

    Rational bottleneck = residual_[parent[sink]][sink];
    for (std::size_t v = sink; v != 0; v = parent[v]) {
      bottleneck = std::min(bottleneck, residual_[parent[v]][v]);
    }
    for (std::size_t v = sink; v != 0; v = parent[v]) {
      residual_[parent[v]][v] -= bottleneck;
      residual_[v][parent[v]] += bottleneck;
    }
    value_ += bottleneck;
  }
}

RationalMatrix BipartiteFlow::flow() const {
  RationalMatrix out(m_, std::vector<Rational>(m_, 0));
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) out[i][j] = residual_[1 + m_ + j][1 + i];
  }
  return out;
}

}  // namespace pathlift::detail
