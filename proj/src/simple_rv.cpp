#include "pathlift/simple_rv.hpp"

#include "pathlift/errors.hpp"

namespace pathlift {

SimpleRandomVariable::SimpleRandomVariable(SpacePtr space, std::vector<omega::IntervalSet> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  if (!space_) throw DomainError("random variable without a space");
  if (blocks_.size() != space_->size()) {
    throw DomainError("random variable has " + std::to_string(blocks_.size()) +
                      " blocks for " + std::to_string(space_->size()) + " points");
  }
  Rational total = 0;
  for (const auto& b : blocks_) total += omega::measure(b);
  // Blocks cover [0,1) and are disjoint iff their union is [0,1) and the
  // measures add up to one.
  if (total != 1 || omega::unite_all(blocks_) != omega::IntervalSet::full()) {
    throw DomainError("blocks do not partition [0,1)");
  }
}

SimpleRandomVariable SimpleRandomVariable::constant(SpacePtr space, std::size_t point) {
  std::vector<omega::IntervalSet> blocks(space->size());
  blocks.at(point) = omega::IntervalSet::full();
  return SimpleRandomVariable(std::move(space), std::move(blocks));
}

Measure law(const SimpleRandomVariable& x) {
  std::vector<Rational> w;
  w.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) w.push_back(omega::measure(b));
  return Measure(x.space(), std::move(w));
}

RationalMatrix joint_mass(const SimpleRandomVariable& x, const SimpleRandomVariable& y) {
  require_same_space(x.space(), y.space(), "joint_mass");
  const std::size_t m = x.blocks().size();
  RationalMatrix out(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    if (x.block(i).empty()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      out[i][j] = omega::measure(omega::intersect(x.block(i), y.block(j)));
    }
  }
  return out;
}

Rational kyfan_rho(const SimpleRandomVariable& x, const SimpleRandomVariable& y) {
  return kyfan_functional(CouplingMatrix(x.space(), joint_mass(x, y)));
}

SimpleRandomVariable realize_coupling(const SimpleRandomVariable& x, const CouplingMatrix& coupling) {
  require_same_space(x.space(), coupling.space(), "realize_coupling");
  const std::size_t m = x.blocks().size();
  const auto rows = coupling.row_marginal();
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i] != omega::measure(x.block(i))) {
      throw DomainError("coupling row marginal " + to_string(rows[i]) + " at point " +
                        x.space()->points()[i] + " does not match P(X = " +
                        x.space()->points()[i] + ") = " + to_string(omega::measure(x.block(i))));
    }
  }
  std::vector<std::vector<omega::IntervalSet>> pieces(m);
  for (std::size_t i = 0; i < m; ++i) pieces[i] = omega::split(x.block(i), coupling.mass()[i]);
  std::vector<omega::IntervalSet> blocks(m);
  std::vector<omega::IntervalSet> column(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) column[i] = std::move(pieces[i][j]);
    blocks[j] = omega::unite_all(column);
  }
  return SimpleRandomVariable(x.space(), std::move(blocks));
}

SimpleRandomVariable match_to_law(const SimpleRandomVariable& x, const Measure& target) {
  require_same_space(x.space(), target.space(), "match_to_law");
  return realize_coupling(x, prokhorov_coupling(law(x), target).coupling);
}

SimpleRandomVariable canonical_rv(const Measure& law) {
  return SimpleRandomVariable(law.space(), omega::split(omega::IntervalSet::full(), law.weights()));
}

}  // namespace pathlift
