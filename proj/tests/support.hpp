#pragma once

#include <memory>
#include <vector>

#include "maxcurve/grouptab.hpp"
#include "maxcurve/pgu.hpp"

namespace maxcurve::testing {

inline grouptab::GroupTable unitary_closure(std::shared_ptr<const pgu::HermitianGeometry> G,
                                            const std::vector<pgu::Mat3>& gens,
                                            std::size_t cap = grouptab::GroupTable::kDefaultCap) {
  auto kind = std::make_shared<grouptab::UnitaryKind>(G);
  std::vector<grouptab::Key> keys;
  for (const auto& M : gens) keys.push_back(kind->make(M));
  return grouptab::GroupTable::closure(kind, std::move(keys), cap);
}

inline std::vector<pgu::Mat3> closed_elements(std::shared_ptr<const pgu::HermitianGeometry> G,
                                              const std::vector<pgu::Mat3>& gens) {
  return grouptab::unitary_elements(unitary_closure(std::move(G), gens));
}

}  // namespace maxcurve::testing
