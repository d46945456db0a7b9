#pragma once
// Group coverings zeta = pi \ (Y x Gamma) shared by the bundle tests and the
// acceptance binary.

#include <memory>
#include <string>
#include <vector>

#include "torsorforge/torsorforge.hpp"

namespace matrix {

using namespace torsorforge;

struct ZetaCase {
  std::string name;
  std::shared_ptr<const GroupCoveringModel> zeta;
};

/// phi given on chosen deck generators.
inline std::shared_ptr<const GroupCoveringModel> make_zeta(const Graph& base, const GroupPtr& deck,
                                                            const std::vector<Elem>& voltage, const GroupPtr& gamma,
                                                            const std::vector<Elem>& deck_gens,
                                                            const std::vector<Permutation>& gen_phi) {
  auto cover = std::make_shared<const CoveringModel>(covering_from_voltages(base, deck, voltage));
  auto phi = phi_from_generators(*deck, *gamma, deck_gens, gen_phi);
  return std::make_shared<const GroupCoveringModel>(build_group_covering(cover, gamma, std::move(phi)));
}

inline std::vector<ZetaCase> zeta_cases() {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4);
  const auto s3 = symmetric_group(3);
  const auto v4 = direct_product(*z2, *z2);
  const Elem transposition = s3.element(Permutation({1, 0, 2}));
  const Elem three_cycle = s3.element(Permutation({1, 2, 0}));
  auto id = [](const GroupPtr& g) { return Permutation::identity(g->order()); };
  auto inv = [](const GroupPtr& g) { return power_map(*g, -1); };

  std::vector<ZetaCase> out;
  const Graph loop = bouquet(1);
  out.push_back({"loop/Z2/Z2/trivial", make_zeta(loop, z2, {1}, z2, {1}, {id(z2)})});
  out.push_back({"loop/Z2/Z3/inversion", make_zeta(loop, z2, {1}, z3, {1}, {inv(z3)})});
  out.push_back({"loop/Z2/Z3/trivial", make_zeta(loop, z2, {1}, z3, {1}, {id(z3)})});
  out.push_back({"loop/Z2/S3/conj", make_zeta(loop, z2, {1}, s3.group, {1},
                                              {inner_automorphism(*s3.group, transposition)})});
  out.push_back({"loop/Z4/Z4/inversion", make_zeta(loop, z4, {1}, z4, {1}, {inv(z4)})});
  out.push_back({"triangle/Z3/Z2/trivial", make_zeta(cycle_graph(3), z3, {0, 0, 1}, z2, {1}, {id(z2)})});
  out.push_back({"triangle/Z3/S3/conj", make_zeta(cycle_graph(3), z3, {1, 0, 0}, s3.group, {1},
                                                  {inner_automorphism(*s3.group, three_cycle)})});
  out.push_back({"wedge/V4/Z2/trivial", make_zeta(bouquet(2), v4, {2, 1}, z2, {2, 1}, {id(z2), id(z2)})});
  out.push_back({"wedge/V4/Z3/mixed", make_zeta(bouquet(2), v4, {2, 1}, z3, {2, 1}, {inv(z3), id(z3)})});
  // theta graph with S3 voltages; phi through the sign
  const Graph theta = theta_graph(3);
  const std::vector<Elem> sv{0, transposition, three_cycle};
  out.push_back({"theta/S3/Z3/sign", make_zeta(theta, s3.group, sv, z3, {transposition, three_cycle},
                                               {inv(z3), id(z3)})});
  out.push_back({"theta/S3/Z2/trivial", make_zeta(theta, s3.group, sv, z2, {transposition, three_cycle},
                                                  {id(z2), id(z2)})});
  return out;
}

}  // namespace matrix
