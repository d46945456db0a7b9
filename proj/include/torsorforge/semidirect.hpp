#pragma once

#include <string>
#include <vector>

#include "torsorforge/automorphisms.hpp"
#include "torsorforge/finite_group.hpp"

namespace torsorforge {

/// N x| Q on pairs (n, q) with (n1, q1)(n2, q2) = (n1 act(q1)(n2), q1 q2).
/// The pair (n, q) has index n * |Q| + q, so a trivial action reproduces
/// `direct_product(N, Q)` element for element.
struct SemidirectProduct {
  GroupPtr normal;
  GroupPtr quotient;
  GroupPtr group;
  std::vector<Permutation> action;  ///< one automorphism of N per element of Q

  Elem pair(Elem n, Elem q) const { return static_cast<Elem>(n * quotient->order() + q); }
  Elem normal_part(Elem x) const { return static_cast<Elem>(x / quotient->order()); }
  Elem quotient_part(Elem x) const { return static_cast<Elem>(x % quotient->order()); }

  GroupMorphism projection() const {
    std::vector<Elem> image(group->order());
    for (Elem x = 0; x < image.size(); ++x) image[x] = quotient_part(x);
    return GroupMorphism(group, quotient, std::move(image));
  }
  GroupMorphism normal_inclusion() const {
    std::vector<Elem> image(normal->order());
    for (Elem n = 0; n < image.size(); ++n) image[n] = pair(n, 0);
    return GroupMorphism(normal, group, std::move(image));
  }
};

namespace detail {

inline SemidirectProduct build_semidirect(const GroupPtr& n, const GroupPtr& q,
                                          std::vector<Permutation> action) {
  const std::size_t nq = q->order();
  std::vector<std::string> labels;
  for (Elem a = 0; a < n->order(); ++a)
    for (Elem b = 0; b < nq; ++b) labels.push_back("(" + n->label(a) + "," + q->label(b) + ")");
  auto g = share(FiniteGroup::from_product(
      n->order() * nq,
      [&](Elem x, Elem y) {
        const Elem n1 = x / nq, q1 = x % nq, n2 = y / nq, q2 = y % nq;
        return static_cast<Elem>(n->mul(n1, action[q1](n2)) * nq + q->mul(q1, q2));
      },
      std::move(labels)));
  return SemidirectProduct{n, q, std::move(g), std::move(action)};
}

}  // namespace detail

/// `act` must be a morphism Q -> Aut(N).as_group().
inline SemidirectProduct semidirect_product(const GroupPtr& n, const GroupPtr& q,
                                            const AutomorphismGroup& aut_n, const GroupMorphism& act) {
  require(aut_n.base() == *n, "automorphism group does not belong to the normal factor");
  require(act.source() == *q, "action morphism has the wrong source");
  require(act.target() == aut_n.as_group(), "action morphism must land in Aut(N)");
  std::vector<Permutation> action;
  for (Elem x = 0; x < q->order(); ++x) action.push_back(aut_n[act(x)]);
  return detail::build_semidirect(n, q, std::move(action));
}

/// Variant taking the action as one automorphism of N per element of Q,
/// validated as a morphism Q -> Aut(N).
inline SemidirectProduct semidirect_product(const GroupPtr& n, const GroupPtr& q,
                                            std::vector<Permutation> action) {
  require(action.size() == q->order(), "need one automorphism per element of Q");
  for (const auto& a : action)
    require_invariant(is_automorphism(*n, a.images()), "action value is not an automorphism of N");
  for (Elem a = 0; a < q->order(); ++a)
    for (Elem b = 0; b < q->order(); ++b)
      require_invariant(action[q->mul(a, b)] == action[a] * action[b],
                        "action Q -> Aut(N) is not a morphism");
  return detail::build_semidirect(n, q, std::move(action));
}

}  // namespace torsorforge
