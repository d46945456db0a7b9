#pragma once

#include <vector>

#include "torsorforge/h1.hpp"
#include "torsorforge/semidirect.hpp"

namespace torsorforge {

/// Data for the semidirect route: a finite quotient Q of pi (given by the
/// images of the generators) and an action phi : Q -> Aut(Gamma), one
/// automorphism per element of Q.
struct QuotientAction {
  GroupPtr quotient;
  std::vector<Elem> generator_images;
  std::vector<Permutation> phi;
};

/// The coefficient object the quotient data induces: generator i acts by
/// phi(image of i).
inline PiGroup pi_group_from_quotient(const Presentation& pi, const GroupPtr& gamma, const QuotientAction& q) {
  require(q.generator_images.size() == pi.generator_count(), "one quotient image per generator required");
  std::vector<Permutation> act;
  for (Elem x : q.generator_images) {
    require(x < q.quotient->order(), "quotient image out of range");
    act.push_back(q.phi[x]);
  }
  return PiGroup(pi, gamma, std::move(act));
}

/// Lifts rho-hat : pi -> Gamma x| Q with pr2 . rho-hat equal to the quotient
/// map, modulo conjugation by Gamma. Cocycle values are the Gamma parts, so
/// the result is directly comparable with h1_classes on the induced PiGroup.
inline ClassificationResult h1_via_semidirect(const Presentation& pi, const GroupPtr& gamma,
                                              const QuotientAction& q, const SearchOptions& options = {}) {
  require(q.generator_images.size() == pi.generator_count(), "one quotient image per generator required");
  const SemidirectProduct sd = semidirect_product(gamma, q.quotient, q.phi);
  // relators must map to the identity of Q, otherwise there are no lifts at all
  for (const Word& r : pi.relators())
    require(evaluate_hom(*q.quotient, q.generator_images, r) == q.quotient->identity(),
            "quotient data does not kill relator " + pi.format(r));
  std::vector<std::vector<Elem>> candidates(pi.generator_count());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (Elem n = 0; n < gamma->order(); ++n) candidates[i].push_back(sd.pair(n, q.generator_images[i]));
  const std::vector<Assignment> lifts = enumerate_homs_restricted(pi, sd.group, candidates, options);

  std::vector<CrossedValues> parts;
  parts.reserve(lifts.size());
  for (const Assignment& a : lifts) {
    CrossedValues v;
    for (Elem x : a.values) v.push_back(sd.normal_part(x));
    parts.push_back(std::move(v));
  }
  const std::vector<Elem> gens = generating_set(*gamma);
  const FiniteGroup& big = *sd.group;
  return detail::saturate_orbits(std::move(parts), gens.size(), [&](std::size_t i, const CrossedValues& v) {
    const Elem c = sd.pair(gens[i], 0);
    CrossedValues out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
      out[k] = sd.normal_part(big.conj(c, sd.pair(v[k], q.generator_images[k])));
    return out;
  });
}

}  // namespace torsorforge
