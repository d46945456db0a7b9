#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "torsorforge/crossed.hpp"

namespace torsorforge {

/// Orbit partition of the crossed morphisms under the coboundary action.
/// Cocycles are sorted lexicographically, orbits are ordered by their
/// smallest member, and each orbit's representative is that member.
struct ClassificationResult {
  std::vector<CrossedValues> cocycles;
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> orbit_of;  ///< cocycle index -> orbit index

  std::size_t class_count() const noexcept { return orbits.size(); }

  std::optional<std::size_t> index_of(const CrossedValues& v) const {
    auto it = std::lower_bound(cocycles.begin(), cocycles.end(), v);
    if (it == cocycles.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - cocycles.begin());
  }

  /// Orbit containing `v`, or nothing if `v` is not a listed cocycle.
  std::optional<std::size_t> class_of(const CrossedValues& v) const {
    auto i = index_of(v);
    if (!i) return std::nullopt;
    return orbit_of[*i];
  }

  const CrossedValues& representative(std::size_t orbit) const { return cocycles[representatives[orbit]]; }
};

namespace detail {

/// Seed-and-saturate orbit computation. `act(gen, values)` applies one
/// generator of the acting group; saturating under generators suffices
/// because the acting group is finite.
template <typename Act>
ClassificationResult saturate_orbits(std::vector<CrossedValues> cocycles, std::size_t gen_count, Act&& act) {
  ClassificationResult r;
  r.cocycles = std::move(cocycles);
  const std::size_t none = static_cast<std::size_t>(-1);
  r.orbit_of.assign(r.cocycles.size(), none);
  for (std::size_t seed = 0; seed < r.cocycles.size(); ++seed) {
    if (r.orbit_of[seed] != none) continue;
    const std::size_t id = r.orbits.size();
    std::vector<std::size_t> members{seed};
    r.orbit_of[seed] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t gen = 0; gen < gen_count; ++gen) {
        CrossedValues next = act(gen, r.cocycles[members[head]]);
        auto j = r.index_of(next);
        require_invariant(j.has_value(), "coboundary action left the set of crossed morphisms");
        if (r.orbit_of[*j] == none) {
          r.orbit_of[*j] = id;
          members.push_back(*j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    r.representatives.push_back(members.front());
    r.orbits.push_back(std::move(members));
  }
  return r;
}

}  // namespace detail

/// Orbits of the coboundary action on crossed morphisms into `c`.
inline ClassificationResult h1_classes(const PiGroup& c, const SearchOptions& options = {}) {
  const std::vector<Elem> gens = generating_set(c.m());
  return detail::saturate_orbits(enumerate_crossed(c, options), gens.size(),
                                 [&](std::size_t i, const CrossedValues& v) { return coboundary_act(c, gens[i], v); });
}

/// Coverings with fibre Gamma: morphisms pi -> Aut(Gamma) up to conjugation.
inline ClassificationResult classify_group_coverings(const Presentation& pi, const GroupPtr& gamma,
                                                     const SearchOptions& options = {}) {
  const AutomorphismGroup aut = enumerate_automorphisms(gamma, options);
  return h1_classes(PiGroup::trivial(pi, aut.as_group_ptr()), options);
}

}  // namespace torsorforge
