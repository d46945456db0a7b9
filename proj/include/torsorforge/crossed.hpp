#pragma once

#include <cstdlib>
#include <vector>

#include "torsorforge/homs.hpp"
#include "torsorforge/pi_group.hpp"

namespace torsorforge {

/// Values of a crossed morphism on the generators.
using CrossedValues = std::vector<Elem>;

/// Extends generator values by rho(x w) = rho(x) (x . rho(w)), with
/// rho(x^-1) = x^-1 . rho(x)^-1 for inverse letters.
inline Elem extend_crossed(const PiGroup& c, std::span<const Elem> values, const Word& w) {
  const FiniteGroup& m = c.m();
  Elem r = m.identity();
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const Letter x = *it;
    const Elem v = values[static_cast<std::size_t>(std::abs(x)) - 1];
    const Elem vx = x > 0 ? v : c.act_letter(x, m.inv(v));
    r = m.mul(vx, c.act_letter(x, r));
  }
  return r;
}

inline bool is_crossed_morphism(const PiGroup& c, std::span<const Elem> values) {
  if (values.size() != c.generator_count()) return false;
  for (Elem v : values)
    if (v >= c.m().order()) return false;
  for (const Word& r : c.pi().relators())
    if (extend_crossed(c, values, r) != c.m().identity()) return false;
  return true;
}

/// All crossed morphisms, in lexicographic order of generator values.
inline std::vector<CrossedValues> enumerate_crossed(const PiGroup& c, const SearchOptions& options = {}) {
  std::vector<Elem> all(c.m().order());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  return detail::relator_search(std::vector<std::vector<Elem>>(c.generator_count(), all), c.pi().relators(),
                                options, "crossed-morphism enumeration",
                                [&](std::span<const Elem> v, const Word& r) {
                                  return extend_crossed(c, v, r) == c.m().identity();
                                });
}

/// (m . rho)(g) = m rho(g) (g . m)^-1 on each generator g.
inline CrossedValues coboundary_act(const PiGroup& c, Elem m, std::span<const Elem> rho) {
  const FiniteGroup& g = c.m();
  CrossedValues out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    out[i] = g.mul(g.mul(m, rho[i]), g.inv(c.act_letter(static_cast<Letter>(i + 1), m)));
  return out;
}

}  // namespace torsorforge
