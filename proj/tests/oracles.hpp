#pragma once
// Slow, independent reference computations. Nothing here calls the search
// or orbit code of the library; they share only the basic group types.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "torsorforge/finite_group.hpp"
#include "torsorforge/word.hpp"

namespace oracle {

using torsorforge::Elem;
using torsorforge::FiniteGroup;
using torsorforge::Letter;
using torsorforge::Word;

inline bool group_axioms_hold(const FiniteGroup& g) {
  const Elem n = static_cast<Elem>(g.order());
  for (Elem a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0) return false;
    for (Elem b = 0; b < n; ++b) {
      if (g.mul(a, b) >= n) return false;
      for (Elem c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
    }
  }
  return true;
}

inline bool is_hom(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elem>& f) {
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y)
      if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return false;
  return true;
}

/// All bijective homomorphisms, by scanning every permutation of the elements.
inline std::vector<std::vector<Elem>> all_isomorphisms(const FiniteGroup& a, const FiniteGroup& b) {
  std::vector<std::vector<Elem>> out;
  if (a.order() != b.order()) return out;
  std::vector<Elem> f(a.order());
  std::iota(f.begin(), f.end(), 0);
  do {
    if (is_hom(a, b, f)) out.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) { return !all_isomorphisms(a, b).empty(); }

/// Conjugacy classes by computing every g x g^-1 and grouping equal sets.
inline std::size_t conjugacy_class_count(const FiniteGroup& g) {
  std::set<std::set<Elem>> classes;
  for (Elem x = 0; x < g.order(); ++x) {
    std::set<Elem> c;
    for (Elem h = 0; h < g.order(); ++h) c.insert(g.mul(g.mul(h, x), g.inv(h)));
    classes.insert(c);
  }
  return classes.size();
}

/// |Hom(F2, G) / conj| by Burnside: (1/|G|) sum over g of |C(g)|^2.
inline std::size_t burnside_free_rank2(const FiniteGroup& g) {
  std::size_t total = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    std::size_t c = 0;
    for (Elem y = 0; y < g.order(); ++y) c += g.mul(x, y) == g.mul(y, x);
    total += c * c;
  }
  return total / g.order();
}

/// Free reduction by repeated left-to-right scans until nothing cancels.
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

inline Elem naive_eval(const FiniteGroup& g, const std::vector<Elem>& v, const Word& w) {
  Elem r = 0;
  for (Letter x : w.letters()) {
    Elem e = v[static_cast<std::size_t>(std::abs(x)) - 1];
    if (x < 0) {
      // inverse by search rather than the stored table
      for (Elem y = 0; y < g.order(); ++y)
        if (g.mul(e, y) == 0) {
          e = y;
          break;
        }
    }
    r = g.mul(r, e);
  }
  return r;
}

/// Every tuple in G^n, odometer order with the last generator fastest.
template <typename F>
void for_each_tuple(std::size_t n, std::size_t base, F&& f) {
  std::vector<Elem> v(n, 0);
  while (true) {
    f(v);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++v[k] < base) break;
      v[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

inline std::vector<std::vector<Elem>> hom_grid(std::size_t ngens, const std::vector<Word>& relators,
                                               const FiniteGroup& g) {
  std::vector<std::vector<Elem>> out;
  for_each_tuple(ngens, g.order(), [&](const std::vector<Elem>& v) {
    for (const Word& r : relators)
      if (naive_eval(g, v, r) != 0) return;
    out.push_back(v);
  });
  return out;
}

/// Left action data for crossed-morphism oracles: act[i][m] is generator i
/// applied to m.
using Action = std::vector<std::vector<Elem>>;

inline std::vector<Elem> invert_perm(const std::vector<Elem>& p) {
  std::vector<Elem> q(p.size());
  for (Elem i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

/// Crossed extension computed left to right with the accumulated action:
/// rho(u x) = rho(u) (u . rho(x)), rho(x^-1) from rho(x x^-1) = 1.
inline Elem naive_crossed_eval(const FiniteGroup& m, const Action& act, const std::vector<Elem>& v, const Word& w) {
  std::vector<Elem> acc(m.order());
  std::iota(acc.begin(), acc.end(), 0);
  Elem r = 0;
  for (Letter x : w.letters()) {
    const std::size_t i = static_cast<std::size_t>(std::abs(x)) - 1;
    std::vector<Elem> a = x > 0 ? act[i] : invert_perm(act[i]);
    // find rho(x) for an inverse letter: the unique y with v_i (x_i . y) = 1
    Elem val = v[i];
    if (x < 0) {
      for (Elem y = 0; y < m.order(); ++y)
        if (m.mul(v[i], act[i][y]) == 0) {
          val = y;
          break;
        }
    }
    r = m.mul(r, acc[val]);
    std::vector<Elem> next(m.order());
    for (Elem e = 0; e < m.order(); ++e) next[e] = acc[a[e]];
    acc = next;
  }
  return r;
}

inline std::vector<std::vector<Elem>> crossed_grid(std::size_t ngens, const std::vector<Word>& relators,
                                                   const FiniteGroup& m, const Action& act) {
  std::vector<std::vector<Elem>> out;
  for_each_tuple(ngens, m.order(), [&](const std::vector<Elem>& v) {
    for (const Word& r : relators)
      if (naive_crossed_eval(m, act, v, r) != 0) return;
    out.push_back(v);
  });
  return out;
}

/// Number of orbits when every element of M (not just generators) acts by
/// the twisted conjugation m rho(g) (g . m)^-1.
inline std::size_t crossed_orbit_count(const std::vector<std::vector<Elem>>& cocycles, const FiniteGroup& m,
                                       const Action& act) {
  std::set<std::set<std::vector<Elem>>> orbits;
  for (const auto& rho : cocycles) {
    std::set<std::vector<Elem>> orbit;
    for (Elem g = 0; g < m.order(); ++g) {
      std::vector<Elem> out(rho.size());
      for (std::size_t i = 0; i < rho.size(); ++i) out[i] = m.mul(m.mul(g, rho[i]), m.inv(act[i][g]));
      orbit.insert(out);
    }
    orbits.insert(orbit);
  }
  return orbits.size();
}

/// Orbit partition of `cocycles` as sets of tuples (for matching partitions).
inline std::set<std::set<std::vector<Elem>>> crossed_orbits(const std::vector<std::vector<Elem>>& cocycles,
                                                            const FiniteGroup& m, const Action& act) {
  std::set<std::set<std::vector<Elem>>> orbits;
  for (const auto& rho : cocycles) {
    std::set<std::vector<Elem>> orbit;
    for (Elem g = 0; g < m.order(); ++g) {
      std::vector<Elem> out(rho.size());
      for (std::size_t i = 0; i < rho.size(); ++i) out[i] = m.mul(m.mul(g, rho[i]), m.inv(act[i][g]));
      orbit.insert(out);
    }
    orbits.insert(orbit);
  }
  return orbits;
}

/// Random freely reduced or unreduced word over `ngens` generators.
inline Word random_word(std::mt19937& rng, std::size_t ngens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(ngens));
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> w(len(rng));
  for (auto& x : w) x = sign(rng) ? gen(rng) : -gen(rng);
  return Word(std::span<const Letter>(w));
}

inline std::vector<Letter> random_letters(std::mt19937& rng, std::size_t ngens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(ngens));
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> w(len(rng));
  for (auto& x : w) x = sign(rng) ? gen(rng) : -gen(rng);
  return w;
}

}  // namespace oracle

namespace oracle {

/// Every u in Gamma^V tried against h_ij = u_i g_ij kappa_ij(u_j^-1), with
/// the twist given as one table per overlap (empty for untwisted).
inline bool gauge_equivalent(const FiniteGroup& g, std::size_t patches,
                             const std::vector<std::pair<std::size_t, std::size_t>>& overlaps,
                             const std::vector<std::vector<Elem>>& twist, const std::vector<Elem>& a,
                             const std::vector<Elem>& b) {
  bool found = false;
  for_each_tuple(patches, g.order(), [&](const std::vector<Elem>& u) {
    if (found) return;
    for (std::size_t e = 0; e < overlaps.size(); ++e) {
      const auto [i, j] = overlaps[e];
      const Elem uj_inv = g.inv(u[j]);
      const Elem k = twist.empty() ? uj_inv : twist[e][uj_inv];
      if (g.mul(g.mul(u[i], a[e]), k) != b[e]) return;
    }
    found = true;
  });
  return found;
}

/// Number of gauge classes among `cocycles`, by pairwise brute-force tests.
inline std::size_t gauge_class_count(const FiniteGroup& g, std::size_t patches,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& overlaps,
                                     const std::vector<std::vector<Elem>>& twist,
                                     const std::vector<std::vector<Elem>>& cocycles) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    bool fresh = true;
    for (std::size_t r : reps)
      if (gauge_equivalent(g, patches, overlaps, twist, cocycles[r], cocycles[i])) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(i);
  }
  return reps.size();
}

}  // namespace oracle

namespace oracle {

/// Every a in Gamma^V tested against a_head P_e(v) = Q_e(a_tail v) for all
/// points v; transports are passed in as callables.
template <typename PT, typename QT>
std::vector<std::vector<Elem>> torsor_maps(const FiniteGroup& g, std::size_t vertices,
                                           const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                           PT&& p_transport, QT&& q_transport) {
  std::vector<std::vector<Elem>> out;
  for_each_tuple(vertices, g.order(), [&](const std::vector<Elem>& a) {
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (Elem v = 0; v < g.order(); ++v)
        if (g.mul(a[edges[e].second], p_transport(e, v)) != q_transport(e, g.mul(a[edges[e].first], v))) return;
    out.push_back(a);
  });
  return out;
}

/// Product of voltages along an edge path (inverse on backward steps).
template <typename Steps>
Elem voltage_product(const FiniteGroup& g, const std::vector<Elem>& voltage, const Steps& path) {
  Elem r = 0;
  for (const auto& s : path) r = g.mul(r, s.forward ? voltage[s.edge] : g.inv(voltage[s.edge]));
  return r;
}

}  // namespace oracle
