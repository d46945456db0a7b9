#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsorforge/h1.hpp"

namespace torsorforge {

/// Nerve of a finite cover: patches 0..V-1, double overlaps stored once as
/// i < j, triple overlaps as i < j < k. Every patch and overlap is taken to
/// be connected, so locally constant data is one value per overlap.
struct Nerve {
  std::size_t patches = 0;
  std::vector<std::pair<std::size_t, std::size_t>> overlaps;
  std::vector<std::array<std::size_t, 3>> triples;

  std::size_t overlap_count() const noexcept { return overlaps.size(); }

  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(overlaps.begin(), overlaps.end(), std::make_pair(i, j));
    if (it == overlaps.end() || *it != std::make_pair(i, j)) return std::nullopt;
    return static_cast<std::size_t>(it - overlaps.begin());
  }

  std::size_t edge(std::size_t i, std::size_t j) const {
    auto e = edge_index(i, j);
    require(e.has_value(), "patches " + std::to_string(i) + " and " + std::to_string(j) + " do not overlap");
    return *e;
  }

  friend bool operator==(const Nerve&, const Nerve&) = default;
};

/// Normalizes orientation and order, then checks symmetry, triple closure
/// and connectivity of the 1-skeleton.
inline Nerve make_nerve(std::size_t patches, std::vector<std::pair<std::size_t, std::size_t>> overlaps,
                        std::vector<std::array<std::size_t, 3>> triples = {}) {
  require(patches >= 1, "a nerve needs at least one patch");
  Nerve n;
  n.patches = patches;
  for (auto [i, j] : overlaps) {
    require(i < patches && j < patches, "overlap names a missing patch");
    require(i != j, "a patch does not overlap itself in the nerve");
    n.overlaps.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(n.overlaps.begin(), n.overlaps.end());
  n.overlaps.erase(std::unique(n.overlaps.begin(), n.overlaps.end()), n.overlaps.end());
  for (auto t : triples) {
    std::sort(t.begin(), t.end());
    require(t[0] != t[1] && t[1] != t[2], "triple overlap needs three distinct patches");
    require(n.edge_index(t[0], t[1]) && n.edge_index(t[1], t[2]) && n.edge_index(t[0], t[2]),
            "triple overlap without all three double overlaps");
    n.triples.push_back(t);
  }
  std::sort(n.triples.begin(), n.triples.end());
  n.triples.erase(std::unique(n.triples.begin(), n.triples.end()), n.triples.end());
  std::vector<std::size_t> root(patches);
  for (std::size_t i = 0; i < patches; ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (auto [i, j] : n.overlaps) root[find(i)] = find(j);
  for (std::size_t i = 0; i < patches; ++i) require(find(i) == find(0), "nerve 1-skeleton is not connected");
  return n;
}

/// Patches 0..n-1 in a ring, no triples (n >= 3).
inline Nerve circle_nerve(std::size_t n = 3) {
  std::vector<std::pair<std::size_t, std::size_t>> ov;
  for (std::size_t i = 0; i < n; ++i) ov.emplace_back(i, (i + 1) % n);
  return make_nerve(n, ov);
}

inline Nerve path_nerve(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> ov;
  for (std::size_t i = 0; i + 1 < n; ++i) ov.emplace_back(i, i + 1);
  return make_nerve(n, ov);
}

inline Nerve star_nerve(std::size_t leaves) {
  std::vector<std::pair<std::size_t, std::size_t>> ov;
  for (std::size_t i = 1; i <= leaves; ++i) ov.emplace_back(0, i);
  return make_nerve(leaves + 1, ov);
}

inline Nerve full_triangle_nerve() { return make_nerve(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}}); }

/// Two triangles glued along the overlap 1-2, both triples present.
inline Nerve two_triangles_nerve(bool with_triples = true) {
  std::vector<std::array<std::size_t, 3>> tr;
  if (with_triples) tr = {{0, 1, 2}, {1, 2, 3}};
  return make_nerve(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}, tr);
}

/// Human-readable list of failed conditions; empty means valid.
struct CocycleReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Aut(Gamma)-valued rule kappa_ik = kappa_ij kappa_jk on every triple.
inline CocycleReport check_twist(const Nerve& n, const FiniteGroup& gamma, const std::vector<Permutation>& twist) {
  CocycleReport r;
  if (twist.empty()) return r;
  if (twist.size() != n.overlap_count()) {
    r.violations.push_back("twist needs one automorphism per overlap");
    return r;
  }
  for (std::size_t e = 0; e < twist.size(); ++e)
    if (!is_automorphism(gamma, twist[e].images()))
      r.violations.push_back("twist on overlap " + std::to_string(n.overlaps[e].first) + "-" +
                             std::to_string(n.overlaps[e].second) + " is not an automorphism");
  if (!r.ok()) return r;
  for (const auto& t : n.triples)
    if (twist[n.edge(t[0], t[2])] != twist[n.edge(t[0], t[1])] * twist[n.edge(t[1], t[2])])
      r.violations.push_back("twist cocycle rule fails on triple {" + std::to_string(t[0]) + "," +
                             std::to_string(t[1]) + "," + std::to_string(t[2]) + "}");
  return r;
}

/// Coefficients for Cech cohomology over a nerve: Gamma, optionally twisted
/// by locally constant automorphisms kappa_ij (empty twist = untwisted).
class CechCoefficients {
 public:
  CechCoefficients(Nerve nerve, GroupPtr gamma, std::vector<Permutation> twist = {})
      : nerve_(std::move(nerve)), gamma_(std::move(gamma)), twist_(std::move(twist)) {
    const CocycleReport r = check_twist(nerve_, *gamma_, twist_);
    require_invariant(r.ok(), r.ok() ? "" : r.violations.front());
    for (const auto& k : twist_) twist_inv_.push_back(k.inverse());
  }

  const Nerve& nerve() const noexcept { return nerve_; }
  const FiniteGroup& gamma() const noexcept { return *gamma_; }
  const GroupPtr& gamma_ptr() const noexcept { return gamma_; }
  const std::vector<Permutation>& twist() const noexcept { return twist_; }
  bool twisted() const noexcept { return !twist_.empty(); }

  /// kappa_ij for an ordered pair of overlapping patches.
  Permutation kappa(std::size_t i, std::size_t j) const {
    if (twist_.empty()) return Permutation::identity(gamma_->order());
    const std::size_t e = nerve_.edge(i, j);
    return i < j ? twist_[e] : twist_inv_[e];
  }

  Elem kappa_apply(std::size_t i, std::size_t j, Elem x) const {
    if (twist_.empty()) return x;
    const std::size_t e = nerve_.edge(i, j);
    return i < j ? twist_[e](x) : twist_inv_[e](x);
  }

  /// g_ij for an ordered pair, using g_ji = kappa_ji(g_ij^-1) for i < j.
  Elem value(std::span<const Elem> values, std::size_t i, std::size_t j) const {
    const Elem stored = values[nerve_.edge(i, j)];
    return i < j ? stored : kappa_apply(i, j, gamma_->inv(stored));
  }

 private:
  Nerve nerve_;
  GroupPtr gamma_;
  std::vector<Permutation> twist_;
  std::vector<Permutation> twist_inv_;
};

using CechValues = std::vector<Elem>;

inline CocycleReport check_cocycle(const CechCoefficients& c, std::span<const Elem> values) {
  CocycleReport r;
  const Nerve& n = c.nerve();
  if (values.size() != n.overlap_count()) {
    r.violations.push_back("cocycle needs one value per overlap");
    return r;
  }
  for (std::size_t e = 0; e < values.size(); ++e)
    if (values[e] >= c.gamma().order())
      r.violations.push_back("value on overlap " + std::to_string(n.overlaps[e].first) + "-" +
                             std::to_string(n.overlaps[e].second) + " is not a group element");
  if (!r.ok()) return r;
  const CocycleReport tw = check_twist(n, c.gamma(), c.twist());
  r.violations.insert(r.violations.end(), tw.violations.begin(), tw.violations.end());
  const FiniteGroup& g = c.gamma();
  for (const auto& t : n.triples) {
    const auto [i, j, k] = t;
    if (g.mul(c.value(values, i, j), c.kappa_apply(i, j, c.value(values, j, k))) != c.value(values, i, k))
      r.violations.push_back("cocycle triple check failed on {" + std::to_string(i) + "," + std::to_string(j) +
                             "," + std::to_string(k) + "}");
  }
  return r;
}

/// h_ij = u_i g_ij kappa_ij(u_j^-1).
inline CechValues cech_coboundary(const CechCoefficients& c, std::span<const Elem> u, std::span<const Elem> values) {
  const FiniteGroup& g = c.gamma();
  CechValues out(values.size());
  for (std::size_t e = 0; e < values.size(); ++e) {
    const auto [i, j] = c.nerve().overlaps[e];
    out[e] = g.mul(g.mul(u[i], values[e]), c.kappa_apply(i, j, g.inv(u[j])));
  }
  return out;
}

/// A witness u with c' = u . c, or nothing. u_root runs over all of Gamma
/// and determines the rest along a spanning tree; the remaining overlaps
/// are then checked.
inline std::optional<std::vector<Elem>> coboundary_equivalent(const CechCoefficients& c, std::span<const Elem> a,
                                                              std::span<const Elem> b,
                                                              const SearchOptions& options = {}) {
  const Nerve& n = c.nerve();
  const FiniteGroup& g = c.gamma();
  check_budget(g.order(), options, "coboundary search");
  // breadth-first tree from patch 0
  std::vector<std::size_t> order{0}, parent(n.patches, 0);
  std::vector<bool> seen(n.patches, false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (auto [i, j] : n.overlaps) {
      const std::size_t v = order[h];
      const std::size_t w = i == v ? j : (j == v ? i : n.patches);
      if (w == n.patches || seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      order.push_back(w);
    }
  for (Elem root = 0; root < g.order(); ++root) {
    std::vector<Elem> u(n.patches, 0);
    u[0] = root;
    for (std::size_t k = 1; k < order.size(); ++k) {
      const std::size_t j = order[k], i = parent[j];
      // b_ij = u_i a_ij kappa_ij(u_j^-1) read along the ordered pair (i, j)
      const Elem inner = g.mul(g.mul(g.inv(c.value(b, i, j)), u[i]), c.value(a, i, j));
      u[j] = c.kappa_apply(j, i, inner);
    }
    if (cech_coboundary(c, u, a) == CechValues(b.begin(), b.end())) return u;
  }
  return std::nullopt;
}

/// All cocycles, by pruned search with one relator word per triple.
inline std::vector<CechValues> enumerate_cech_cocycles(const CechCoefficients& c, const SearchOptions& options = {}) {
  const Nerve& n = c.nerve();
  const FiniteGroup& g = c.gamma();
  std::vector<Word> relators;
  for (const auto& t : n.triples) {
    const auto ij = static_cast<Letter>(n.edge(t[0], t[1]) + 1), jk = static_cast<Letter>(n.edge(t[1], t[2]) + 1),
               ik = static_cast<Letter>(n.edge(t[0], t[2]) + 1);
    relators.push_back(Word{ij, jk, -ik});
  }
  std::vector<Elem> all(g.order());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  return detail::relator_search(
      std::vector<std::vector<Elem>>(n.overlap_count(), all), relators, options, "Cech cocycle enumeration",
      [&](std::span<const Elem> v, const Word& r) {
        const auto& l = r.letters();
        const std::size_t ij = static_cast<std::size_t>(l[0]) - 1, jk = static_cast<std::size_t>(l[1]) - 1,
                          ik = static_cast<std::size_t>(-l[2]) - 1;
        return g.mul(v[ij], c.kappa_apply(n.overlaps[ij].first, n.overlaps[ij].second, v[jk])) == v[ik];
      });
}

/// Orbits of all cocycles under patchwise gauge changes.
inline ClassificationResult cech_h1(const CechCoefficients& c, const SearchOptions& options = {}) {
  const std::vector<Elem> gens = generating_set(c.gamma());
  const std::size_t patches = c.nerve().patches;
  return detail::saturate_orbits(enumerate_cech_cocycles(c, options), patches * gens.size(),
                                 [&](std::size_t k, const CechValues& v) {
                                   std::vector<Elem> u(patches, 0);
                                   u[k / gens.size()] = gens[k % gens.size()];
                                   return cech_coboundary(c, u, v);
                                 });
}

/// Edge-path group of the nerve: free on the overlaps outside a
/// breadth-first spanning tree, one relator per triple i < j < k reading
/// w(ij) w(jk) w(ik)^-1 (skipped if it collapses to the empty word).
struct NervePi1 {
  Presentation presentation;
  std::vector<int> edge_generator;           ///< per overlap, generator or -1 on tree overlaps
  std::vector<std::size_t> generator_edge;
  std::vector<std::vector<std::size_t>> tree_path;  ///< per patch, patches from 0 to it

  /// Patch sequence of the based loop for generator `gen`.
  std::vector<std::size_t> generator_loop(std::size_t gen, const Nerve& n) const {
    const auto [i, j] = n.overlaps[generator_edge[gen]];
    std::vector<std::size_t> loop = tree_path[i];
    loop.insert(loop.end(), tree_path[j].rbegin(), tree_path[j].rend());
    return loop;
  }
};

inline NervePi1 nerve_pi1(const Nerve& n) {
  NervePi1 out;
  out.tree_path.assign(n.patches, {});
  out.tree_path[0] = {0};
  std::vector<bool> in_tree(n.overlap_count(), false), seen(n.patches, false);
  seen[0] = true;
  std::vector<std::size_t> order{0};
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::size_t e = 0; e < n.overlap_count(); ++e) {
      const auto [i, j] = n.overlaps[e];
      const std::size_t v = order[h];
      const std::size_t w = i == v ? j : (j == v ? i : n.patches);
      if (w == n.patches || seen[w]) continue;
      seen[w] = true;
      in_tree[e] = true;
      out.tree_path[w] = out.tree_path[v];
      out.tree_path[w].push_back(w);
      order.push_back(w);
    }
  require(order.size() == n.patches, "nerve 1-skeleton is not connected");
  out.edge_generator.assign(n.overlap_count(), -1);
  std::vector<std::string> names;
  for (std::size_t e = 0; e < n.overlap_count(); ++e) {
    if (in_tree[e]) continue;
    out.edge_generator[e] = static_cast<int>(out.generator_edge.size());
    out.generator_edge.push_back(e);
    names.push_back("u" + std::to_string(n.overlaps[e].first) + std::to_string(n.overlaps[e].second));
  }
  auto w = [&](std::size_t i, std::size_t j) {
    const int gen = out.edge_generator[n.edge(i, j)];
    return gen < 0 ? Word{} : Word::generator(static_cast<std::size_t>(gen));
  };
  std::vector<Word> relators;
  for (const auto& t : n.triples) {
    Word r = w(t[0], t[1]) * w(t[1], t[2]) * w(t[0], t[2]).inverse();
    if (!r.empty()) relators.push_back(std::move(r));
  }
  out.presentation = Presentation(out.generator_edge.size(), std::move(relators), std::move(names));
  return out;
}

/// Holonomy and twist along a patch sequence:
/// hol(p q) = hol(p) K(p)(hol(q)), K(p q) = K(p) K(q).
inline std::pair<Elem, Permutation> cech_transport(const CechCoefficients& c, std::span<const Elem> values,
                                                   const std::vector<std::size_t>& path) {
  const FiniteGroup& g = c.gamma();
  Elem hol = g.identity();
  Permutation k = Permutation::identity(g.order());
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const std::size_t i = path[s], j = path[s + 1];
    hol = g.mul(hol, k(c.value(values, i, j)));
    k = k * c.kappa(i, j);
  }
  return {hol, k};
}

/// The induced action of the edge-path group on Gamma: each generator acts
/// by the twist accumulated around its loop.
inline PiGroup cech_pi_group(const CechCoefficients& c, const NervePi1& pi) {
  std::vector<Permutation> act;
  const std::vector<Elem> none(c.nerve().overlap_count(), 0);
  for (std::size_t gen = 0; gen < pi.generator_edge.size(); ++gen)
    act.push_back(cech_transport(c, none, pi.generator_loop(gen, c.nerve())).second);
  return PiGroup(pi.presentation, c.gamma_ptr(), std::move(act));
}

/// Edge holonomy of a cocycle around each generator loop.
inline CrossedValues cech_to_crossed(const CechCoefficients& c, const NervePi1& pi, std::span<const Elem> values) {
  CrossedValues out;
  for (std::size_t gen = 0; gen < pi.generator_edge.size(); ++gen)
    out.push_back(cech_transport(c, values, pi.generator_loop(gen, c.nerve())).first);
  return out;
}

struct CechComparison {
  ClassificationResult cech;
  ClassificationResult group;
  std::vector<std::size_t> class_map;  ///< Cech class -> group class, via edge holonomy
  bool matched = false;
  std::string failure;
};

/// Classifies both ways and checks that edge holonomy induces a bijection of
/// classes. A mismatch is reported, never reconciled.
inline CechComparison compare_cech_group_cohomology(const CechCoefficients& c, const SearchOptions& options = {}) {
  CechComparison out;
  out.cech = cech_h1(c, options);
  const NervePi1 pi = nerve_pi1(c.nerve());
  const PiGroup coeffs = cech_pi_group(c, pi);
  out.group = h1_classes(coeffs, options);
  const std::size_t none = static_cast<std::size_t>(-1);
  out.class_map.assign(out.cech.class_count(), none);
  for (std::size_t i = 0; i < out.cech.cocycles.size(); ++i) {
    const CrossedValues rho = cech_to_crossed(c, pi, out.cech.cocycles[i]);
    const auto cls = out.group.class_of(rho);
    if (!cls) {
      out.failure = "edge holonomy of a cocycle is not a crossed morphism";
      return out;
    }
    std::size_t& slot = out.class_map[out.cech.orbit_of[i]];
    if (slot != none && slot != *cls) {
      out.failure = "cohomologous cocycles have holonomies in different classes";
      return out;
    }
    slot = *cls;
  }
  std::vector<bool> hit(out.group.class_count(), false);
  for (std::size_t m : out.class_map) {
    if (m == none || hit[m]) {
      out.failure = "holonomy does not induce an injective map of classes";
      return out;
    }
    hit[m] = true;
  }
  if (out.cech.class_count() != out.group.class_count()) {
    out.failure = "class counts differ";
    return out;
  }
  out.matched = true;
  return out;
}

}  // namespace torsorforge
