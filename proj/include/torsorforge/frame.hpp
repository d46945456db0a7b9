#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "torsorforge/builders.hpp"
#include "torsorforge/torsor.hpp"

namespace torsorforge {

/// A flat fibre bundle over a graph with fibre {0..n-1}: edge e carries the
/// bijection E_tail -> E_head, and reversed traversal its inverse.
struct FibreBundleModel {
  Graph base;
  std::size_t fibre_size = 0;
  std::vector<Permutation> transition;

  void validate() const {
    base.validate();
    require(fibre_size >= 1, "fibre must be nonempty");
    require(transition.size() == base.edge_count(), "one transition per base edge required");
    for (const auto& t : transition) require(t.size() == fibre_size, "transition has the wrong fibre size");
  }

  Elem transport(const Step& s, Elem f) const {
    return s.forward ? transition[s.edge](f) : transition[s.edge].inverse()(f);
  }
};

inline FibreBundleModel trivial_fibre_bundle(const Graph& base, std::size_t n) {
  return FibreBundleModel{base, n, std::vector<Permutation>(base.edge_count(), Permutation::identity(n))};
}

/// The group bundle Aut(E): fibre Sym(F), transition a -> t a t^-1.
inline std::shared_ptr<const GroupCoveringModel> automorphism_bundle(const FibreBundleModel& e) {
  e.validate();
  const SymmetricGroup sym = symmetric_group(e.fibre_size);
  std::vector<Permutation> transition;
  for (const auto& t : e.transition) {
    std::vector<Elem> image(sym.group->order());
    for (Elem a = 0; a < image.size(); ++a) image[a] = sym.element(t * sym.permutation(a) * t.inverse());
    transition.emplace_back(std::move(image));
  }
  return std::make_shared<const GroupCoveringModel>(e.base, sym.group, std::move(transition));
}

/// Fr(E') as a torsor under Aut(E): the fibre over x is the set of
/// bijections E_x -> E'_x with u . a = u a, transported by u -> t' u t^-1.
inline TorsorModel frame_bundle(const FibreBundleModel& e, const FibreBundleModel& e2,
                                std::shared_ptr<const GroupCoveringModel> aut = nullptr) {
  e.validate();
  e2.validate();
  require(e.base.vertex_count == e2.base.vertex_count && e.base.edges == e2.base.edges,
          "frame bundle needs both bundles over the same base");
  if (e.fibre_size != e2.fibre_size)
    throw InvariantError("fibres of Fr(E') are empty: E and E' are not locally isomorphic (fibre sizes " +
                         std::to_string(e.fibre_size) + " and " + std::to_string(e2.fibre_size) + ")");
  if (!aut) aut = automorphism_bundle(e);
  const SymmetricGroup sym{e.fibre_size, aut->gamma_ptr()};
  std::vector<Elem> c;
  for (std::size_t k = 0; k < e.base.edge_count(); ++k) {
    auto move = [&](Elem u) { return sym.element(e2.transition[k] * sym.permutation(u) * e.transition[k].inverse()); };
    c.push_back(move(0));
    for (Elem u = 0; u < sym.group->order(); ++u)
      require_invariant(move(u) == sym.group->mul(c.back(), aut->transition(k)(u)),
                        "frame transport is not equivariant under Aut(E)");
  }
  return TorsorModel(std::move(aut), std::move(c));
}

/// P[E] = Aut(E) \ (P x_X E) under a.(p, f) = (p a^-1, a(f)), computed on
/// pairs: the orbit of (1, f) names the point f of the quotient fibre.
inline FibreBundleModel associated_bundle(const TorsorModel& p, const FibreBundleModel& e) {
  e.validate();
  const auto aut = automorphism_bundle(e);
  require(p.zeta().transitions() == aut->transitions(), "torsor is not a torsor under Aut(E)");
  const SymmetricGroup sym{e.fibre_size, aut->gamma_ptr()};
  const FiniteGroup& g = *sym.group;
  const std::size_t n = e.fibre_size, m = g.order();
  std::vector<std::vector<Elem>> act(m, std::vector<Elem>(m * n));
  for (Elem a = 0; a < m; ++a)
    for (Elem u = 0; u < m; ++u)
      for (Elem f = 0; f < n; ++f) act[a][u * n + f] = static_cast<Elem>(g.mul(u, g.inv(a)) * n + sym.permutation(a)(f));
  std::size_t count = 0;
  const auto orbit = detail::orbit_ids(m * n, act, count);
  require_invariant(count == n, "associated bundle fibre does not have |F| points");
  std::vector<Elem> coord(count);
  for (Elem f = 0; f < n; ++f) coord[orbit[f]] = f;  // representatives (1, f)

  FibreBundleModel out{e.base, n, {}};
  for (std::size_t k = 0; k < e.base.edge_count(); ++k) {
    const Elem moved = p.transport(Step{k, true}, 0);
    std::vector<Elem> image(n);
    for (Elem f = 0; f < n; ++f) image[f] = coord[orbit[moved * n + e.transition[k](f)]];
    out.transition.emplace_back(std::move(image));
  }
  return out;
}

/// Bundle isomorphisms E1 -> E2: one bijection per vertex commuting with
/// every edge transition. Returns the first in search order.
inline std::optional<std::vector<Permutation>> find_fibre_bundle_isomorphism(const FibreBundleModel& a,
                                                                             const FibreBundleModel& b,
                                                                             const SearchOptions& options = {}) {
  a.validate();
  b.validate();
  require(a.base.vertex_count == b.base.vertex_count && a.base.edges == b.base.edges,
          "bundles live over different bases");
  if (a.fibre_size != b.fibre_size) return std::nullopt;
  const SymmetricGroup sym = symmetric_group(a.fibre_size);
  std::vector<Permutation> perms;
  for (Elem u = 0; u < sym.group->order(); ++u) perms.push_back(sym.permutation(u));
  auto ok = [&](std::size_t k, Elem ut, Elem uh) {
    return perms[uh] * a.transition[k] == b.transition[k] * perms[ut];
  };
  const auto found = detail::vertex_search(a.base, perms.size(), ok, options, "fibre bundle isomorphism search");
  if (found.empty()) return std::nullopt;
  std::vector<Permutation> out;
  for (Elem u : found.front()) out.push_back(perms[u]);
  return out;
}

/// Ad(P) = P[zeta] under g.(p, h) = (p g^-1, g h g^-1), computed on pairs
/// with representatives (1, h).
inline std::shared_ptr<const GroupCoveringModel> adjoint_bundle(const TorsorModel& p) {
  const FiniteGroup& g = p.gamma();
  const std::size_t n = g.order();
  std::vector<std::vector<Elem>> act(n, std::vector<Elem>(n * n));
  for (Elem a = 0; a < n; ++a)
    for (Elem q = 0; q < n; ++q)
      for (Elem h = 0; h < n; ++h) act[a][q * n + h] = static_cast<Elem>(g.mul(q, g.inv(a)) * n + g.conj(a, h));
  std::size_t count = 0;
  const auto orbit = detail::orbit_ids(n * n, act, count);
  require_invariant(count == n, "adjoint bundle fibre does not have |Gamma| points");
  std::vector<Elem> coord(count);
  for (Elem h = 0; h < n; ++h) coord[orbit[h]] = h;

  std::vector<Permutation> transition;
  for (std::size_t k = 0; k < p.base().edge_count(); ++k) {
    const Elem moved = p.transport(Step{k, true}, 0);
    std::vector<Elem> image(n);
    for (Elem h = 0; h < n; ++h) image[h] = coord[orbit[moved * n + p.zeta().transition(k)(h)]];
    transition.emplace_back(std::move(image));
  }
  return std::make_shared<const GroupCoveringModel>(p.base(), p.zeta().gamma_ptr(), std::move(transition));
}

/// A finite group whose elements are vertex tuples under pointwise product.
struct TupleGroup {
  std::vector<std::vector<Elem>> elements;  ///< sorted; element 0 is the identity tuple
  GroupPtr group;
};

namespace detail {

inline TupleGroup tuple_group(std::vector<std::vector<Elem>> tuples, const FiniteGroup& g) {
  std::sort(tuples.begin(), tuples.end());
  require_invariant(!tuples.empty() && std::all_of(tuples.front().begin(), tuples.front().end(),
                                                   [](Elem v) { return v == 0; }),
                    "tuple set does not contain the identity");
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], i);
  auto mul = [&](Elem a, Elem b) {
    std::vector<Elem> r(tuples[a].size());
    for (std::size_t x = 0; x < r.size(); ++x) r[x] = g.mul(tuples[a][x], tuples[b][x]);
    const auto it = index.find(r);
    require_invariant(it != index.end(), "tuple set is not closed under the pointwise product");
    return it->second;
  };
  auto group = share(FiniteGroup::from_product(tuples.size(), mul));
  return TupleGroup{std::move(tuples), std::move(group)};
}

}  // namespace detail

/// Global sections of Ad(P) under the pointwise product.
inline TupleGroup gauge_group(const TorsorModel& p, const SearchOptions& options = {}) {
  const auto ad = adjoint_bundle(p);
  auto ok = [&](std::size_t k, Elem st, Elem sh) { return ad->transition(k)(st) == sh; };
  return detail::tuple_group(detail::vertex_search(p.base(), p.gamma().order(), ok, options, "gauge section search"),
                             p.gamma());
}

/// Aut(P) from torsor_isomorphisms(P, P); u u' has a_x = a_x a'_x.
inline TupleGroup automorphism_group(const TorsorModel& p, const SearchOptions& options = {}) {
  std::vector<std::vector<Elem>> tuples;
  for (auto& u : torsor_isomorphisms(p, p, options)) tuples.push_back(std::move(u.a));
  return detail::tuple_group(std::move(tuples), p.gamma());
}

/// Phi(s)_x(1 . k) = 1 . (s_x k): evaluated on the fibres, looked up in
/// Aut(P), and checked to be a bijective homomorphism.
inline GroupMorphism gauge_to_automorphism(const TorsorModel& p, const TupleGroup& gauge, const TupleGroup& aut) {
  const FiniteGroup& g = p.gamma();
  std::map<std::vector<Elem>, Elem> index;
  for (Elem i = 0; i < aut.elements.size(); ++i) index.emplace(aut.elements[i], i);
  std::vector<Elem> image;
  for (const auto& s : gauge.elements) {
    TorsorMorphism u{std::vector<Elem>(s.size())};
    // a_x = u_x(1) = 1 . (s_x 1)
    for (std::size_t x = 0; x < s.size(); ++x) u.a[x] = p.act(g.identity(), s[x]);
    require_invariant(is_torsor_isomorphism(p, p, u), "gauge section does not give a torsor automorphism");
    const auto it = index.find(u.a);
    require_invariant(it != index.end(), "gauge image missing from the automorphism group");
    image.push_back(it->second);
  }
  GroupMorphism phi(gauge.group, aut.group, std::move(image));
  require_invariant(phi.is_bijective(), "gauge map to Aut(P) is not bijective");
  return phi;
}

}  // namespace torsorforge
