#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <thread>
#include <vector>

#include "torsorforge/crossed.hpp"
#include "torsorforge/group_covering.hpp"
#include "torsorforge/presentation.hpp"

namespace torsorforge {

/// A right torsor under a group covering zeta, in normal form: each fibre is
/// a copy of Gamma acted on by right multiplication, and the transport along
/// edge e is P_e(p) = c_e T_e(p). Equivariance forces this shape.
class TorsorModel {
 public:
  TorsorModel(std::shared_ptr<const GroupCoveringModel> zeta, std::vector<Elem> c)
      : zeta_(std::move(zeta)), c_(std::move(c)) {
    require(c_.size() == zeta_->base().edge_count(), "one edge constant per base edge required");
    for (Elem v : c_) require(v < zeta_->gamma().order(), "edge constant is not a group element");
    verify();
  }

  const GroupCoveringModel& zeta() const noexcept { return *zeta_; }
  const std::shared_ptr<const GroupCoveringModel>& zeta_ptr() const noexcept { return zeta_; }
  const Graph& base() const noexcept { return zeta_->base(); }
  const FiniteGroup& gamma() const noexcept { return zeta_->gamma(); }
  const std::vector<Elem>& edge_constants() const noexcept { return c_; }

  /// Right action of the fibre group on the torsor fibre.
  Elem act(Elem p, Elem h) const { return gamma().mul(p, h); }

  Elem transport(const Step& s, Elem p) const {
    const FiniteGroup& g = gamma();
    const Permutation& t = zeta_->transition(s.edge);
    if (s.forward) return g.mul(c_[s.edge], t(p));
    return t.inverse()(g.mul(g.inv(c_[s.edge]), p));
  }

  Elem transport(const Path& path, Elem p) const {
    for (const Step& s : path) p = transport(s, p);
    return p;
  }

  friend bool operator==(const TorsorModel& a, const TorsorModel& b) {
    return a.zeta_ == b.zeta_ && a.c_ == b.c_;
  }

 private:
  // simply transitive fibres and equivariant transports, checked on every point
  void verify() const {
    const FiniteGroup& g = gamma();
    const std::size_t n = g.order();
    std::vector<bool> seen(n * n);
    std::fill(seen.begin(), seen.end(), false);
    for (Elem p = 0; p < n; ++p)
      for (Elem h = 0; h < n; ++h) {
        const std::size_t k = p * n + act(p, h);
        require_invariant(!seen[k], "fibrewise action is not simply transitive");
        seen[k] = true;
      }
    for (std::size_t e = 0; e < c_.size(); ++e)
      for (Elem p = 0; p < n; ++p)
        for (Elem h = 0; h < n; ++h)
          require_invariant(transport(Step{e, true}, act(p, h)) ==
                                act(transport(Step{e, true}, p), zeta_->transition(e)(h)),
                            "torsor transport is not equivariant");
  }

  std::shared_ptr<const GroupCoveringModel> zeta_;
  std::vector<Elem> c_;
};

inline TorsorModel trivial_torsor(std::shared_ptr<const GroupCoveringModel> zeta) {
  const std::size_t ne = zeta->base().edge_count();
  return TorsorModel(std::move(zeta), std::vector<Elem>(ne, 0));
}

/// Crossed condition rho(ab) = rho(a) phi_a(rho(b)) on the whole deck table.
inline bool is_deck_crossed(const GroupCoveringModel& zeta, const std::vector<Elem>& rho) {
  const FiniteGroup& pi = zeta.covering()->deck();
  const FiniteGroup& g = zeta.gamma();
  if (rho.size() != pi.order()) return false;
  for (Elem a = 0; a < pi.order(); ++a)
    for (Elem b = 0; b < pi.order(); ++b)
      if (rho[pi.mul(a, b)] != g.mul(rho[a], zeta.phi()[a](rho[b]))) return false;
  return true;
}

/// eta = pi \ (Y x Gamma) under sigma_f(xi, g) = (f xi, rho(f) phi_f(g)).
/// The quotient is materialized; the right action of zeta and the edge
/// transports are read off it and checked exhaustively.
inline TorsorModel build_torsor(const std::shared_ptr<const GroupCoveringModel>& zeta, const std::vector<Elem>& rho) {
  require(zeta->covering() != nullptr, "build_torsor needs a group covering built from a Galois cover");
  require(is_deck_crossed(*zeta, rho), "rho fails the crossed condition on the deck group table");
  const CoveringModel& c = *zeta->covering();
  const FiniteGroup& pi = c.deck();
  const FiniteGroup& g = zeta->gamma();
  const auto& phi = zeta->phi();
  const std::size_t n = g.order();
  const std::size_t ny = c.cover().vertex_count;

  std::vector<std::vector<Elem>> act(pi.order(), std::vector<Elem>(ny * n));
  for (Elem f = 0; f < pi.order(); ++f)
    for (std::size_t y = 0; y < ny; ++y)
      for (Elem x = 0; x < n; ++x)
        act[f][y * n + x] = static_cast<Elem>(c.act_vertex(f, y) * n + g.mul(rho[f], phi[f](x)));
  std::size_t count = 0;
  const auto orbit = detail::orbit_ids(ny * n, act, count);
  require_invariant(count == c.base().vertex_count * n, "torsor quotient does not have |Gamma| points per vertex");
  std::vector<Elem> coord(count, 0);
  std::vector<bool> hit(count, false);
  for (std::size_t x = 0; x < c.base().vertex_count; ++x)
    for (Elem v = 0; v < n; ++v) {
      const std::size_t o = orbit[c.lowest_lift(x) * n + v];
      require_invariant(!hit[o], "a torsor orbit meets the chosen lift twice");
      hit[o] = true;
      coord[o] = v;
    }
  // right action (xi, p)(xi, h) = (xi, p h) must not depend on xi
  for (std::size_t y = 0; y < ny; ++y) {
    const Elem f = c.deck_element(c.lowest_lift(c.vproj(y)), y);
    const Permutation finv = phi[f].inverse();
    for (Elem p = 0; p < n; ++p)
      for (Elem h = 0; h < n; ++h)
        require_invariant(coord[orbit[y * n + g.mul(p, h)]] == g.mul(coord[orbit[y * n + p]], finv(h)),
                          "right action of zeta is not well defined on the torsor quotient");
  }
  std::vector<Elem> constants;
  for (std::size_t e = 0; e < c.base().edge_count(); ++e) {
    const std::size_t end = c.lift_path(c.lowest_lift(c.base().tail(e)), Path{Step{e, true}});
    constants.push_back(coord[orbit[end * n + 0]]);
    for (Elem v = 0; v < n; ++v)
      require_invariant(coord[orbit[end * n + v]] == g.mul(constants.back(), zeta->transition(e)(v)),
                        "torsor transport is not of the form c_e T_e");
  }
  return TorsorModel(zeta, std::move(constants));
}

/// A crossed morphism of the presented fundamental group of the base, with
/// the coefficient action it is crossed for.
struct Holonomy {
  GraphPi1 pi1;
  PiGroup coefficients;
  CrossedValues values;
};

/// Monodromy action of zeta on the fibre over the root: a loop acts by the
/// inverse of its transport.
inline PiGroup monodromy(const GroupCoveringModel& zeta, const GraphPi1& pi1) {
  std::vector<Permutation> act;
  for (std::size_t g = 0; g < pi1.presentation.generator_count(); ++g)
    act.push_back(zeta.transport(pi1.generator_loop(g, zeta.base())).inverse());
  return PiGroup(pi1.presentation, zeta.gamma_ptr(), std::move(act));
}

/// Holonomy by path lifting: for a generator loop L (moved to `basepoint`
/// by a tree path), rho(L) is P_L^-1 of the reference point, expressed back
/// in the fibre over the root through zeta's tree transport.
inline Holonomy holonomy(const TorsorModel& p, std::size_t basepoint = 0) {
  const Graph& base = p.base();
  require(basepoint < base.vertex_count, "basepoint out of range");
  GraphPi1 pi1 = graph_pi1(base);
  PiGroup coeff = monodromy(p.zeta(), pi1);
  const Path tau = pi1.tree_path[basepoint];
  const Permutation back = p.zeta().transport(tau).inverse();
  CrossedValues values;
  for (std::size_t g = 0; g < pi1.presentation.generator_count(); ++g) {
    const Path loop = concat(concat(reverse_path(tau), pi1.generator_loop(g, base)), tau);
    values.push_back(back(p.transport(reverse_path(loop), p.gamma().identity())));
  }
  require_invariant(is_crossed_morphism(coeff, values), "holonomy is not a crossed morphism");
  return Holonomy{std::move(pi1), std::move(coeff), std::move(values)};
}

/// Inverse of holonomy: c_e = 1 on tree edges, and on the edge of generator
/// g, c_e = T_e(T_tail(rho(g)^-1)) with T_tail the tree transport.
inline TorsorModel torsor_from_holonomy(const std::shared_ptr<const GroupCoveringModel>& zeta,
                                        std::span<const Elem> values) {
  const GraphPi1 pi1 = graph_pi1(zeta->base());
  require(values.size() == pi1.presentation.generator_count(), "one holonomy value per generator required");
  const FiniteGroup& g = zeta->gamma();
  std::vector<Elem> c(zeta->base().edge_count(), 0);
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (pi1.in_tree[e]) continue;
    const auto gen = static_cast<std::size_t>(pi1.edge_generator[e]);
    const Permutation tail = zeta->transport(pi1.tree_path[zeta->base().tail(e)]);
    c[e] = zeta->transition(e)(tail(g.inv(values[gen])));
  }
  return TorsorModel(zeta, std::move(c));
}

/// Deck crossed morphism pulled back to the fundamental group of the base.
inline CrossedValues pull_back_deck_crossed(const GroupCoveringModel& zeta, const std::vector<Elem>& rho) {
  const DeckPresentation d = cover_deck_presentation(*zeta.covering());
  CrossedValues out;
  for (Elem f : d.generator_images) out.push_back(rho[f]);
  return out;
}

/// Coefficients (pi, Gamma, phi) on a Cayley presentation of the deck
/// group, plus the table extension of a crossed morphism on its generators.
struct DeckCoefficients {
  FinitePresentation presentation;
  PiGroup coefficients;

  std::vector<Elem> table(std::span<const Elem> values) const {
    std::vector<Elem> out;
    for (const Word& w : presentation.element_words) out.push_back(extend_crossed(coefficients, values, w));
    return out;
  }
};

inline DeckCoefficients deck_coefficients(const GroupCoveringModel& zeta) {
  require(zeta.covering() != nullptr, "deck coefficients need a group covering built from a Galois cover");
  FinitePresentation fp = presentation_of(zeta.covering()->deck());
  std::vector<Permutation> act;
  for (Elem s : fp.generators) act.push_back(zeta.phi()[s]);
  PiGroup c(fp.presentation, zeta.gamma_ptr(), std::move(act));
  return DeckCoefficients{std::move(fp), std::move(c)};
}

namespace detail {

/// All assignments of a group element to every base vertex such that
/// `edge_ok(e, value_at_tail, value_at_head)` holds on every edge. Vertices
/// are visited in BFS order; an edge is checked once both ends are set.
/// Workers split the value at the first vertex.
inline std::vector<std::vector<Elem>> vertex_search(const Graph& graph, std::size_t n,
                                                    const std::function<bool(std::size_t, Elem, Elem)>& edge_ok,
                                                    const SearchOptions& options, const std::string& what) {
  const std::size_t nv = graph.vertex_count;
  std::vector<std::size_t> order{0}, pos(nv, nv);
  pos[0] = 0;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      const std::size_t t = graph.tail(e), d = graph.head(e);
      for (std::size_t w : {t, d})
        if ((t == order[h] || d == order[h]) && pos[w] == nv) {
          pos[w] = order.size();
          order.push_back(w);
        }
    }
  require(order.size() == nv, "base graph is not connected");
  std::vector<std::vector<std::size_t>> checks(nv);  // edges closed at depth k
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    checks[std::max(pos[graph.tail(e)], pos[graph.head(e)])].push_back(e);

  std::atomic<std::uint64_t> nodes{0};
  auto run = [&](Elem first, std::vector<std::vector<Elem>>& out) {
    std::vector<Elem> a(nv, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == nv) {
        out.push_back(a);
        return;
      }
      const Elem lo = k == 0 ? first : 0, hi = k == 0 ? first + 1 : static_cast<Elem>(n);
      for (Elem v = lo; v < hi; ++v) {
        const std::uint64_t used = ++nodes;
        if (used > options.budget)
          throw CapacityError(what + " exceeded its node budget of " + std::to_string(options.budget), used,
                              options.budget);
        a[order[k]] = v;
        bool ok = true;
        for (std::size_t e : checks[k])
          if (!edge_ok(e, a[graph.tail(e)], a[graph.head(e)])) {
            ok = false;
            break;
          }
        if (ok) rec(k + 1);
      }
    };
    rec(0);
  };

  std::vector<std::vector<std::vector<Elem>>> parts(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (Elem v = 0; v < n; ++v) run(v, parts[v]);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (Elem v = w; v < n; v += workers) run(v, parts[v]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<std::vector<Elem>> out;
  for (auto& p : parts)
    for (auto& a : p) out.push_back(std::move(a));
  return out;
}

}  // namespace detail

/// A morphism of torsors u_x(p) = a_x p; equivariance leaves no other shape.
struct TorsorMorphism {
  std::vector<Elem> a;  ///< u_x(identity) per base vertex
  friend bool operator==(const TorsorMorphism&, const TorsorMorphism&) = default;
};

/// Exhaustive check of a candidate u: P -> Q on every point of every fibre.
inline bool is_torsor_isomorphism(const TorsorModel& p, const TorsorModel& q, const TorsorMorphism& u) {
  const FiniteGroup& g = p.gamma();
  const std::size_t n = g.order();
  const Graph& base = p.base();
  for (std::size_t x = 0; x < base.vertex_count; ++x) {
    std::vector<bool> seen(n, false);
    for (Elem v = 0; v < n; ++v) {
      const Elem w = g.mul(u.a[x], v);
      if (seen[w]) return false;
      seen[w] = true;
      for (Elem h = 0; h < n; ++h)
        if (g.mul(u.a[x], p.act(v, h)) != q.act(w, h)) return false;
    }
  }
  for (std::size_t e = 0; e < base.edge_count(); ++e)
    for (Elem v = 0; v < n; ++v)
      if (g.mul(u.a[base.head(e)], p.transport(Step{e, true}, v)) !=
          q.transport(Step{e, true}, g.mul(u.a[base.tail(e)], v)))
        return false;
  return true;
}

/// All zeta-equivariant bundle maps P -> Q over the base; each is verified
/// to be bijective on every fibre before it is returned.
inline std::vector<TorsorMorphism> torsor_isomorphisms(const TorsorModel& p, const TorsorModel& q,
                                                       const SearchOptions& options = {}) {
  require(p.zeta_ptr() == q.zeta_ptr() || p.zeta().transitions() == q.zeta().transitions(),
          "torsors must share their group covering");
  const FiniteGroup& g = p.gamma();
  const auto& cp = p.edge_constants();
  const auto& cq = q.edge_constants();
  const auto& zeta = p.zeta();
  auto ok = [&](std::size_t e, Elem at, Elem ah) {
    return g.mul(ah, cp[e]) == g.mul(cq[e], zeta.transition(e)(at));
  };
  std::vector<TorsorMorphism> out;
  for (auto& a : detail::vertex_search(p.base(), g.order(), ok, options, "torsor isomorphism search")) {
    TorsorMorphism u{std::move(a)};
    require_invariant(is_torsor_isomorphism(p, q, u), "a torsor morphism failed the bijectivity check");
    out.push_back(std::move(u));
  }
  return out;
}

/// All edge-compatible sections s with P_e(s_tail) = s_head.
inline std::vector<std::vector<Elem>> global_sections(const TorsorModel& p, const SearchOptions& options = {}) {
  auto ok = [&](std::size_t e, Elem at, Elem ah) { return p.transport(Step{e, true}, at) == ah; };
  return detail::vertex_search(p.base(), p.gamma().order(), ok, options, "global section search");
}

}  // namespace torsorforge
