#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "torsorforge/automorphisms.hpp"
#include "torsorforge/covering.hpp"

namespace torsorforge {

namespace detail {

/// Orbits of a group acting on {0..n-1} through one permutation per element.
/// Returns the orbit id of every point; ids follow the smallest member.
inline std::vector<std::size_t> orbit_ids(std::size_t n, const std::vector<std::vector<Elem>>& act,
                                          std::size_t& count) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> id(n, unset);
  count = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (id[p] != unset) continue;
    for (const auto& a : act) {
      const std::size_t q = a[p];
      require_invariant(id[q] == unset || id[q] == count, "group action orbits overlap");
      id[q] = count;
    }
    ++count;
  }
  return id;
}

}  // namespace detail

/// A flat group bundle over a graph. Every fibre is identified with Gamma;
/// transporting along edge e from tail to head applies the automorphism T_e.
/// Reversed traversal uses the inverse.
class GroupCoveringModel {
 public:
  GroupCoveringModel(Graph base, GroupPtr gamma, std::vector<Permutation> transition)
      : base_(std::move(base)), gamma_(std::move(gamma)), transition_(std::move(transition)) {
    base_.validate();
    require(transition_.size() == base_.edge_count(), "one transition per base edge required");
    for (const auto& t : transition_)
      require_invariant(t.size() == gamma_->order() && is_automorphism(*gamma_, t.images()),
                        "edge transition is not an automorphism of the fibre group");
  }

  const Graph& base() const noexcept { return base_; }
  const FiniteGroup& gamma() const noexcept { return *gamma_; }
  const GroupPtr& gamma_ptr() const noexcept { return gamma_; }
  const Permutation& transition(std::size_t e) const { return transition_[e]; }
  const std::vector<Permutation>& transitions() const noexcept { return transition_; }

  /// Transport along a path, as one automorphism (first step applied first).
  Permutation transport(const Path& path) const {
    Permutation t = Permutation::identity(gamma_->order());
    for (const Step& s : path) t = (s.forward ? transition_[s.edge] : transition_[s.edge].inverse()) * t;
    return t;
  }

  /// Provenance when built from a Galois cover.
  const std::shared_ptr<const CoveringModel>& covering() const noexcept { return covering_; }
  /// phi_f for every deck element f (empty unless built from a cover).
  const std::vector<Permutation>& phi() const noexcept { return phi_; }

 private:
  friend GroupCoveringModel build_group_covering(std::shared_ptr<const CoveringModel>, GroupPtr,
                                                 std::vector<Permutation>);
  Graph base_;
  GroupPtr gamma_;
  std::vector<Permutation> transition_;
  std::shared_ptr<const CoveringModel> covering_;
  std::vector<Permutation> phi_;
};

/// Generic graph-of-groups form.
inline GroupCoveringModel from_edge_transitions(const Graph& base, const GroupPtr& gamma,
                                                std::vector<Permutation> transition) {
  return GroupCoveringModel(base, gamma, std::move(transition));
}

inline GroupCoveringModel constant_group_covering(const Graph& base, const GroupPtr& gamma) {
  return GroupCoveringModel(base, gamma,
                            std::vector<Permutation>(base.edge_count(), Permutation::identity(gamma->order())));
}

/// zeta = pi \ (Y x Gamma) under tau_f(xi, g) = (f xi, phi_f(g)), with the
/// quotient materialized and every fibre checked to be a copy of Gamma.
/// `phi` holds one automorphism per deck element.
inline GroupCoveringModel build_group_covering(std::shared_ptr<const CoveringModel> c, GroupPtr gamma,
                                               std::vector<Permutation> phi) {
  const FiniteGroup& pi = c->deck();
  const FiniteGroup& g = *gamma;
  const std::size_t n = g.order();
  require(phi.size() == pi.order(), "phi needs one automorphism per deck element");
  for (const auto& a : phi)
    require(a.size() == n && is_automorphism(g, a.images()), "phi value is not an automorphism");
  for (Elem a = 0; a < pi.order(); ++a)
    for (Elem b = 0; b < pi.order(); ++b)
      require(phi[pi.mul(a, b)] == phi[a] * phi[b], "phi is not a group morphism");

  const std::size_t ny = c->cover().vertex_count;
  std::vector<std::vector<Elem>> act(pi.order(), std::vector<Elem>(ny * n));
  for (Elem f = 0; f < pi.order(); ++f)
    for (std::size_t y = 0; y < ny; ++y)
      for (Elem x = 0; x < n; ++x) act[f][y * n + x] = static_cast<Elem>(c->act_vertex(f, y) * n + phi[f](x));
  std::size_t count = 0;
  const auto orbit = detail::orbit_ids(ny * n, act, count);
  require_invariant(count == c->base().vertex_count * n, "quotient does not have |Gamma| points per base vertex");

  // coordinate of an orbit = its value on the chosen lift s(x)
  std::vector<Elem> coord(count, 0);
  std::vector<bool> hit(count, false);
  for (std::size_t x = 0; x < c->base().vertex_count; ++x)
    for (Elem v = 0; v < n; ++v) {
      const std::size_t o = orbit[c->lowest_lift(x) * n + v];
      require_invariant(!hit[o], "an orbit meets the chosen lift twice");
      hit[o] = true;
      coord[o] = v;
    }
  // fibrewise product is independent of the lift used, neutral section exists
  for (std::size_t y = 0; y < ny; ++y)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        require_invariant(coord[orbit[y * n + g.mul(a, b)]] == g.mul(coord[orbit[y * n + a]], coord[orbit[y * n + b]]),
                          "fibrewise product is not well defined on the quotient");

  std::vector<Permutation> transition;
  for (std::size_t e = 0; e < c->base().edge_count(); ++e) {
    const std::size_t end = c->lift_path(c->lowest_lift(c->base().tail(e)), Path{Step{e, true}});
    std::vector<Elem> image(n);
    for (Elem v = 0; v < n; ++v) image[v] = coord[orbit[end * n + v]];
    transition.emplace_back(std::move(image));
  }
  GroupCoveringModel out(c->base(), std::move(gamma), std::move(transition));
  for (std::size_t e = 0; e < c->base().edge_count(); ++e)
    require_invariant(out.transition(e) == phi[c->edge_deck(e)].inverse(),
                      "edge transition is not the phi image of the edge deck element");
  out.covering_ = std::move(c);
  out.phi_ = std::move(phi);
  return out;
}

/// phi from an automorphism per deck generator, extended along the words of
/// a Cayley presentation of the deck group.
inline std::vector<Permutation> phi_from_generators(const FiniteGroup& pi, const FiniteGroup& gamma,
                                                    const std::vector<Elem>& generators,
                                                    const std::vector<Permutation>& images) {
  require(generators.size() == images.size(), "one automorphism per deck generator required");
  std::vector<std::optional<Permutation>> phi(pi.order());
  phi[0] = Permutation::identity(gamma.order());
  std::vector<Elem> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const Elem x = queue[h];
      const Elem y = pi.mul(x, generators[i]);
      const Permutation p = *phi[x] * images[i];
      if (!phi[y]) {
        phi[y] = p;
        queue.push_back(y);
      }
    }
  std::vector<Permutation> out;
  for (auto& p : phi) {
    require(p.has_value(), "deck generators do not generate the deck group");
    out.push_back(*p);
  }
  for (Elem a = 0; a < pi.order(); ++a)
    for (Elem b = 0; b < pi.order(); ++b)
      require(out[pi.mul(a, b)] == out[a] * out[b], "phi is not a group morphism");
  return out;
}

}  // namespace torsorforge
