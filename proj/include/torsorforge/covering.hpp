#pragma once

#include <limits>
#include <string>
#include <vector>

#include "torsorforge/graph.hpp"
#include "torsorforge/homs.hpp"

namespace torsorforge {

/// A finite Galois covering of graphs Y -> X with its deck group acting on
/// the left. Vertex and edge actions are stored per deck element.
class CoveringModel {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  CoveringModel(Graph base, Graph cover, std::vector<std::size_t> vproj, std::vector<std::size_t> eproj,
                GroupPtr deck, std::vector<Permutation> vertex_action)
      : base_(std::move(base)),
        cover_(std::move(cover)),
        vproj_(std::move(vproj)),
        eproj_(std::move(eproj)),
        deck_(std::move(deck)),
        vact_(std::move(vertex_action)) {
    base_.validate();
    cover_.validate();
    require(vproj_.size() == cover_.vertex_count, "vertex projection needs one entry per cover vertex");
    require(eproj_.size() == cover_.edge_count(), "edge projection needs one entry per cover edge");
    for (auto x : vproj_) require(x < base_.vertex_count, "vertex projection out of range");
    for (auto e : eproj_) require(e < base_.edge_count(), "edge projection out of range");
    require(vact_.size() == deck_->order(), "deck action needs one vertex permutation per deck element");
    build_lifts();
    derive_edge_action();
    validate();
  }

  const Graph& base() const noexcept { return base_; }
  const Graph& cover() const noexcept { return cover_; }
  const FiniteGroup& deck() const noexcept { return *deck_; }
  const GroupPtr& deck_ptr() const noexcept { return deck_; }
  std::size_t vproj(std::size_t y) const { return vproj_[y]; }
  std::size_t eproj(std::size_t e) const { return eproj_[e]; }
  const std::vector<std::size_t>& vertex_projection() const noexcept { return vproj_; }
  const std::vector<std::size_t>& edge_projection() const noexcept { return eproj_; }
  std::size_t act_vertex(Elem f, std::size_t y) const { return vact_[f](static_cast<Elem>(y)); }
  std::size_t act_edge(Elem f, std::size_t e) const { return eact_[f](static_cast<Elem>(e)); }
  const std::vector<Permutation>& vertex_action() const noexcept { return vact_; }

  /// The chosen lift s(x): the lowest-indexed vertex over x.
  std::size_t lowest_lift(std::size_t x) const { return lowest_[x]; }

  /// Cover edge over base edge `e` starting (forward) or ending (backward) at y.
  std::size_t lift_edge(std::size_t y, const Step& s) const {
    return s.forward ? out_lift_[y][s.edge] : in_lift_[y][s.edge];
  }

  /// End vertex of the lift of `path` starting at y.
  std::size_t lift_path(std::size_t y, const Path& path) const {
    for (const Step& s : path) {
      const std::size_t e = lift_edge(y, s);
      y = s.forward ? cover_.head(e) : cover_.tail(e);
    }
    return y;
  }

  /// The unique deck element taking `from` to `to` (both over one base vertex).
  Elem deck_element(std::size_t from, std::size_t to) const {
    for (Elem f = 0; f < deck_->order(); ++f)
      if (act_vertex(f, from) == to) return f;
    throw InvariantError("no deck transformation between two vertices of a fibre");
  }

  /// d_e: the lift of base edge e from s(tail) ends at d_e s(head).
  Elem edge_deck(std::size_t e) const {
    const std::size_t end = lift_path(lowest_[base_.tail(e)], Path{Step{e, true}});
    return deck_element(lowest_[base_.head(e)], end);
  }

 private:
  void build_lifts() {
    const std::size_t ne = base_.edge_count();
    out_lift_.assign(cover_.vertex_count, std::vector<std::size_t>(ne, npos));
    in_lift_.assign(cover_.vertex_count, std::vector<std::size_t>(ne, npos));
    for (std::size_t e = 0; e < cover_.edge_count(); ++e) {
      const std::size_t b = eproj_[e];
      const std::size_t t = cover_.tail(e), h = cover_.head(e);
      require_invariant(vproj_[t] == base_.tail(b) && vproj_[h] == base_.head(b),
                        "cover edge " + std::to_string(e) + " does not lie over its base edge");
      require_invariant(out_lift_[t][b] == npos && in_lift_[h][b] == npos,
                        "projection is not injective on the star of a cover vertex");
      out_lift_[t][b] = e;
      in_lift_[h][b] = e;
    }
    for (std::size_t y = 0; y < cover_.vertex_count; ++y)
      for (std::size_t b = 0; b < ne; ++b) {
        if (base_.tail(b) == vproj_[y])
          require_invariant(out_lift_[y][b] != npos, "projection is not surjective on the star of a cover vertex");
        if (base_.head(b) == vproj_[y])
          require_invariant(in_lift_[y][b] != npos, "projection is not surjective on the star of a cover vertex");
      }
    lowest_.assign(base_.vertex_count, npos);
    for (std::size_t y = cover_.vertex_count; y-- > 0;) lowest_[vproj_[y]] = y;
    for (auto s : lowest_) require_invariant(s != npos, "a base vertex has an empty fibre");
  }

  void derive_edge_action() {
    for (Elem f = 0; f < deck_->order(); ++f) {
      require(vact_[f].size() == cover_.vertex_count, "deck vertex permutation has the wrong size");
      std::vector<Elem> image(cover_.edge_count());
      for (std::size_t e = 0; e < cover_.edge_count(); ++e) {
        const std::size_t t = vact_[f](static_cast<Elem>(cover_.tail(e)));
        require_invariant(vproj_[t] == vproj_[cover_.tail(e)], "deck action does not commute with the projection");
        image[e] = static_cast<Elem>(out_lift_[t][eproj_[e]]);
      }
      // a non-bijective image is reported by the Permutation constructor
      eact_.emplace_back(std::move(image));
    }
  }

  void validate() const {
    const std::size_t n = deck_->order();
    require_invariant(vact_[0].is_identity(), "deck identity must act trivially");
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        require_invariant(vact_[deck_->mul(a, b)] == vact_[a] * vact_[b], "deck action is not a group action");
    for (Elem f = 0; f < n; ++f)
      for (std::size_t e = 0; e < cover_.edge_count(); ++e) {
        const std::size_t fe = eact_[f](static_cast<Elem>(e));
        require_invariant(cover_.head(fe) == vact_[f](static_cast<Elem>(cover_.head(e))),
                          "deck action does not respect edge endpoints");
      }
    for (Elem f = 1; f < n; ++f)
      for (std::size_t y = 0; y < cover_.vertex_count; ++y)
        require_invariant(vact_[f](static_cast<Elem>(y)) != y, "deck action is not free on vertices");
    for (std::size_t y = 0; y < cover_.vertex_count; ++y) {
      bool reached = false;
      for (Elem f = 0; f < n && !reached; ++f) reached = vact_[f](static_cast<Elem>(lowest_[vproj_[y]])) == y;
      require_invariant(reached, "deck group is not transitive on a fibre (cover is not Galois)");
    }
    // a Galois cover is connected
    std::vector<bool> seen(cover_.vertex_count, false);
    std::vector<std::size_t> queue{0};
    seen[0] = cover_.vertex_count > 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& [t, d] : cover_.edges) {
        const std::size_t v = queue[h];
        const std::size_t w = t == v ? d : (d == v ? t : cover_.vertex_count);
        if (w < cover_.vertex_count && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    for (bool s : seen) require_invariant(s, "cover graph is not connected");
  }

  Graph base_, cover_;
  std::vector<std::size_t> vproj_, eproj_;
  GroupPtr deck_;
  std::vector<Permutation> vact_, eact_;
  std::vector<std::vector<std::size_t>> out_lift_, in_lift_;
  std::vector<std::size_t> lowest_;
};

/// Cover from voltages v_e in the deck group: vertex (x, h) has index
/// x |pi| + h, edge (e, h) runs from (tail, h) to (head, h v_e), and the
/// deck group acts by left multiplication on the second coordinate.
inline CoveringModel covering_from_voltages(const Graph& base, const GroupPtr& deck, const std::vector<Elem>& voltage) {
  require(voltage.size() == base.edge_count(), "one voltage per base edge required");
  const std::size_t n = deck->order();
  Graph cover{base.vertex_count * n, {}};
  std::vector<std::size_t> vproj(cover.vertex_count), eproj;
  for (std::size_t x = 0; x < base.vertex_count; ++x)
    for (std::size_t h = 0; h < n; ++h) vproj[x * n + h] = x;
  for (std::size_t e = 0; e < base.edge_count(); ++e) {
    require(voltage[e] < n, "voltage is not a deck element");
    for (Elem h = 0; h < n; ++h) {
      cover.edges.emplace_back(base.tail(e) * n + h, base.head(e) * n + deck->mul(h, voltage[e]));
      eproj.push_back(e);
    }
  }
  std::vector<Permutation> act;
  for (Elem f = 0; f < n; ++f) {
    std::vector<Elem> image(cover.vertex_count);
    for (std::size_t x = 0; x < base.vertex_count; ++x)
      for (Elem h = 0; h < n; ++h) image[x * n + h] = static_cast<Elem>(x * n + deck->mul(f, h));
    act.emplace_back(std::move(image));
  }
  return CoveringModel(base, std::move(cover), std::move(vproj), std::move(eproj), deck, std::move(act));
}

/// The identity covering X -> X with trivial deck group.
inline CoveringModel trivial_covering(const Graph& base, const GroupPtr& trivial_group) {
  require(trivial_group->order() == 1, "trivial covering needs the trivial group");
  return covering_from_voltages(base, trivial_group, std::vector<Elem>(base.edge_count(), 0));
}

/// Fundamental group of the base and its surjection onto the deck group,
/// read off by lifting each generator loop from s(root).
struct DeckPresentation {
  GraphPi1 pi1;
  std::vector<Elem> generator_images;  ///< generator -> deck element
};

inline DeckPresentation cover_deck_presentation(const CoveringModel& c) {
  DeckPresentation out{graph_pi1(c.base()), {}};
  const std::size_t s0 = c.lowest_lift(0);
  for (std::size_t g = 0; g < out.pi1.presentation.generator_count(); ++g) {
    const std::size_t end = c.lift_path(s0, out.pi1.generator_loop(g, c.base()));
    out.generator_images.push_back(c.deck_element(s0, end));
  }
  for (const Word& r : out.pi1.presentation.relators())
    require_invariant(evaluate_hom(c.deck(), out.generator_images, r) == c.deck().identity(),
                      "relator does not map to the identity of the deck group");
  // connectivity of Y forces the map to be onto
  const auto image = subgroup_closure(c.deck(), out.generator_images);
  require_invariant(image.size() == c.deck().order(), "loop lifting does not reach every deck transformation");
  return out;
}

/// Deck element of an arbitrary based loop: d(p q) = d(p) d(q).
inline Elem loop_deck_element(const CoveringModel& c, const Path& loop) {
  const std::size_t s0 = c.lowest_lift(0);
  return c.deck_element(s0, c.lift_path(s0, loop));
}

}  // namespace torsorforge
