#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torsorforge/presentation.hpp"

namespace torsorforge {

/// Finite multigraph with oriented edges; loops and parallel edges allowed.
/// Every edge has a fixed orientation tail -> head; traversing it backwards
/// uses inverse transition data.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t tail(std::size_t e) const { return edges[e].first; }
  std::size_t head(std::size_t e) const { return edges[e].second; }

  void validate() const {
    for (const auto& [u, v] : edges)
      require(u < vertex_count && v < vertex_count, "edge endpoint out of range");
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

/// One traversal step of an edge path.
struct Step {
  std::size_t edge;
  bool forward;

  friend bool operator==(const Step&, const Step&) = default;
};

using Path = std::vector<Step>;

inline Path reverse_path(const Path& p) {
  Path r(p.rbegin(), p.rend());
  for (Step& s : r) s.forward = !s.forward;
  return r;
}

inline Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Graph cycle_graph(std::size_t n) {
  require(n >= 1, "cycle needs at least one vertex");
  Graph g{n, {}};
  for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

inline Graph bouquet(std::size_t loops) {
  Graph g{1, {}};
  for (std::size_t i = 0; i < loops; ++i) g.edges.emplace_back(0, 0);
  return g;
}

/// Two vertices joined by `k` parallel edges (k = 3 is the theta graph).
inline Graph theta_graph(std::size_t k = 3) {
  Graph g{2, {}};
  for (std::size_t i = 0; i < k; ++i) g.edges.emplace_back(0, 1);
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

/// Fundamental group of a connected graph at vertex 0, as a free group on
/// the non-tree edges of a breadth-first spanning tree.
struct GraphPi1 {
  Presentation presentation;
  std::size_t root = 0;
  std::vector<bool> in_tree;               ///< per edge
  std::vector<int> edge_generator;         ///< per edge, generator index or -1 for tree edges
  std::vector<std::size_t> generator_edge; ///< generator -> edge
  std::vector<Word> edge_word;             ///< per edge, its letter (empty for tree edges)
  std::vector<Path> tree_path;             ///< per vertex, tree path root -> vertex

  /// Based loop at the root realizing generator `g`:
  /// tree path to the tail, the edge, tree path back from the head.
  Path generator_loop(std::size_t g, const Graph& graph) const {
    const std::size_t e = generator_edge[g];
    Path p = tree_path[graph.tail(e)];
    p.push_back(Step{e, true});
    return concat(std::move(p), reverse_path(tree_path[graph.head(e)]));
  }

  /// Word in the generators read off along an edge path.
  Word path_word(const Path& path) const {
    Word w;
    for (const Step& s : path) w = w * (s.forward ? edge_word[s.edge] : edge_word[s.edge].inverse());
    return w;
  }
};

inline GraphPi1 graph_pi1(const Graph& graph) {
  graph.validate();
  require(graph.vertex_count > 0, "graph has no vertices");
  GraphPi1 out;
  out.in_tree.assign(graph.edge_count(), false);
  out.tree_path.assign(graph.vertex_count, {});
  std::vector<bool> reached(graph.vertex_count, false);
  reached[0] = true;
  std::vector<std::size_t> queue{0};
  for (std::size_t headi = 0; headi < queue.size(); ++headi) {
    const std::size_t v = queue[headi];
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      const auto [a, b] = graph.edges[e];
      std::size_t other;
      bool forward;
      if (a == v && !reached[b]) {
        other = b;
        forward = true;
      } else if (b == v && !reached[a]) {
        other = a;
        forward = false;
      } else {
        continue;
      }
      reached[other] = true;
      out.in_tree[e] = true;
      out.tree_path[other] = out.tree_path[v];
      out.tree_path[other].push_back(Step{e, forward});
      queue.push_back(other);
    }
  }
  for (bool r : reached) require(r, "graph is not connected");
  out.edge_generator.assign(graph.edge_count(), -1);
  out.edge_word.assign(graph.edge_count(), Word{});
  std::vector<std::string> names;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (out.in_tree[e]) continue;
    const std::size_t g = out.generator_edge.size();
    out.edge_generator[e] = static_cast<int>(g);
    out.generator_edge.push_back(e);
    out.edge_word[e] = Word::generator(g);
    names.push_back("e" + std::to_string(e));
  }
  out.presentation = Presentation(out.generator_edge.size(), {}, std::move(names));
  return out;
}

}  // namespace torsorforge
