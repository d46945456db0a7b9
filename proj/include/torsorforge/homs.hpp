#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "torsorforge/finite_group.hpp"
#include "torsorforge/presentation.hpp"
#include "torsorforge/search_options.hpp"

namespace torsorforge {

/// Generator values of a candidate morphism from a presented group.
struct Assignment {
  GroupPtr target;
  std::vector<Elem> values;

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.values == b.values; }
};

/// Multiplicative extension of generator values to a word.
inline Elem evaluate_hom(const FiniteGroup& g, std::span<const Elem> values, const Word& w) {
  Elem r = g.identity();
  for (Letter x : w.letters()) {
    const Elem v = values[static_cast<std::size_t>(std::abs(x)) - 1];
    r = g.mul(r, x > 0 ? v : g.inv(v));
  }
  return r;
}

inline Elem evaluate_hom(const Assignment& a, const Word& w) { return evaluate_hom(*a.target, a.values, w); }

namespace detail {

/// Depth-first search over value tuples, one candidate list per generator.
/// `kills(values, relator)` decides a relator once every generator it
/// mentions is assigned; relators are checked at the depth of their highest
/// generator, so failing prefixes are cut early. Output is in lexicographic
/// order of candidate positions, independent of the worker count.
template <typename Kills>
std::vector<std::vector<Elem>> relator_search(const std::vector<std::vector<Elem>>& candidates,
                                              const std::vector<Word>& relators, const SearchOptions& options,
                                              const std::string& what, Kills&& kills) {
  const std::size_t n = candidates.size();
  std::uint64_t space = 1;
  for (const auto& c : candidates) space = saturating_mul(space, c.size());
  check_budget(space, options, what);

  std::vector<std::vector<const Word*>> bucket(n + 1);
  for (const Word& r : relators) bucket[r.max_generator()].push_back(&r);

  // relators on no generators cannot appear (they are nonempty), so bucket[0] is empty
  if (n == 0) return {std::vector<Elem>{}};

  auto run_branch = [&](std::size_t first_index) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> values(n, 0);
    values[0] = candidates[0][first_index];
    auto ok_at = [&](std::size_t depth) {
      for (const Word* r : bucket[depth])
        if (!kills(std::span<const Elem>(values), *r)) return false;
      return true;
    };
    if (!ok_at(1)) return out;
    auto recurse = [&](auto&& self, std::size_t k) -> void {
      if (k == n) {
        out.push_back(values);
        return;
      }
      for (Elem c : candidates[k]) {
        values[k] = c;
        if (ok_at(k + 1)) self(self, k + 1);
      }
    };
    recurse(recurse, 1);
    return out;
  };

  const std::size_t branches = candidates[0].size();
  std::vector<std::vector<std::vector<Elem>>> parts(branches);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(branches)));
  if (workers <= 1) {
    for (std::size_t b = 0; b < branches; ++b) parts[b] = run_branch(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < branches; b += workers) parts[b] = run_branch(b);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<std::vector<Elem>> all;
  for (auto& p : parts)
    for (auto& v : p) all.push_back(std::move(v));
  return all;
}

}  // namespace detail

/// Morphisms P -> G with each generator restricted to a candidate list.
inline std::vector<Assignment> enumerate_homs_restricted(const Presentation& p, const GroupPtr& g,
                                                         const std::vector<std::vector<Elem>>& candidates,
                                                         const SearchOptions& options = {}) {
  require(candidates.size() == p.generator_count(), "one candidate list per generator required");
  auto raw = detail::relator_search(candidates, p.relators(), options, "homomorphism enumeration",
                                    [&](std::span<const Elem> v, const Word& r) {
                                      return evaluate_hom(*g, v, r) == g->identity();
                                    });
  std::vector<Assignment> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.push_back(Assignment{g, std::move(v)});
  return out;
}

/// All morphisms P -> G, in lexicographic order of generator values.
inline std::vector<Assignment> enumerate_homs(const Presentation& p, const GroupPtr& g,
                                              const SearchOptions& options = {}) {
  std::vector<Elem> all(g->order());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  return enumerate_homs_restricted(p, g, std::vector<std::vector<Elem>>(p.generator_count(), all), options);
}

}  // namespace torsorforge
