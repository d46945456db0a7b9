#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsorforge/finite_group.hpp"
#include "torsorforge/search_options.hpp"

namespace torsorforge {

/// Documented feasibility bound for automorphism enumeration.
inline constexpr std::size_t kMaxAutomorphismBaseOrder = 64;

namespace detail {

/// Extends generator images to the subgroup the generators span. Returns the
/// partial map (-1 off the subgroup), or nothing if the assignment does not
/// define a morphism on that subgroup.
inline std::optional<std::vector<std::int64_t>> extend_from_generators(
    const FiniteGroup& source, const FiniteGroup& target, std::span<const Elem> gens,
    std::span<const Elem> images) {
  std::vector<std::int64_t> map(source.order(), -1);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem y = source.mul(x, gens[i]);
      const auto v = static_cast<std::int64_t>(target.mul(static_cast<Elem>(map[x]), images[i]));
      if (map[y] < 0) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return std::nullopt;
      }
    }
  }
  return map;
}

/// Depth-first search over injective generator images, calling `emit` with
/// every bijective morphism source -> target found.
template <typename Emit>
void search_isomorphisms(const FiniteGroup& source, const FiniteGroup& target,
                         const SearchOptions& options, bool stop_at_first, Emit&& emit) {
  if (source.order() != target.order()) return;
  const std::vector<Elem> gens = generating_set(source);
  std::vector<std::size_t> target_orders(target.order());
  for (Elem x = 0; x < target.order(); ++x) target_orders[x] = target.element_order(x);
  std::vector<Elem> images(gens.size(), 0);
  std::uint64_t nodes = 0;
  bool done = false;

  auto recurse = [&](auto&& self, std::size_t k, const std::vector<std::int64_t>& partial) -> void {
    if (done) return;
    if (k == gens.size()) {
      std::vector<Elem> full(partial.begin(), partial.end());
      emit(std::move(full));
      if (stop_at_first) done = true;
      return;
    }
    std::vector<bool> in_image(target.order(), false);
    for (auto v : partial)
      if (v >= 0) in_image[static_cast<Elem>(v)] = true;
    const std::size_t want = source.element_order(gens[k]);
    for (Elem c = 1; c < target.order() && !done; ++c) {
      if (target_orders[c] != want || in_image[c]) continue;
      if (++nodes > options.budget)
        throw CapacityError("morphism search exceeded its budget", nodes, options.budget);
      images[k] = c;
      auto ext = extend_from_generators(source, target, std::span(gens).first(k + 1),
                                        std::span<const Elem>(images).first(k + 1));
      if (!ext) continue;
      std::vector<bool> hit(target.order(), false);
      bool injective = true;
      for (auto v : *ext) {
        if (v < 0) continue;
        if (hit[static_cast<Elem>(v)]) {
          injective = false;
          break;
        }
        hit[static_cast<Elem>(v)] = true;
      }
      if (injective) self(self, k + 1, *ext);
    }
  };
  std::vector<std::int64_t> start(source.order(), -1);
  start[0] = 0;
  recurse(recurse, 0, start);
}

}  // namespace detail

/// All automorphisms of a finite group, closed under composition. Element
/// order is lexicographic on image arrays, so element 0 is the identity.
/// The group law is composition: `as_group().mul(a, b)` is `a` after `b`.
class AutomorphismGroup {
 public:
  AutomorphismGroup(GroupPtr base, std::vector<Permutation> elements)
      : base_(std::move(base)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      require_invariant(is_automorphism(*base_, elements_[i].images()),
                        "automorphism list contains a non-automorphism");
      index_.emplace(elements_[i], static_cast<Elem>(i));
    }
    require_invariant(!elements_.empty() && elements_.front().is_identity(),
                      "automorphism group must contain the identity");
    std::vector<std::string> labels;
    for (const auto& a : elements_) labels.push_back(cycle_string(a));
    as_group_ = share(FiniteGroup::from_product(
        elements_.size(),
        [&](Elem a, Elem b) {
          auto it = index_.find(elements_[a] * elements_[b]);
          require_invariant(it != index_.end(), "automorphisms are not closed under composition");
          return it->second;
        },
        std::move(labels)));
  }

  const FiniteGroup& base() const noexcept { return *base_; }
  const GroupPtr& base_ptr() const noexcept { return base_; }
  const FiniteGroup& as_group() const noexcept { return *as_group_; }
  const GroupPtr& as_group_ptr() const noexcept { return as_group_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& operator[](Elem i) const { return elements_[i]; }

  std::optional<Elem> index_of(const Permutation& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  GroupMorphism morphism(Elem i) const { return GroupMorphism(base_, base_, elements_[i].images()); }

 private:
  GroupPtr base_;
  std::vector<Permutation> elements_;
  std::map<Permutation, Elem> index_;
  GroupPtr as_group_;
};

inline AutomorphismGroup enumerate_automorphisms(const GroupPtr& g, const SearchOptions& options = {}) {
  if (g->order() > kMaxAutomorphismBaseOrder)
    throw CapacityError("automorphism enumeration is limited to groups of order " +
                            std::to_string(kMaxAutomorphismBaseOrder),
                        g->order(), kMaxAutomorphismBaseOrder);
  std::vector<Permutation> autos;
  detail::search_isomorphisms(*g, *g, options, false,
                              [&](std::vector<Elem> image) { autos.emplace_back(std::move(image)); });
  return AutomorphismGroup(g, std::move(autos));
}

/// Brute-force isomorphism search with generator-image pruning. Exponential
/// in the number of generators; meant for small groups.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                         const SearchOptions& options = {}) {
  std::optional<std::vector<Elem>> found;
  detail::search_isomorphisms(a, b, options, true, [&](std::vector<Elem> image) { found = std::move(image); });
  return found;
}

inline bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  return find_isomorphism(a, b).has_value();
}

/// Inner automorphism x -> g x g^-1.
inline Permutation inner_automorphism(const FiniteGroup& g, Elem by) {
  std::vector<Elem> image(g.order());
  for (Elem x = 0; x < g.order(); ++x) image[x] = g.conj(by, x);
  return Permutation(std::move(image));
}

/// x -> x^k, an automorphism of an abelian group when gcd(k, exponent) = 1.
inline Permutation power_map(const FiniteGroup& g, long long k) {
  std::vector<Elem> image(g.order());
  for (Elem x = 0; x < g.order(); ++x) image[x] = g.pow(x, k);
  require(is_automorphism(g, image), "x -> x^" + std::to_string(k) + " is not an automorphism");
  return Permutation(std::move(image));
}

}  // namespace torsorforge
