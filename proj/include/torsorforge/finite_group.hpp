#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torsorforge/error.hpp"
#include "torsorforge/permutation.hpp"

namespace torsorforge {

/// Largest group ever materialized as a table.
inline constexpr std::size_t kMaxGroupOrder = 1024;
/// Explicit tables up to this order are checked for associativity on every
/// triple; larger explicit tables are refused.
inline constexpr std::size_t kAssociativityCheckBound = 256;

/// A finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  /// Validates a user-supplied table. If the identity is not element 0 the
  /// table is relabelled by swapping it into place.
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& rows,
                                std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    require(n > 0, "group table is empty");
    if (n > kAssociativityCheckBound)
      throw CapacityError("explicit group tables are limited to order " +
                              std::to_string(kAssociativityCheckBound),
                          n, kAssociativityCheckBound);
    for (std::size_t a = 0; a < n; ++a) {
      require(rows[a].size() == n, "group table row " + std::to_string(a) + " has wrong length");
      for (Elem v : rows[a])
        require(v < n, "group table is not closed: entry " + std::to_string(v) + " in row " +
                           std::to_string(a));
    }
    std::optional<Elem> identity;
    for (Elem e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Elem a = 0; a < n && ok; ++a) ok = rows[e][a] == a && rows[a][e] == a;
      if (ok) identity = e;
    }
    require(identity.has_value(), "group table has no identity element");

    std::vector<Elem> relabel(n);
    for (Elem a = 0; a < n; ++a) relabel[a] = a;
    std::swap(relabel[0], relabel[*identity]);
    std::vector<Elem> table(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) table[relabel[a] * n + relabel[b]] = relabel[rows[a][b]];
    if (!labels.empty()) {
      require(labels.size() == n, "label count does not match group order");
      std::swap(labels[0], labels[*identity]);
    }
    FiniteGroup g(n, std::move(table), std::move(labels));
    g.validate(/*check_associativity=*/true);
    return g;
  }

  /// Builds the table of a group whose product is known to be associative
  /// (a concrete permutation, matrix or product construction). Associativity
  /// is still checked exhaustively up to order 256.
  static FiniteGroup from_product(std::size_t order, const std::function<Elem(Elem, Elem)>& mul,
                                  std::vector<std::string> labels = {}) {
    require(order > 0, "group must be nonempty");
    if (order > kMaxGroupOrder)
      throw CapacityError("group of order " + std::to_string(order) +
                              " exceeds the materialization bound " +
                              std::to_string(kMaxGroupOrder),
                          order, kMaxGroupOrder);
    std::vector<Elem> table(order * order);
    for (Elem a = 0; a < order; ++a)
      for (Elem b = 0; b < order; ++b) table[a * order + b] = mul(a, b);
    if (!labels.empty()) require(labels.size() == order, "label count does not match group order");
    FiniteGroup g(order, std::move(table), std::move(labels));
    g.validate(order <= kAssociativityCheckBound);
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  static constexpr Elem identity() noexcept { return 0; }

  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// a^k for any integer k.
  Elem pow(Elem a, long long k) const {
    Elem base = k < 0 ? inv(a) : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Elem r = identity();
    while (e > 0) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return r;
  }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::span<const Elem> row(Elem a) const { return {table_.data() + a * order_, order_}; }

  std::string label(Elem a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Table equality; labels are presentation only.
  friend bool operator==(const FiniteGroup& x, const FiniteGroup& y) {
    return x.order_ == y.order_ && x.table_ == y.table_;
  }

 private:
  FiniteGroup(std::size_t order, std::vector<Elem> table, std::vector<std::string> labels)
      : order_(order), table_(std::move(table)), labels_(std::move(labels)) {}

  void validate(bool check_associativity) {
    const std::size_t n = order_;
    for (Elem v : table_)
      require_invariant(v < n, "group table is not closed");
    for (Elem a = 0; a < n; ++a)
      require_invariant(mul(0, a) == a && mul(a, 0) == a,
                        "element 0 is not a two-sided identity");
    inverse_.assign(n, 0);
    for (Elem a = 0; a < n; ++a) {
      std::optional<Elem> inverse;
      for (Elem b = 0; b < n; ++b) {
        if (mul(a, b) == 0) {
          require_invariant(!inverse, "element " + std::to_string(a) + " has two inverses");
          inverse = b;
        }
      }
      require_invariant(inverse.has_value() && mul(*inverse, a) == 0,
                        "element " + std::to_string(a) + " has no two-sided inverse");
      inverse_[a] = *inverse;
    }
    if (!check_associativity) return;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = mul(a, b);
        for (Elem c = 0; c < n; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            throw InvariantError("associativity fails for the triple (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ", " + std::to_string(c) + ")");
      }
  }

  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Elements of the subgroup generated by `gens`, ascending.
inline std::vector<Elem> subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> in(g.order(), false);
  std::deque<Elem> queue{FiniteGroup::identity()};
  in[0] = true;
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      const Elem y = g.mul(x, s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

/// Greedy irredundant generating set: scan elements in index order and keep
/// each one not already in the span of those kept.
inline std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  for (Elem x = 1; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (Elem y : subgroup_closure(g, gens)) in[y] = true;
  }
  return gens;
}

/// Conjugacy classes, each sorted, ordered by their minimal element.
inline std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<std::vector<Elem>> classes;
  std::vector<bool> seen(g.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls;
    for (Elem h = 0; h < g.order(); ++h) {
      const Elem y = g.conj(h, x);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// A homomorphism between finite groups, validated on construction.
class GroupMorphism {
 public:
  GroupMorphism(GroupPtr source, GroupPtr target, std::vector<Elem> image)
      : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
    require(source_ && target_, "morphism needs a source and a target");
    require(image_.size() == source_->order(), "morphism image has wrong length");
    for (Elem v : image_) require(v < target_->order(), "morphism image out of range");
    require_invariant(image_[0] == FiniteGroup::identity(), "morphism does not preserve the identity");
    for (Elem a = 0; a < source_->order(); ++a)
      for (Elem b = 0; b < source_->order(); ++b)
        if (image_[source_->mul(a, b)] != target_->mul(image_[a], image_[b]))
          throw InvariantError("map is not a group morphism at (" + std::to_string(a) + ", " +
                               std::to_string(b) + ")");
  }

  const FiniteGroup& source() const noexcept { return *source_; }
  const FiniteGroup& target() const noexcept { return *target_; }
  const GroupPtr& source_ptr() const noexcept { return source_; }
  const GroupPtr& target_ptr() const noexcept { return target_; }

  Elem operator()(Elem a) const { return image_[a]; }
  const std::vector<Elem>& images() const noexcept { return image_; }

  std::vector<Elem> kernel() const {
    std::vector<Elem> k;
    for (Elem a = 0; a < image_.size(); ++a)
      if (image_[a] == FiniteGroup::identity()) k.push_back(a);
    return k;
  }

  std::vector<Elem> image_set() const {
    std::vector<Elem> im(image_);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  bool is_injective() const { return kernel().size() == 1; }
  bool is_surjective() const { return image_set().size() == target_->order(); }
  bool is_bijective() const { return is_injective() && is_surjective(); }

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Elem> image_;
};

/// True if `image` is a bijective endomorphism of `g`.
inline bool is_automorphism(const FiniteGroup& g, const std::vector<Elem>& image) {
  if (image.size() != g.order()) return false;
  std::vector<bool> seen(g.order(), false);
  for (Elem v : image) {
    if (v >= g.order() || seen[v]) return false;
    seen[v] = true;
  }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (image[g.mul(a, b)] != g.mul(image[a], image[b])) return false;
  return true;
}

/// Subgroup generated by `gens` as a standalone group, with its inclusion.
/// Elements keep the ascending order of their indices in `g`.
struct Subgroup {
  GroupPtr group;
  std::vector<Elem> elements;  ///< subgroup index -> index in the ambient group

  Elem embed(Elem x) const { return elements[x]; }
};

inline Subgroup make_subgroup(const GroupPtr& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  require(!elements.empty() && elements.front() == 0, "subgroup must contain the identity");
  std::vector<std::int64_t> local(g->order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) local[elements[i]] = static_cast<std::int64_t>(i);
  std::vector<std::string> labels;
  for (Elem x : elements) labels.push_back(g->label(x));
  auto sub = FiniteGroup::from_product(
      elements.size(),
      [&](Elem a, Elem b) {
        const std::int64_t c = local[g->mul(elements[a], elements[b])];
        require_invariant(c >= 0, "subset is not closed under multiplication");
        return static_cast<Elem>(c);
      },
      std::move(labels));
  return Subgroup{share(std::move(sub)), std::move(elements)};
}

inline Subgroup generated_subgroup(const GroupPtr& g, std::span<const Elem> gens) {
  return make_subgroup(g, subgroup_closure(*g, gens));
}

}  // namespace torsorforge
