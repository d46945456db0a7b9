#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "torsorforge/finite_group.hpp"
#include "torsorforge/matrix_groups.hpp"

namespace torsorforge {

inline GroupPtr cyclic_group(std::size_t n) {
  require(n >= 1, "cyclic group order must be positive");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  return share(FiniteGroup::from_product(
      n, [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); }, std::move(labels)));
}

/// Symmetric group on {0..n-1}; element k is the k-th permutation in
/// lexicographic order, so 0 is the identity. `(a*b)(x) = a(b(x))`.
struct SymmetricGroup {
  std::size_t degree;
  GroupPtr group;

  Permutation permutation(Elem x) const { return lex_unrank(degree, x); }
  Elem element(const Permutation& p) const { return static_cast<Elem>(lex_rank(p)); }
};

inline SymmetricGroup symmetric_group(std::size_t n) {
  require(n >= 1 && n <= 5, "symmetric groups are supported for degree 1..5");
  std::size_t order = 1;
  for (std::size_t k = 2; k <= n; ++k) order *= k;
  std::vector<Permutation> perms;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < order; ++k) {
    perms.push_back(lex_unrank(n, k));
    labels.push_back(cycle_string(perms.back()));
  }
  auto g = share(FiniteGroup::from_product(
      order,
      [&](Elem a, Elem b) { return static_cast<Elem>(lex_rank(perms[a] * perms[b])); },
      std::move(labels)));
  return SymmetricGroup{n, std::move(g)};
}

/// Pairs (a, b) with index a * |B| + b.
inline GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t nb = b.order();
  std::vector<std::string> labels;
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < nb; ++y) labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
  return share(FiniteGroup::from_product(
      a.order() * nb,
      [&](Elem x, Elem y) {
        return static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
      },
      std::move(labels)));
}

/// Maps(S, G) for |S| = k under pointwise product. A map alpha is encoded
/// base-|G| with alpha(0) the most significant digit.
struct MapsGroup {
  GroupPtr base;
  std::size_t points;
  GroupPtr group;

  std::vector<Elem> decode(Elem x) const {
    std::vector<Elem> alpha(points);
    for (std::size_t s = points; s-- > 0;) {
      alpha[s] = static_cast<Elem>(x % base->order());
      x /= static_cast<Elem>(base->order());
    }
    return alpha;
  }
  Elem encode(const std::vector<Elem>& alpha) const {
    Elem x = 0;
    for (Elem v : alpha) x = static_cast<Elem>(x * base->order() + v);
    return x;
  }
};

inline MapsGroup maps_group(const GroupPtr& base, std::size_t points) {
  std::size_t order = 1;
  for (std::size_t i = 0; i < points; ++i) {
    order *= base->order();
    if (order > kMaxGroupOrder)
      throw CapacityError("Maps(S, G) exceeds the materialization bound", order, kMaxGroupOrder);
  }
  MapsGroup m{base, points, nullptr};
  std::vector<std::string> labels;
  for (Elem x = 0; x < order; ++x) {
    std::string s = "(";
    auto alpha = m.decode(x);
    for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + base->label(alpha[i]);
    labels.push_back(s + ")");
  }
  m.group = share(FiniteGroup::from_product(
      order,
      [&](Elem x, Elem y) {
        auto a = m.decode(x);
        auto b = m.decode(y);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = base->mul(a[i], b[i]);
        return m.encode(a);
      },
      std::move(labels)));
  return m;
}

/// Closure of permutation generators of a common degree; elements are the
/// permutations in lexicographic order (identity first).
inline GroupPtr permutation_group(const std::vector<Permutation>& generators) {
  require(!generators.empty(), "permutation group needs at least one generator");
  const std::size_t degree = generators.front().size();
  for (const auto& g : generators)
    require(g.size() == degree, "permutation generators have different degrees");
  std::vector<Permutation> found{Permutation::identity(degree)};
  std::map<Permutation, bool> seen{{found.front(), true}};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& g : generators) {
      Permutation p = found[i] * g;
      if (seen.emplace(p, true).second) {
        found.push_back(std::move(p));
        if (found.size() > kMaxGroupOrder)
          throw CapacityError("permutation group exceeds the materialization bound", found.size(),
                              kMaxGroupOrder);
      }
    }
  std::sort(found.begin(), found.end());
  std::map<Permutation, Elem> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < found.size(); ++i) {
    index.emplace(found[i], static_cast<Elem>(i));
    labels.push_back(cycle_string(found[i]));
  }
  return share(FiniteGroup::from_product(
      found.size(), [&](Elem a, Elem b) { return index.at(found[a] * found[b]); },
      std::move(labels)));
}

/// Declarative description of a group, as accepted by `build_group`.
struct GroupSpec {
  enum class Kind { cyclic, symmetric, product, general_linear, special_linear, table, permutations, matrices };

  Kind kind = Kind::cyclic;
  std::size_t n = 1;
  unsigned q = 0;
  std::vector<GroupSpec> factors;
  std::vector<std::vector<Elem>> rows;  ///< table rows or permutation images
  std::vector<Matrix> matrices;

  static GroupSpec cyclic(std::size_t n) { return {Kind::cyclic, n, 0, {}, {}, {}}; }
  static GroupSpec symmetric(std::size_t n) { return {Kind::symmetric, n, 0, {}, {}, {}}; }
  static GroupSpec product(GroupSpec a, GroupSpec b) {
    return {Kind::product, 0, 0, {std::move(a), std::move(b)}, {}, {}};
  }
  static GroupSpec gl(std::size_t n, unsigned q) { return {Kind::general_linear, n, q, {}, {}, {}}; }
  static GroupSpec sl(std::size_t n, unsigned q) { return {Kind::special_linear, n, q, {}, {}, {}}; }
  static GroupSpec table(std::vector<std::vector<Elem>> rows) {
    return {Kind::table, rows.size(), 0, {}, std::move(rows), {}};
  }
  static GroupSpec permutations(std::vector<std::vector<Elem>> images) {
    return {Kind::permutations, 0, 0, {}, std::move(images), {}};
  }
  static GroupSpec matrix(unsigned q, std::vector<Matrix> gens) {
    return {Kind::matrices, 0, q, {}, {}, std::move(gens)};
  }
};

inline GroupPtr build_group(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic: return cyclic_group(spec.n);
    case GroupSpec::Kind::symmetric: return symmetric_group(spec.n).group;
    case GroupSpec::Kind::product:
      require(spec.factors.size() == 2, "product needs exactly two factors");
      return direct_product(*build_group(spec.factors[0]), *build_group(spec.factors[1]));
    case GroupSpec::Kind::general_linear:
      require(spec.n <= 2 && (spec.q == 2 || spec.q == 3 || spec.q == 4 || spec.q == 5),
              "matrix groups need n <= 2 and q in {2,3,4,5}");
      return general_linear(spec.n, spec.q).group;
    case GroupSpec::Kind::special_linear:
      require(spec.n <= 2 && (spec.q == 2 || spec.q == 3 || spec.q == 4 || spec.q == 5),
              "matrix groups need n <= 2 and q in {2,3,4,5}");
      return special_linear(spec.n, spec.q).group;
    case GroupSpec::Kind::table: return share(FiniteGroup::from_table(spec.rows));
    case GroupSpec::Kind::permutations: {
      std::vector<Permutation> gens;
      for (const auto& images : spec.rows) gens.emplace_back(images);
      return permutation_group(gens);
    }
    case GroupSpec::Kind::matrices:
      require(spec.q == 2 || spec.q == 3 || spec.q == 4 || spec.q == 5, "matrix groups need q in {2,3,4,5}");
      for (const Matrix& m : spec.matrices)
        require(m.size() <= 4, "matrix groups need n <= 2");
      return matrix_group(spec.q, spec.matrices).group;
  }
  throw Error(ErrorKind::invalid_argument, "unknown group spec");
}

}  // namespace torsorforge
