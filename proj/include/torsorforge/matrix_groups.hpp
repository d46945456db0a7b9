#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "torsorforge/finite_group.hpp"

namespace torsorforge {

/// Arithmetic in F_q for q prime or q = 4. Elements are 0..q-1; for F_4 the
/// element 2 is a root w of x^2 + x + 1 and 3 = w + 1.
class FiniteField {
 public:
  explicit FiniteField(unsigned q) : q_(q) {
    require(q == 4 || is_small_prime(q), "unsupported field size " + std::to_string(q) +
                                             " (prime below 32 or 4)");
    add_.resize(q * q);
    mul_.resize(q * q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        if (q == 4) {
          add_[a * q + b] = a ^ b;
          mul_[a * q + b] = gf4_mul(a, b);
        } else {
          add_[a * q + b] = (a + b) % q;
          mul_[a * q + b] = (a * b) % q;
        }
      }
  }

  unsigned size() const noexcept { return q_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const {
    for (unsigned b = 0; b < q_; ++b)
      if (add(a, b) == 0) return b;
    return 0;
  }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  unsigned inv(unsigned a) const {
    require(a != 0, "zero has no multiplicative inverse");
    for (unsigned b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

 private:
  static bool is_small_prime(unsigned q) {
    if (q < 2 || q > 31) return false;
    for (unsigned d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  }
  static unsigned gf4_mul(unsigned a, unsigned b) {
    // carry-less product reduced modulo x^2 + x + 1
    unsigned p = 0;
    for (unsigned i = 0; i < 2; ++i)
      if (b & (1U << i)) p ^= a << i;
    if (p & 4U) p ^= 0b111U;
    return p;
  }

  unsigned q_;
  std::vector<unsigned> add_;
  std::vector<unsigned> mul_;
};

/// Square matrix over a FiniteField, row-major.
using Matrix = std::vector<unsigned>;

namespace detail {

inline std::size_t matrix_dim(const Matrix& m) {
  std::size_t n = 0;
  while (n * n < m.size()) ++n;
  require(n * n == m.size(), "matrix entry count is not a square");
  return n;
}

inline Matrix matrix_mul(const FiniteField& f, const Matrix& a, const Matrix& b) {
  const std::size_t n = matrix_dim(a);
  Matrix c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      unsigned s = 0;
      for (std::size_t k = 0; k < n; ++k) s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
      c[i * n + j] = s;
    }
  return c;
}

/// Leibniz expansion; fine for the n <= 3 matrices handled here.
inline unsigned matrix_det(const FiniteField& f, const Matrix& a) {
  const std::size_t n = matrix_dim(a);
  std::vector<Elem> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Elem>(i);
  unsigned det = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    unsigned term = 1;
    for (std::size_t i = 0; i < n; ++i) term = f.mul(term, a[i * n + perm[i]]);
    det = inversions % 2 == 0 ? f.add(det, term) : f.sub(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

inline std::string matrix_label(const Matrix& m) {
  const std::size_t n = matrix_dim(m);
  std::string s = "[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < n; ++j) {
      if (j) s += ' ';
      s += std::to_string(m[i * n + j]);
    }
  }
  return s + "]";
}

/// Orders matrices with the identity first, then lexicographically.
inline void canonical_matrix_order(std::vector<Matrix>& ms, std::size_t n) {
  const Matrix id = identity_matrix(n);
  std::sort(ms.begin(), ms.end(), [&](const Matrix& a, const Matrix& b) {
    if (a == id) return b != id;
    if (b == id) return false;
    return a < b;
  });
}

inline FiniteGroup group_from_matrices(const FiniteField& f, const std::vector<Matrix>& ms) {
  std::map<Matrix, Elem> index;
  for (std::size_t i = 0; i < ms.size(); ++i) index.emplace(ms[i], static_cast<Elem>(i));
  std::vector<std::string> labels;
  for (const Matrix& m : ms) labels.push_back(matrix_label(m));
  return FiniteGroup::from_product(
      ms.size(),
      [&](Elem a, Elem b) {
        auto it = index.find(matrix_mul(f, ms[a], ms[b]));
        require_invariant(it != index.end(), "matrix set is not closed under multiplication");
        return it->second;
      },
      std::move(labels));
}

inline std::vector<Matrix> all_matrices(const FiniteField& f, std::size_t n) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    count *= f.size();
    if (count > (1U << 20))
      throw CapacityError("matrix enumeration too large", count, 1U << 20);
  }
  std::vector<Matrix> out;
  out.reserve(count);
  Matrix m(n * n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t r = k;
    for (std::size_t i = n * n; i-- > 0;) {
      m[i] = static_cast<unsigned>(r % f.size());
      r /= f.size();
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace detail

/// Matrix group materialized as a table, remembering which matrix each element is.
struct MatrixGroup {
  FiniteField field;
  std::size_t dimension;
  std::vector<Matrix> matrices;  ///< element index -> matrix
  GroupPtr group;

  unsigned det(Elem x) const { return detail::matrix_det(field, matrices[x]); }
};

inline MatrixGroup general_linear(std::size_t n, unsigned q) {
  require(n >= 1, "matrix dimension must be positive");
  FiniteField f(q);
  std::vector<Matrix> ms;
  for (Matrix& m : detail::all_matrices(f, n))
    if (detail::matrix_det(f, m) != 0) ms.push_back(std::move(m));
  if (ms.size() > kMaxGroupOrder)
    throw CapacityError("GL(" + std::to_string(n) + ", " + std::to_string(q) + ") has order " +
                            std::to_string(ms.size()),
                        ms.size(), kMaxGroupOrder);
  detail::canonical_matrix_order(ms, n);
  auto g = share(detail::group_from_matrices(f, ms));
  return MatrixGroup{f, n, std::move(ms), std::move(g)};
}

inline MatrixGroup special_linear(std::size_t n, unsigned q) {
  require(n >= 1, "matrix dimension must be positive");
  FiniteField f(q);
  std::vector<Matrix> ms;
  for (Matrix& m : detail::all_matrices(f, n))
    if (detail::matrix_det(f, m) == 1) ms.push_back(std::move(m));
  if (ms.size() > kMaxGroupOrder)
    throw CapacityError("SL group too large", ms.size(), kMaxGroupOrder);
  detail::canonical_matrix_order(ms, n);
  auto g = share(detail::group_from_matrices(f, ms));
  return MatrixGroup{f, n, std::move(ms), std::move(g)};
}

/// Closure of invertible generator matrices over F_q.
inline MatrixGroup matrix_group(unsigned q, const std::vector<Matrix>& generators) {
  FiniteField f(q);
  require(!generators.empty(), "matrix group needs at least one generator");
  const std::size_t n = detail::matrix_dim(generators.front());
  for (const Matrix& g : generators) {
    require(detail::matrix_dim(g) == n, "matrix generators have different sizes");
    for (unsigned v : g) require(v < q, "matrix entry outside F_" + std::to_string(q));
    require(detail::matrix_det(f, g) != 0, "matrix generator " + detail::matrix_label(g) + " is singular");
  }
  std::vector<Matrix> found{detail::identity_matrix(n)};
  std::map<Matrix, bool> seen{{found.front(), true}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const Matrix& g : generators) {
      Matrix m = detail::matrix_mul(f, found[i], g);
      if (seen.emplace(m, true).second) {
        found.push_back(std::move(m));
        if (found.size() > kMaxGroupOrder)
          throw CapacityError("matrix group exceeds the materialization bound", found.size(),
                              kMaxGroupOrder);
      }
    }
  }
  detail::canonical_matrix_order(found, n);
  auto g = share(detail::group_from_matrices(f, found));
  return MatrixGroup{f, n, std::move(found), std::move(g)};
}

/// Multiplicative group F_q^*, element order: 1 first, then ascending.
struct UnitGroup {
  FiniteField field;
  std::vector<unsigned> values;  ///< element index -> field element
  GroupPtr group;

  Elem index_of(unsigned v) const {
    for (Elem i = 0; i < values.size(); ++i)
      if (values[i] == v) return i;
    throw Error(ErrorKind::invalid_argument, "not a unit of the field");
  }
};

inline UnitGroup unit_group(unsigned q) {
  FiniteField f(q);
  std::vector<unsigned> values{1};
  for (unsigned v = 2; v < q; ++v) values.push_back(v);
  std::vector<std::string> labels;
  for (unsigned v : values) labels.push_back(std::to_string(v));
  auto index = [&](unsigned v) {
    return static_cast<Elem>(std::find(values.begin(), values.end(), v) - values.begin());
  };
  auto g = share(FiniteGroup::from_product(
      values.size(), [&](Elem a, Elem b) { return index(f.mul(values[a], values[b])); },
      std::move(labels)));
  return UnitGroup{f, std::move(values), std::move(g)};
}

/// det : GL(n, q) -> F_q^* together with its kernel SL(n, q).
struct DeterminantData {
  MatrixGroup general;
  UnitGroup units;
  GroupMorphism det;
  Subgroup special;  ///< kernel of det, elements in GL order
  GroupMorphism inclusion;
};

inline DeterminantData determinant_morphism(std::size_t n, unsigned q) {
  MatrixGroup gl = general_linear(n, q);
  UnitGroup units = unit_group(q);
  std::vector<Elem> image(gl.group->order());
  for (Elem x = 0; x < image.size(); ++x) image[x] = units.index_of(gl.det(x));
  GroupMorphism det(gl.group, units.group, std::move(image));
  Subgroup sl = make_subgroup(gl.group, det.kernel());
  GroupMorphism inclusion(sl.group, gl.group, sl.elements);
  return DeterminantData{std::move(gl), std::move(units), std::move(det), std::move(sl),
                         std::move(inclusion)};
}

}  // namespace torsorforge
