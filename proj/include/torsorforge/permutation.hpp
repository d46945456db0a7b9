#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "torsorforge/error.hpp"

namespace torsorforge {

/// Dense element index. The identity of every FiniteGroup is index 0.
using Elem = std::uint32_t;

/// A bijection of {0, ..., n-1} stored as its image array.
///
/// Used for automorphisms of finite groups, deck actions on cover graphs and
/// transition maps of finite fibre bundles. Composition follows function
/// notation: `(a * b)(x) == a(b(x))`.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Elem> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (Elem v : image_) {
      require(v < image_.size() && !seen[v], "permutation image is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Elem> image(n);
    std::iota(image.begin(), image.end(), Elem{0});
    Permutation p;
    p.image_ = std::move(image);
    return p;
  }

  std::size_t size() const noexcept { return image_.size(); }
  Elem operator()(Elem x) const { return image_[x]; }
  const std::vector<Elem>& images() const noexcept { return image_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation p;
    p.image_.resize(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) p.image_[image_[i]] = static_cast<Elem>(i);
    return p;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    require(a.size() == b.size(), "composing permutations of different degree");
    Permutation p;
    p.image_.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p.image_[i] = a.image_[b.image_[i]];
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Elem> image_;
};

/// Cycle notation, `()` for the identity.
inline std::string cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p(static_cast<Elem>(i)) == i) continue;
    out += '(';
    Elem j = static_cast<Elem>(i);
    bool first = true;
    while (!done[j]) {
      if (!first) out += ' ';
      out += std::to_string(j);
      done[j] = true;
      j = p(j);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// Rank of a permutation in lexicographic order (Lehmer code).
inline std::size_t lex_rank(const Permutation& p) {
  const std::size_t n = p.size();
  std::size_t rank = 0;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (Elem v = 0; v < p(static_cast<Elem>(i)); ++v)
      if (!used[v]) ++smaller;
    used[p(static_cast<Elem>(i))] = true;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

inline Permutation lex_unrank(std::size_t n, std::size_t rank) {
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    digits[n - i] = rank % i;
    rank /= i;
  }
  std::vector<Elem> pool(n);
  std::iota(pool.begin(), pool.end(), Elem{0});
  std::vector<Elem> image;
  image.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    image.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return Permutation(std::move(image));
}

}  // namespace torsorforge
