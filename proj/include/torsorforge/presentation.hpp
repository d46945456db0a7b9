#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "torsorforge/finite_group.hpp"
#include "torsorforge/word.hpp"

namespace torsorforge {

/// A finitely presented group <g1..gn | relators>. The group itself may be
/// infinite; nothing here enumerates its elements.
class Presentation {
 public:
  Presentation() = default;

  Presentation(std::size_t ngens, std::vector<Word> relators, std::vector<std::string> names = {})
      : ngens_(ngens), relators_(std::move(relators)), names_(std::move(names)) {
    for (const Word& r : relators_) {
      require(!r.empty(), "relators must be nonempty after free reduction");
      require(r.max_generator() <= ngens_, "relator mentions an undeclared generator");
    }
    if (names_.empty())
      for (std::size_t i = 0; i < ngens_; ++i) names_.push_back(default_name(i));
    require(names_.size() == ngens_, "generator name count does not match");
  }

  std::size_t generator_count() const noexcept { return ngens_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::string format(const Word& w) const {
    if (w.empty()) return "e";
    std::string s;
    for (Letter x : w.letters()) {
      if (!s.empty()) s += ' ';
      s += names_[static_cast<std::size_t>(std::abs(x)) - 1];
      if (x < 0) s += "^-1";
    }
    return s;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.ngens_ == b.ngens_ && a.relators_ == b.relators_;
  }

 private:
  static std::string default_name(std::size_t i) {
    return i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i);
  }

  std::size_t ngens_ = 0;
  std::vector<Word> relators_;
  std::vector<std::string> names_;
};

inline Presentation free_presentation(std::size_t rank) { return Presentation(rank, {}); }

/// <s | s^n>
inline Presentation cyclic_presentation(std::size_t n) {
  require(n >= 1, "cyclic presentation needs n >= 1");
  return Presentation(1, {Word::generator(0).pow(static_cast<int>(n))}, {"s"});
}

/// <a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>
inline Presentation surface_presentation(std::size_t genus) {
  require(genus >= 1, "surface presentation needs genus >= 1");
  Word relator;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < genus; ++i) {
    relator = relator * commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
    if (genus == 1) {
      names = {"a", "b"};
    } else {
      names.push_back("a" + std::to_string(i + 1));
      names.push_back("b" + std::to_string(i + 1));
    }
  }
  return Presentation(2 * genus, {relator}, names);
}

/// <a, b | a^m, b^n, [a, b]>
inline Presentation abelian_presentation(std::size_t m, std::size_t n) {
  const Word a = Word::generator(0), b = Word::generator(1);
  return Presentation(2, {a.pow(static_cast<int>(m)), b.pow(static_cast<int>(n)), commutator(a, b)});
}

/// Presentation of a finite group on a generating set: one relator
/// w(g) s w(g s)^-1 per element g and generator s, where w is a fixed
/// spanning-tree word for each element.
struct FinitePresentation {
  Presentation presentation;
  std::vector<Elem> generators;   ///< generator i -> group element
  std::vector<Word> element_words;  ///< group element -> word in the generators
};

inline FinitePresentation presentation_of(const FiniteGroup& g) {
  const std::vector<Elem> gens = generating_set(g);
  std::vector<Word> words(g.order());
  std::vector<bool> reached(g.order(), false);
  reached[0] = true;
  std::vector<Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elem y = g.mul(x, gens[i]);
      if (!reached[y]) {
        reached[y] = true;
        words[y] = words[x] * Word::generator(i);
        queue.push_back(y);
      }
    }
  }
  std::vector<Word> relators;
  for (Elem x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Word r = words[x] * Word::generator(i) * words[g.mul(x, gens[i])].inverse();
      if (!r.empty()) relators.push_back(std::move(r));
    }
  std::vector<std::string> names;
  for (Elem s : gens) names.push_back("g" + std::to_string(s));
  return FinitePresentation{Presentation(gens.size(), std::move(relators), std::move(names)), gens,
                            std::move(words)};
}

/// Abelian invariants of the presented group: free rank and the nontrivial
/// torsion coefficients, via Smith normal form of the exponent-sum matrix.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;
};

inline std::vector<std::vector<std::int64_t>> exponent_matrix(const Presentation& p) {
  std::vector<std::vector<std::int64_t>> m(p.relators().size(),
                                           std::vector<std::int64_t>(p.generator_count(), 0));
  for (std::size_t r = 0; r < p.relators().size(); ++r)
    for (Letter x : p.relators()[r].letters())
      m[r][static_cast<std::size_t>(std::abs(x)) - 1] += x > 0 ? 1 : -1;
  return m;
}

inline AbelianInvariants abelianization(const Presentation& p) {
  auto m = exponent_matrix(p);
  const std::size_t rows = m.size(), cols = p.generator_count();
  std::size_t rank = 0;
  std::vector<std::int64_t> diagonal;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero absolute value in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          clean = false;
          std::swap(m[t], m[i]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          clean = false;
          for (auto& row : m) std::swap(row[t], row[j]);
        }
      }
      if (clean) {
        // divisibility condition d_t | remaining block
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
      }
    }
    diagonal.push_back(std::llabs(m[t][t]));
    ++rank;
  }
  AbelianInvariants inv;
  inv.free_rank = cols - rank;
  for (std::int64_t d : diagonal)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

}  // namespace torsorforge
