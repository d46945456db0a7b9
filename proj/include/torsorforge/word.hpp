#pragma once

#include <compare>
#include <cstdlib>
#include <span>
#include <vector>

#include "torsorforge/error.hpp"

namespace torsorforge {

/// +k is generator k (1-based), -k its inverse.
using Letter = int;

/// Free reduction of a letter sequence by a single stack pass.
inline std::vector<Letter> reduce_word(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    require(x != 0, "word contains the zero letter");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

/// Element of a free group, always stored freely reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters) : letters_(reduce_word(letters)) {}
  Word(std::initializer_list<Letter> letters)
      : letters_(reduce_word(std::span<const Letter>(letters.begin(), letters.size()))) {}

  /// Word consisting of generator `index` (0-based).
  static Word generator(std::size_t index) { return Word{static_cast<Letter>(index + 1)}; }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Largest generator index (1-based) mentioned, 0 for the empty word.
  std::size_t max_generator() const {
    std::size_t m = 0;
    for (Letter x : letters_) m = std::max<std::size_t>(m, static_cast<std::size_t>(std::abs(x)));
    return m;
  }

  Word inverse() const {
    std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
    for (Letter& x : inv) x = -x;
    Word w;
    w.letters_ = std::move(inv);
    return w;
  }

  Word pow(int k) const {
    Word base = k < 0 ? inverse() : *this;
    Word r;
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> all(a.letters_);
    all.insert(all.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::span<const Letter>(all));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

}  // namespace torsorforge
