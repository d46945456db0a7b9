#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "torsorforge/automorphisms.hpp"
#include "torsorforge/presentation.hpp"

namespace torsorforge {

/// A group M with a left action of a presented group by automorphisms,
/// given on generators. Relators are checked to act trivially.
class PiGroup {
 public:
  PiGroup(Presentation pi, GroupPtr m, std::vector<Permutation> gen_action)
      : pi_(std::move(pi)), m_(std::move(m)), act_(std::move(gen_action)) {
    require(act_.size() == pi_.generator_count(), "one automorphism per generator required");
    for (std::size_t i = 0; i < act_.size(); ++i) {
      require(act_[i].size() == m_->order(), "action of generator " + pi_.name(i) + " has the wrong size");
      require_invariant(is_automorphism(*m_, act_[i].images()),
                        "action of generator " + pi_.name(i) + " is not an automorphism");
      inv_.push_back(act_[i].inverse());
    }
    for (const Word& r : pi_.relators())
      require_invariant(word_action(r).is_identity(),
                        "relator " + pi_.format(r) + " does not act trivially on the coefficients");
  }

  /// Trivial action on every generator.
  static PiGroup trivial(Presentation pi, GroupPtr m) {
    std::vector<Permutation> act(pi.generator_count(), Permutation::identity(m->order()));
    return PiGroup(std::move(pi), std::move(m), std::move(act));
  }

  const Presentation& pi() const noexcept { return pi_; }
  const FiniteGroup& m() const noexcept { return *m_; }
  const GroupPtr& m_ptr() const noexcept { return m_; }
  const std::vector<Permutation>& gen_action() const noexcept { return act_; }
  std::size_t generator_count() const noexcept { return pi_.generator_count(); }

  /// Action of a single letter on an element.
  Elem act_letter(Letter x, Elem m) const {
    const auto i = static_cast<std::size_t>(std::abs(x)) - 1;
    return x > 0 ? act_[i](m) : inv_[i](m);
  }

  /// The automorphism a word acts by: x1...xk acts as act(x1) after ... after act(xk).
  Permutation word_action(const Word& w) const {
    Permutation p = Permutation::identity(m_->order());
    for (Letter x : w.letters()) {
      const auto i = static_cast<std::size_t>(std::abs(x)) - 1;
      p = p * (x > 0 ? act_[i] : inv_[i]);
    }
    return p;
  }

  bool is_trivial() const {
    for (const auto& a : act_)
      if (!a.is_identity()) return false;
    return true;
  }

 private:
  Presentation pi_;
  GroupPtr m_;
  std::vector<Permutation> act_;
  std::vector<Permutation> inv_;
};

}  // namespace torsorforge
