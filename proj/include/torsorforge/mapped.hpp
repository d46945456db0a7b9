#pragma once

#include <cstdlib>
#include <vector>

#include "torsorforge/builders.hpp"
#include "torsorforge/h1.hpp"

namespace torsorforge {

/// A group M with a right action mu -> mu^g of a presented group, given on
/// generators. This is the convention of sections transported along deck
/// transformations; `to_left` converts it.
class RightPiGroup {
 public:
  RightPiGroup(Presentation pi, GroupPtr m, std::vector<Permutation> gen_action)
      : pi_(std::move(pi)), m_(std::move(m)), act_(std::move(gen_action)) {
    require(act_.size() == pi_.generator_count(), "one automorphism per generator required");
    for (const auto& a : act_) {
      require_invariant(is_automorphism(*m_, a.images()), "right action value is not an automorphism");
      inv_.push_back(a.inverse());
    }
    for (const Word& r : pi_.relators())
      require_invariant(word_action(r).is_identity(),
                        "relator " + pi_.format(r) + " does not act trivially on the coefficients");
  }

  const Presentation& pi() const noexcept { return pi_; }
  const FiniteGroup& m() const noexcept { return *m_; }
  const GroupPtr& m_ptr() const noexcept { return m_; }
  const std::vector<Permutation>& gen_action() const noexcept { return act_; }
  std::size_t generator_count() const noexcept { return pi_.generator_count(); }

  /// mu^x for a single letter.
  Elem act_letter(Letter x, Elem mu) const {
    const auto i = static_cast<std::size_t>(std::abs(x)) - 1;
    return x > 0 ? act_[i](mu) : inv_[i](mu);
  }

  /// mu -> mu^w; mu^(uv) = (mu^u)^v.
  Permutation word_action(const Word& w) const {
    Permutation p = Permutation::identity(m_->order());
    for (Letter x : w.letters()) {
      const auto i = static_cast<std::size_t>(std::abs(x)) - 1;
      p = (x > 0 ? act_[i] : inv_[i]) * p;
    }
    return p;
  }

 private:
  Presentation pi_;
  GroupPtr m_;
  std::vector<Permutation> act_;
  std::vector<Permutation> inv_;
};

/// psi(u x) = psi(u)^x psi(x), with psi(x^-1) = (psi(x)^-1)^(x^-1).
inline Elem extend_right_crossed(const RightPiGroup& c, std::span<const Elem> values, const Word& w) {
  const FiniteGroup& m = c.m();
  Elem r = m.identity();
  for (Letter x : w.letters()) {
    const Elem v = values[static_cast<std::size_t>(std::abs(x)) - 1];
    const Elem vx = x > 0 ? v : c.act_letter(x, m.inv(v));
    r = m.mul(c.act_letter(x, r), vx);
  }
  return r;
}

inline std::vector<CrossedValues> enumerate_right_crossed(const RightPiGroup& c, const SearchOptions& options = {}) {
  std::vector<Elem> all(c.m().order());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  return detail::relator_search(std::vector<std::vector<Elem>>(c.generator_count(), all), c.pi().relators(),
                                options, "crossed-morphism enumeration",
                                [&](std::span<const Elem> v, const Word& r) {
                                  return extend_right_crossed(c, v, r) == c.m().identity();
                                });
}

/// (mu . psi)_g = mu^g psi_g mu^-1.
inline CrossedValues right_coboundary_act(const RightPiGroup& c, Elem mu, std::span<const Elem> psi) {
  const FiniteGroup& m = c.m();
  CrossedValues out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    out[i] = m.mul(m.mul(c.act_letter(static_cast<Letter>(i + 1), mu), psi[i]), m.inv(mu));
  return out;
}

inline ClassificationResult right_h1_classes(const RightPiGroup& c, const SearchOptions& options = {}) {
  const std::vector<Elem> gens = generating_set(c.m());
  return detail::saturate_orbits(enumerate_right_crossed(c, options), gens.size(),
                                 [&](std::size_t i, const CrossedValues& v) {
                                   return right_coboundary_act(c, gens[i], v);
                                 });
}

/// The left action g . mu := mu^(g^-1).
inline PiGroup to_left(const RightPiGroup& c) {
  std::vector<Permutation> act;
  for (const auto& a : c.gen_action()) act.push_back(a.inverse());
  return PiGroup(c.pi(), c.m_ptr(), std::move(act));
}

/// chi(f) = psi(f^-1)^-1, a crossed morphism for `to_left(c)`. On a
/// generator this is g . psi(g). With Gamma coefficients whose right action
/// is phi_g^-1 it reads rho(g) = phi_g(psi_g).
inline CrossedValues right_to_left_crossed(const RightPiGroup& c, std::span<const Elem> psi) {
  CrossedValues out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = c.act_letter(-static_cast<Letter>(i + 1), psi[i]);
  return out;
}

/// Inverse of right_to_left_crossed.
inline CrossedValues left_to_right_crossed(const RightPiGroup& c, std::span<const Elem> chi) {
  CrossedValues out(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) out[i] = c.act_letter(static_cast<Letter>(i + 1), chi[i]);
  return out;
}

/// Maps(S, Gamma) under pointwise product, with the right action
/// (alpha^g)(s) = phi_g^-1(alpha(g . s)). `set_action[i]` is the action of
/// generator i on S and `phi[i]` its automorphism of Gamma.
struct MappedSections {
  MapsGroup maps;
  RightPiGroup coefficients;
};

inline MappedSections mapped_sections(const Presentation& pi, const std::vector<Permutation>& set_action,
                                      const GroupPtr& gamma, const std::vector<Permutation>& phi) {
  require(set_action.size() == pi.generator_count() && phi.size() == pi.generator_count(),
          "one set permutation and one automorphism per generator required");
  const std::size_t points = set_action.empty() ? 1 : set_action.front().size();
  for (const auto& a : set_action) require(a.size() == points, "set permutations differ in size");
  MapsGroup maps = maps_group(gamma, points);
  std::vector<Permutation> act;
  for (std::size_t i = 0; i < pi.generator_count(); ++i) {
    const Permutation phi_inv = phi[i].inverse();
    std::vector<Elem> image(maps.group->order());
    for (Elem x = 0; x < image.size(); ++x) {
      const std::vector<Elem> alpha = maps.decode(x);
      std::vector<Elem> beta(points);
      for (std::size_t s = 0; s < points; ++s) beta[s] = phi_inv(alpha[set_action[i](static_cast<Elem>(s))]);
      image[x] = maps.encode(beta);
    }
    act.emplace_back(std::move(image));
  }
  RightPiGroup coeffs(pi, maps.group, std::move(act));
  return MappedSections{std::move(maps), std::move(coeffs)};
}

/// Left-action form of mapped_sections: (g . alpha)(s) = phi_g(alpha(g^-1 . s)).
inline PiGroup mapped_coefficients(const Presentation& pi, const std::vector<Permutation>& set_action,
                                   const GroupPtr& gamma, const std::vector<Permutation>& phi) {
  return to_left(mapped_sections(pi, set_action, gamma, phi).coefficients);
}

}  // namespace torsorforge
