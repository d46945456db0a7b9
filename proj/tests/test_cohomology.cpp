#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torsorforge/builders.hpp"
#include "torsorforge/mapped.hpp"
#include "torsorforge/matrix_groups.hpp"
#include "torsorforge/semidirect_oracle.hpp"

using namespace torsorforge;

namespace {

oracle::Action action_tables(const PiGroup& c) {
  oracle::Action a;
  for (const auto& p : c.gen_action()) a.push_back(p.images());
  return a;
}

PiGroup z2_on_z3_by_inversion() {
  auto z3 = cyclic_group(3);
  return PiGroup(cyclic_presentation(2), z3, {power_map(*z3, -1)});
}

/// Small coefficient objects with trivial and nontrivial actions.
std::vector<PiGroup> coefficient_matrix() {
  auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4);
  auto s3 = symmetric_group(3).group;
  auto klein = direct_product(*z2, *z2);
  const Permutation inv3 = power_map(*z3, -1), inv4 = power_map(*z4, -1);
  const Permutation conj_s3 = inner_automorphism(*s3, 1);
  const Permutation swap_klein = Permutation({0, 2, 1, 3});
  std::vector<PiGroup> out;
  out.push_back(z2_on_z3_by_inversion());
  out.push_back(PiGroup::trivial(cyclic_presentation(2), z2));
  out.push_back(PiGroup(cyclic_presentation(2), z4, {inv4}));
  out.push_back(PiGroup(cyclic_presentation(2), s3, {conj_s3}));
  out.push_back(PiGroup(cyclic_presentation(2), klein, {swap_klein}));
  out.push_back(PiGroup::trivial(free_presentation(2), s3));
  out.push_back(PiGroup(free_presentation(2), z3, {inv3, Permutation::identity(3)}));
  out.push_back(PiGroup(surface_presentation(1), z3, {inv3, inv3}));
  out.push_back(PiGroup::trivial(surface_presentation(1), z2));
  out.push_back(PiGroup(surface_presentation(1), s3, {conj_s3, Permutation::identity(6)}));
  out.push_back(PiGroup(abelian_presentation(2, 2), z4, {inv4, Permutation::identity(4)}));
  out.push_back(PiGroup(cyclic_presentation(3), z2, {Permutation::identity(2)}));
  return out;
}

}  // namespace

TEST(PiGroup, RejectsActionNotKillingRelators) {
  auto z3 = cyclic_group(3);
  // s^3 = 1 but inversion has order 2
  EXPECT_THROW(PiGroup(cyclic_presentation(3), z3, {power_map(*z3, -1)}), InvariantError);
}

TEST(ExtendCrossed, Examples) {
  auto c = z2_on_z3_by_inversion();
  EXPECT_EQ(extend_crossed(c, std::vector<Elem>{1}, Word{}), 0u);
  EXPECT_EQ(extend_crossed(c, std::vector<Elem>{1}, Word{1, 1}), 0u);
  EXPECT_TRUE(is_crossed_morphism(c, std::vector<Elem>{1}));
}

TEST(ExtendCrossed, TrivialActionIsEvaluation) {
  std::mt19937 rng(5);
  auto s3 = symmetric_group(3).group;
  auto c = PiGroup::trivial(free_presentation(3), s3);
  std::uniform_int_distribution<Elem> pick(0, 5);
  for (int t = 0; t < 300; ++t) {
    std::vector<Elem> v{pick(rng), pick(rng), pick(rng)};
    Word w = oracle::random_word(rng, 3, 10);
    EXPECT_EQ(extend_crossed(c, v, w), evaluate_hom(*s3, v, w));
  }
}

TEST(ExtendCrossed, CrossedRuleOnRandomWords) {
  std::mt19937 rng(9);
  for (const auto& c : coefficient_matrix()) {
    const auto table = action_tables(c);
    for (const auto& rho : enumerate_crossed(c)) {
      for (int t = 0; t < 20; ++t) {
        Word u = oracle::random_word(rng, c.generator_count(), 8);
        Word v = oracle::random_word(rng, c.generator_count(), 8);
        const Elem lhs = extend_crossed(c, rho, u * v);
        const Elem rhs = c.m().mul(extend_crossed(c, rho, u), c.word_action(u)(extend_crossed(c, rho, v)));
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(extend_crossed(c, rho, u), oracle::naive_crossed_eval(c.m(), table, rho, u));
      }
    }
  }
}

TEST(EnumerateCrossed, Examples) {
  EXPECT_EQ(enumerate_crossed(z2_on_z3_by_inversion()).size(), 3u);
  auto s3 = symmetric_group(3).group;
  auto homs = enumerate_homs(surface_presentation(1), s3);
  auto crossed = enumerate_crossed(PiGroup::trivial(surface_presentation(1), s3));
  ASSERT_EQ(homs.size(), crossed.size());
  for (std::size_t i = 0; i < homs.size(); ++i) EXPECT_EQ(homs[i].values, crossed[i]);
  auto z3 = cyclic_group(3);
  EXPECT_EQ(enumerate_crossed(PiGroup(free_presentation(2), z3, {power_map(*z3, -1), power_map(*z3, -1)})).size(),
            9u);
}

TEST(EnumerateCrossed, MatchesNaiveGrid) {
  for (const auto& c : coefficient_matrix()) {
    auto grid = oracle::crossed_grid(c.generator_count(), c.pi().relators(), c.m(), action_tables(c));
    EXPECT_EQ(enumerate_crossed(c), grid);
  }
}

TEST(CoboundaryAct, Examples) {
  auto c = z2_on_z3_by_inversion();
  EXPECT_EQ(coboundary_act(c, 0, std::vector<Elem>{2}), (CrossedValues{2}));
  EXPECT_EQ(coboundary_act(c, 1, std::vector<Elem>{0}), (CrossedValues{2}));
  auto s3 = symmetric_group(3).group;
  auto t = PiGroup::trivial(free_presentation(2), s3);
  for (Elem m = 0; m < 6; ++m)
    EXPECT_EQ(coboundary_act(t, m, std::vector<Elem>{1, 4}), (CrossedValues{s3->conj(m, 1), s3->conj(m, 4)}));
}

TEST(CoboundaryAct, LeftActionAndClosure) {
  for (const auto& c : coefficient_matrix()) {
    if (c.m().order() > 12) continue;
    auto all = enumerate_crossed(c);
    for (const auto& rho : all) {
      EXPECT_EQ(coboundary_act(c, 0, rho), rho);
      for (Elem a = 0; a < c.m().order(); ++a) {
        auto ar = coboundary_act(c, a, rho);
        EXPECT_TRUE(is_crossed_morphism(c, ar));
        EXPECT_TRUE(std::binary_search(all.begin(), all.end(), ar));
        for (Elem b = 0; b < c.m().order(); ++b)
          EXPECT_EQ(coboundary_act(c, c.m().mul(a, b), rho), coboundary_act(c, a, coboundary_act(c, b, rho)));
      }
    }
  }
}

TEST(H1, Examples) {
  EXPECT_EQ(h1_classes(z2_on_z3_by_inversion()).class_count(), 1u);
  EXPECT_EQ(h1_classes(PiGroup::trivial(cyclic_presentation(2), cyclic_group(2))).class_count(), 2u);
  auto s3 = symmetric_group(3).group;
  EXPECT_EQ(h1_classes(PiGroup::trivial(free_presentation(2), s3)).class_count(), 11u);
  EXPECT_EQ(oracle::burnside_free_rank2(*s3), 11u);
}

TEST(H1, OrbitCountsMatchAllElementOracle) {
  for (const auto& c : coefficient_matrix()) {
    auto r = h1_classes(c);
    auto oracle_orbits = oracle::crossed_orbits(r.cocycles, c.m(), action_tables(c));
    ASSERT_EQ(r.class_count(), oracle_orbits.size());
    for (const auto& orbit : r.orbits) {
      std::set<std::vector<Elem>> mine;
      for (auto i : orbit) mine.insert(r.cocycles[i]);
      EXPECT_TRUE(oracle_orbits.count(mine));
      EXPECT_EQ(r.cocycles[orbit.front()], *mine.begin());
    }
  }
}

TEST(H1, RepresentativesAreMinimal) {
  for (const auto& c : coefficient_matrix()) {
    auto r = h1_classes(c);
    for (std::size_t o = 0; o < r.class_count(); ++o) {
      for (auto i : r.orbits[o]) EXPECT_LE(r.representative(o), r.cocycles[i]);
      if (o > 0) {
        EXPECT_LT(r.representatives[o - 1], r.representatives[o]);
      }
    }
  }
}

TEST(H1, TrivialActionMatchesHomsModConjugacy) {
  auto s3 = symmetric_group(3).group;
  for (const auto& p : {free_presentation(2), surface_presentation(1), cyclic_presentation(2), cyclic_presentation(3)}) {
    auto homs = oracle::hom_grid(p.generator_count(), p.relators(), *s3);
    oracle::Action trivial(p.generator_count(), Permutation::identity(6).images());
    EXPECT_EQ(h1_classes(PiGroup::trivial(p, s3)).class_count(), oracle::crossed_orbit_count(homs, *s3, trivial));
  }
}

TEST(H1, WorkersGiveIdenticalResult) {
  auto c = PiGroup::trivial(surface_presentation(1), general_linear(2, 2).group);
  auto a = h1_classes(c, SearchOptions{kDefaultBudget, 1});
  auto b = h1_classes(c, SearchOptions{kDefaultBudget, 3});
  EXPECT_EQ(a.cocycles, b.cocycles);
  EXPECT_EQ(a.orbits, b.orbits);
}

TEST(ClassifyGroupCoverings, Examples) {
  EXPECT_EQ(classify_group_coverings(cyclic_presentation(2), cyclic_group(3)).class_count(), 2u);
  EXPECT_EQ(classify_group_coverings(cyclic_presentation(2), cyclic_group(1)).class_count(), 1u);
  EXPECT_EQ(classify_group_coverings(free_presentation(0), symmetric_group(3).group).class_count(), 1u);
  // Aut(Z/2 x Z/2) is S3, so this is Hom(Z/2, S3) up to conjugacy: identity and involutions
  EXPECT_EQ(classify_group_coverings(cyclic_presentation(2), direct_product(*cyclic_group(2), *cyclic_group(2)))
                .class_count(),
            2u);
}

TEST(Semidirect, Examples) {
  auto z3 = cyclic_group(3), z2 = cyclic_group(2);
  QuotientAction q{z2, {1}, {Permutation::identity(3), power_map(*z3, -1)}};
  auto sd = h1_via_semidirect(cyclic_presentation(2), z3, q);
  EXPECT_EQ(sd.cocycles.size(), 3u);
  EXPECT_EQ(sd.class_count(), 1u);

  auto s3 = symmetric_group(3).group;
  QuotientAction trivial{cyclic_group(1), {0, 0}, {Permutation::identity(6)}};
  EXPECT_EQ(h1_via_semidirect(free_presentation(2), s3, trivial).class_count(), 11u);

  QuotientAction z2_trivial{z2, {1}, {Permutation::identity(2), Permutation::identity(2)}};
  auto four = h1_via_semidirect(free_presentation(1), z2, z2_trivial);
  EXPECT_EQ(four.cocycles.size(), 2u);
  EXPECT_EQ(four.class_count(), 2u);
  // over both quotient images together the lifts are all of Hom(Z, Z/2 x Z/2)
  QuotientAction z2_zero{z2, {0}, z2_trivial.phi};
  EXPECT_EQ(four.class_count() + h1_via_semidirect(free_presentation(1), z2, z2_zero).class_count(), 4u);
  EXPECT_EQ(enumerate_homs(free_presentation(1), direct_product(*z2, *z2)).size(), 4u);
}

TEST(Semidirect, MatchesDirectRouteExactly) {
  auto z3 = cyclic_group(3), z4 = cyclic_group(4), z2 = cyclic_group(2);
  auto s3 = symmetric_group(3).group;
  struct Case {
    Presentation pi;
    GroupPtr gamma;
    QuotientAction q;
  };
  std::vector<Case> cases{
      {cyclic_presentation(2), z3, {z2, {1}, {Permutation::identity(3), power_map(*z3, -1)}}},
      {surface_presentation(1), z4, {z2, {1, 0}, {Permutation::identity(4), power_map(*z4, -1)}}},
      {free_presentation(2), s3, {z2, {1, 1}, {Permutation::identity(6), inner_automorphism(*s3, 1)}}},
      {surface_presentation(2), z2, {cyclic_group(1), {0, 0, 0, 0}, {Permutation::identity(2)}}},
  };
  for (const auto& k : cases) {
    auto direct = h1_classes(pi_group_from_quotient(k.pi, k.gamma, k.q));
    auto sd = h1_via_semidirect(k.pi, k.gamma, k.q);
    EXPECT_EQ(direct.cocycles, sd.cocycles);
    EXPECT_EQ(direct.orbits, sd.orbits);
  }
}

TEST(Semidirect, RejectsQuotientNotKillingRelators) {
  auto z3 = cyclic_group(3);
  QuotientAction q{cyclic_group(2), {1}, {Permutation::identity(3), power_map(*z3, -1)}};
  EXPECT_THROW(h1_via_semidirect(cyclic_presentation(3), z3, q), Error);
}

TEST(Mapped, SinglePointMatchesDirectCoefficients) {
  auto z3 = cyclic_group(3), s3 = symmetric_group(3).group;
  struct Case {
    Presentation pi;
    GroupPtr gamma;
    std::vector<Permutation> phi;
  };
  std::vector<Case> cases{{cyclic_presentation(2), z3, {power_map(*z3, -1)}},
                          {free_presentation(2), s3, {inner_automorphism(*s3, 1), inner_automorphism(*s3, 3)}},
                          {surface_presentation(1), z3, {power_map(*z3, -1), Permutation::identity(3)}}};
  for (const auto& k : cases) {
    std::vector<Permutation> point(k.pi.generator_count(), Permutation::identity(1));
    auto sections = mapped_sections(k.pi, point, k.gamma, k.phi);
    auto right = right_h1_classes(sections.coefficients);
    auto direct = h1_classes(PiGroup(k.pi, k.gamma, k.phi));
    EXPECT_EQ(right.class_count(), direct.class_count());
    EXPECT_EQ(h1_classes(mapped_coefficients(k.pi, point, k.gamma, k.phi)).class_count(), direct.class_count());
    // psi -> rho(g) = phi_g(psi_g) is a bijection of cocycles carrying orbits to orbits
    ASSERT_EQ(right.cocycles.size(), direct.cocycles.size());
    std::set<std::vector<Elem>> images;
    for (std::size_t i = 0; i < right.cocycles.size(); ++i) {
      auto rho = right_to_left_crossed(sections.coefficients, right.cocycles[i]);
      for (std::size_t g = 0; g < rho.size(); ++g) EXPECT_EQ(rho[g], k.phi[g](right.cocycles[i][g]));
      ASSERT_TRUE(is_crossed_morphism(PiGroup(k.pi, k.gamma, k.phi), rho));
      images.insert(rho);
      EXPECT_EQ(left_to_right_crossed(sections.coefficients, rho), right.cocycles[i]);
      for (auto j : right.orbits[right.orbit_of[i]]) {
        auto rho_j = right_to_left_crossed(sections.coefficients, right.cocycles[j]);
        EXPECT_EQ(direct.class_of(rho), direct.class_of(rho_j));
      }
    }
    EXPECT_EQ(images.size(), direct.cocycles.size());
  }
}

TEST(Mapped, TrivialGammaIsSingleton) {
  std::vector<Permutation> swap{Permutation({1, 0})};
  auto c = mapped_coefficients(cyclic_presentation(2), swap, cyclic_group(1), {Permutation::identity(1)});
  EXPECT_EQ(c.m().order(), 1u);
  EXPECT_EQ(h1_classes(c).class_count(), 1u);
}

TEST(Mapped, RegularSetWithRelator) {
  // Z/2 acting on itself, Gamma = Z/2 with trivial phi: Maps(S, Gamma) is
  // Z/2 x Z/2 with the coordinate swap, and with the relator s^2 in place
  // H^1 is a single class.
  auto z2 = cyclic_group(2);
  std::vector<Permutation> swap{Permutation({1, 0})};
  auto c = mapped_coefficients(cyclic_presentation(2), swap, z2, {Permutation::identity(2)});
  ASSERT_EQ(c.m().order(), 4u);
  EXPECT_FALSE(c.gen_action()[0].is_identity());
  auto r = h1_classes(c);
  auto grid = oracle::crossed_grid(1, c.pi().relators(), c.m(), action_tables(c));
  EXPECT_EQ(r.cocycles.size(), grid.size());
  EXPECT_EQ(r.cocycles.size(), 2u);
  EXPECT_EQ(r.class_count(), oracle::crossed_orbit_count(grid, c.m(), action_tables(c)));
  EXPECT_EQ(r.class_count(), 1u);
}

TEST(Mapped, RegularSetFreeRankOne) {
  // the same coefficients over a free generator: 4 crossed values, 2 classes
  auto z2 = cyclic_group(2);
  std::vector<Permutation> swap{Permutation({1, 0})};
  auto c = mapped_coefficients(free_presentation(1), swap, z2, {Permutation::identity(2)});
  auto r = h1_classes(c);
  EXPECT_EQ(r.cocycles.size(), 4u);
  EXPECT_EQ(r.class_count(), 2u);
  EXPECT_EQ(r.class_count(), oracle::crossed_orbit_count(r.cocycles, c.m(), action_tables(c)));
}

TEST(Mapped, RightActionLaw) {
  auto z3 = cyclic_group(3);
  std::vector<Permutation> on_set{Permutation({1, 2, 0}), Permutation({1, 0, 2})};
  auto sec = mapped_sections(free_presentation(2), on_set, z3, {power_map(*z3, -1), Permutation::identity(3)});
  const RightPiGroup& c = sec.coefficients;
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    Word u = oracle::random_word(rng, 2, 6), v = oracle::random_word(rng, 2, 6);
    for (Elem mu = 0; mu < c.m().order(); ++mu)
      EXPECT_EQ(c.word_action(u * v)(mu), c.word_action(v)(c.word_action(u)(mu)));
  }
}
