#include <gtest/gtest.h>

#include "bundle_matrix.hpp"
#include "oracles.hpp"

using namespace torsorforge;

namespace {

std::vector<Permutation> all_perms(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<Elem> v(n);
  std::iota(v.begin(), v.end(), 0);
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// Every assignment of a permutation of {0..n-1} to each edge.
std::vector<FibreBundleModel> all_bundles(const Graph& base, std::size_t n) {
  const auto perms = all_perms(n);
  std::vector<FibreBundleModel> out;
  oracle::for_each_tuple(base.edge_count(), perms.size(), [&](const std::vector<Elem>& pick) {
    FibreBundleModel e{base, n, {}};
    for (Elem k : pick) e.transition.push_back(perms[k]);
    out.push_back(std::move(e));
  });
  return out;
}

/// Bundle isomorphism by scanning Sym(n)^V.
bool bundles_isomorphic(const FibreBundleModel& a, const FibreBundleModel& b) {
  const auto perms = all_perms(a.fibre_size);
  bool found = false;
  oracle::for_each_tuple(a.base.vertex_count, perms.size(), [&](const std::vector<Elem>& u) {
    if (found) return;
    for (std::size_t e = 0; e < a.base.edge_count(); ++e)
      if (perms[u[a.base.head(e)]] * a.transition[e] != b.transition[e] * perms[u[a.base.tail(e)]]) return;
    found = true;
  });
  return found;
}

/// Frame constants straight from the definition: u -> t' u t^-1 at u = id.
std::vector<Permutation> frame_constants(const FibreBundleModel& e, const FibreBundleModel& e2) {
  std::vector<Permutation> out;
  for (std::size_t k = 0; k < e.transition.size(); ++k) out.push_back(e2.transition[k] * e.transition[k].inverse());
  return out;
}

std::vector<Permutation> constants_as_perms(const TorsorModel& p, std::size_t n) {
  std::vector<Permutation> out;
  for (Elem c : p.edge_constants()) out.push_back(lex_unrank(n, c));
  return out;
}

const std::vector<Graph>& bases() {
  static const std::vector<Graph> b{bouquet(1), cycle_graph(2), theta_graph(3)};
  return b;
}

}  // namespace

TEST(Frame, OfItselfIsTrivial) {
  for (const auto& base : bases())
    for (const auto& e : all_bundles(base, 3)) {
      const auto fr = frame_bundle(e, e);
      EXPECT_EQ(fr, trivial_torsor(fr.zeta_ptr()));
    }
}

TEST(Frame, SwapOverCircleIsNontrivial) {
  const Graph circle = bouquet(1);
  const auto e = trivial_fibre_bundle(circle, 2);
  const FibreBundleModel swapped{circle, 2, {Permutation({1, 0})}};
  const auto fr = frame_bundle(e, swapped);
  EXPECT_EQ(fr.edge_constants(), (std::vector<Elem>{1}));
  EXPECT_TRUE(global_sections(fr).empty());
  EXPECT_TRUE(torsor_isomorphisms(fr, trivial_torsor(fr.zeta_ptr())).empty());
}

TEST(Frame, FibreSizeMismatchIsReported) {
  const auto e = trivial_fibre_bundle(bouquet(1), 2);
  const auto e3 = trivial_fibre_bundle(bouquet(1), 3);
  try {
    frame_bundle(e, e3);
    FAIL() << "expected an invariant error";
  } catch (const InvariantError& err) {
    EXPECT_NE(std::string(err.what()).find("not locally isomorphic"), std::string::npos);
  }
}

TEST(Frame, ConstantsMatchDefinition) {
  for (const auto& base : bases())
    for (std::size_t n : {2u, 3u}) {
      const auto all = all_bundles(base, n);
      const auto& e = all[all.size() / 3];
      for (const auto& e2 : all) EXPECT_EQ(constants_as_perms(frame_bundle(e, e2), n), frame_constants(e, e2));
    }
}

TEST(Associated, Examples) {
  const Graph circle = bouquet(1);
  const auto e = trivial_fibre_bundle(circle, 2);
  const auto aut = automorphism_bundle(e);
  const auto pe = associated_bundle(trivial_torsor(aut), e);
  EXPECT_EQ(pe.transition, e.transition);
  const auto swapped = associated_bundle(TorsorModel(aut, {1}), e);
  EXPECT_EQ(swapped.transition, (std::vector<Permutation>{Permutation({1, 0})}));
}

TEST(Associated, TransitionIsConstantAfterOriginal) {
  for (const auto& base : bases())
    for (std::size_t n : {2u, 3u}) {
      const auto all = all_bundles(base, n);
      for (const auto& e : {all.front(), all.back()}) {
        const auto aut = automorphism_bundle(e);
        oracle::for_each_tuple(base.edge_count(), aut->gamma().order(), [&](const std::vector<Elem>& c) {
          const TorsorModel p(aut, c);
          const auto pe = associated_bundle(p, e);
          for (std::size_t k = 0; k < base.edge_count(); ++k)
            EXPECT_EQ(pe.transition[k], lex_unrank(n, c[k]) * e.transition[k]);
        });
      }
    }
}

TEST(Associated, RoundTrips) {
  std::size_t checked = 0;
  for (const auto& base : bases())
    for (std::size_t n : {2u, 3u}) {
      const auto all = all_bundles(base, n);
      for (const auto& e : {all.front(), all.back()}) {
        const auto aut = automorphism_bundle(e);
        for (const auto& e2 : all) {
          const auto back = associated_bundle(frame_bundle(e, e2, aut), e);
          EXPECT_TRUE(find_fibre_bundle_isomorphism(back, e2).has_value());
          ++checked;
        }
        oracle::for_each_tuple(base.edge_count(), aut->gamma().order(), [&](const std::vector<Elem>& c) {
          const TorsorModel p(aut, c);
          const auto fr = frame_bundle(e, associated_bundle(p, e), aut);
          EXPECT_FALSE(torsor_isomorphisms(fr, p).empty());
          ++checked;
        });
      }
    }
  EXPECT_GT(checked, 900u);
}

TEST(Associated, BundleIsomorphismAgreesWithBruteForce) {
  for (const auto& base : {bouquet(1), theta_graph(3)}) {
    const auto all = all_bundles(base, 3);
    for (std::size_t i = 0; i < all.size(); i += 17)
      for (std::size_t j = 0; j < all.size(); j += 5)
        EXPECT_EQ(find_fibre_bundle_isomorphism(all[i], all[j]).has_value(), bundles_isomorphic(all[i], all[j]));
  }
}

TEST(Gauge, TrivialOverCircle) {
  const auto s3 = symmetric_group(3).group;
  const auto zeta = std::make_shared<const GroupCoveringModel>(constant_group_covering(bouquet(1), s3));
  const auto p = trivial_torsor(zeta);
  const auto gauge = gauge_group(p);
  EXPECT_EQ(gauge.group->order(), torsor_isomorphisms(p, p).size());
  EXPECT_EQ(gauge.group->order(), 6u);
}

TEST(Gauge, SectionsMatchConjugationRule) {
  for (const auto& zc : matrix::zeta_cases()) {
    const auto& z = *zc.zeta;
    const FiniteGroup& g = z.gamma();
    const auto dc = deck_coefficients(z);
    for (const auto& v : h1_classes(dc.coefficients).cocycles) {
      const auto p = build_torsor(zc.zeta, dc.table(v));
      std::vector<std::vector<Elem>> expect;
      oracle::for_each_tuple(z.base().vertex_count, g.order(), [&](const std::vector<Elem>& s) {
        for (std::size_t e = 0; e < z.base().edge_count(); ++e) {
          const Elem c = p.edge_constants()[e];
          if (g.mul(g.mul(c, z.transition(e)(s[z.base().tail(e)])), g.inv(c)) != s[z.base().head(e)]) return;
        }
        expect.push_back(s);
      });
      EXPECT_EQ(gauge_group(p).elements, expect) << zc.name;
    }
  }
}

TEST(Gauge, AbelianFibreGivesConstantAdjoint) {
  for (const auto& zc : matrix::zeta_cases()) {
    if (!zc.zeta->gamma().is_abelian()) continue;
    const auto dc = deck_coefficients(*zc.zeta);
    for (const auto& v : h1_classes(dc.coefficients).cocycles) {
      const auto p = build_torsor(zc.zeta, dc.table(v));
      const auto ad = adjoint_bundle(p);
      EXPECT_EQ(ad->transitions(), zc.zeta->transitions());
    }
  }
  // constant abelian zeta over a connected base: sections are the constants
  const auto z4 = cyclic_group(4);
  const auto zeta = std::make_shared<const GroupCoveringModel>(constant_group_covering(theta_graph(3), z4));
  const auto gauge = gauge_group(TorsorModel(zeta, {1, 2, 3}));
  EXPECT_EQ(gauge.group->order(), 4u);
  EXPECT_TRUE(are_isomorphic(*gauge.group, *z4));
}

TEST(Gauge, TreeBaseGivesOneCopyOfGamma) {
  const auto s3 = symmetric_group(3).group;
  const auto aut = enumerate_automorphisms(s3);
  const auto zeta = std::make_shared<const GroupCoveringModel>(
      from_edge_transitions(path_graph(4), s3, {aut[1], aut[4], aut[0]}));
  const TorsorModel p(zeta, {2, 5, 3});
  const auto gauge = gauge_group(p);
  EXPECT_EQ(gauge.group->order(), 6u);
  EXPECT_TRUE(are_isomorphic(*gauge.group, *s3));
}

TEST(Gauge, ExplicitIsomorphismToAutomorphisms) {
  std::size_t torsors = 0;
  for (const auto& zc : matrix::zeta_cases()) {
    const auto dc = deck_coefficients(*zc.zeta);
    for (const auto& v : h1_classes(dc.coefficients).cocycles) {
      const auto p = build_torsor(zc.zeta, dc.table(v));
      const auto gauge = gauge_group(p);
      const auto aut = automorphism_group(p);
      ASSERT_EQ(gauge.group->order(), aut.group->order()) << zc.name;
      const auto phi = gauge_to_automorphism(p, gauge, aut);
      EXPECT_TRUE(phi.is_bijective());
      ++torsors;
    }
  }
  // frame torsors over Aut(E), fibre of size 3
  const auto e = trivial_fibre_bundle(theta_graph(3), 3);
  for (const auto& e2 : all_bundles(theta_graph(3), 3)) {
    const auto fr = frame_bundle(e, e2);
    const auto gauge = gauge_group(fr);
    EXPECT_TRUE(gauge_to_automorphism(fr, gauge, automorphism_group(fr)).is_bijective());
    ++torsors;
  }
  EXPECT_GE(torsors, 6u);
}
