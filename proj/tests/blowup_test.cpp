#include <gtest/gtest.h>

#include "blowup_calc/blowup/blowup.hpp"
#include "blowup_calc/geom/iso.hpp"
#include "blowup_calc/geom/spaces.hpp"
#include "blowup_calc/polycore/parse.hpp"

using namespace blowup_calc;

namespace {

Polynomial P(const Ring& R, std::string_view s) { return parse_polynomial(R, s); }

ClosedSubscheme sub1(AtlasPtr X, std::initializer_list<std::string_view> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(P(X->charts[0].ring, s));
  return make_subscheme(X, {g});
}

}  // namespace

TEST(BlowUp, OriginOfPlane) {
  auto X = share(affine_space({"x", "y"}));
  auto B = blow_up(sub1(X, {"x", "y"}));
  ASSERT_EQ(B.result->size(), 2u);
  EXPECT_EQ(B.result->charts[0].ring->vars(), (std::vector<std::string>{"x", "u"}));
  EXPECT_EQ(B.result->charts[1].ring->vars(), (std::vector<std::string>{"y", "u"}));
  EXPECT_EQ(B.projection[0].image(1).str(), "x*u");
  EXPECT_EQ(B.exceptional.gens[0].str(), "x");
  EXPECT_EQ(B.exceptional.gens[1].str(), "y");
  ASSERT_EQ(B.result->gluings.size(), 1u);
  EXPECT_TRUE(gluing_defects(*B.result).empty());
  EXPECT_TRUE(universal_defects(B).empty());
  EXPECT_TRUE(divisor_sound(B.exceptional));
}

TEST(BlowUp, DivisorCenterIsIdentity) {
  auto X = share(affine_space({"x", "y"}));
  auto B = blow_up(sub1(X, {"x*y"}));
  ASSERT_EQ(B.result->size(), 1u);
  EXPECT_EQ(B.result->charts[0].label, "A");
  std::vector<ChartCorrespondence> c{{0, 0, RingMap::identity(X->charts[0].ring), RingMap::identity(X->charts[0].ring)}};
  EXPECT_TRUE(check_iso(*B.result, *X, c).ok);
  EXPECT_TRUE(universal_defects(B).empty());
}

TEST(BlowUp, DegenerateCenters) {
  auto X = share(affine_space({"x"}));
  auto whole_blowup = blow_up(whole(X));
  EXPECT_EQ(whole_blowup.result->size(), 0u);
  auto empty_blowup = blow_up(empty_subscheme(X));
  ASSERT_EQ(empty_blowup.result->size(), 1u);
  EXPECT_TRUE(empty_blowup.exceptional.gens[0].is_one());
}

TEST(BlowUp, CuspStrictTransformIsSmooth) {
  auto X = share(affine_space({"x", "y"}));
  auto B = blow_up(sub1(X, {"x", "y"}));
  auto C = sub1(X, {"y^2 - x^3"});
  auto S = strict_transform(B, C);
  const Ring& R = B.result->charts[0].ring;
  EXPECT_EQ(S.ideals[0].str(), "(u^2 - x)");
  // not excessive: the total transform contains E twice, so one quotient is not enough
  EXPECT_TRUE(strict_mode_disagreement(B, C));
  // smooth: curve ideal plus partials is the unit ideal
  auto g = S.ideals[0].gb()[0];
  Ideal jac(R, {g, P(R, "-1"), P(R, "2*u")});
  EXPECT_TRUE(jac.is_unit());
}

TEST(BlowUp, PointOnProjectiveLineTimesLine) {
  auto P1 = projective_space(p1_factor());
  auto X = share(product(affine_space({"x"}), P1));
  auto Y = make_subscheme(X, {{P(X->charts[0].ring, "x"), P(X->charts[0].ring, "t")},
                              {Polynomial::constant(X->charts[1].ring, 1)}});
  EXPECT_TRUE(subscheme_compatible(Y));
  auto B = blow_up(Y);
  EXPECT_EQ(B.result->size(), 3u);
  EXPECT_TRUE(gluing_defects(*B.result).empty());
  EXPECT_TRUE(universal_defects(B).empty());
}

TEST(BlowUp, OriginOfSpace) {
  auto X = share(affine_space({"x", "y", "z"}));
  auto B = blow_up(sub1(X, {"x", "y", "z"}));
  EXPECT_EQ(B.result->size(), 3u);
  EXPECT_EQ(B.result->gluings.size(), 3u);
  EXPECT_TRUE(gluing_defects(*B.result).empty());
  EXPECT_TRUE(universal_defects(B).empty());
  // blow up again along the strict transform of a line through the origin
  auto L = strict_transform(B, sub1(X, {"y", "z"}));
  auto B2 = blow_up(L, "r");
  EXPECT_TRUE(gluing_defects(*B2.result).empty());
  EXPECT_TRUE(universal_defects(B2).empty());
}

TEST(Parallel, MatchesSequential) {
  auto X = share(affine_space({"x", "y", "z"}));
  setenv("BLOWUP_CALC_THREADS", "0", 1);
  auto a = blow_up(sub1(X, {"x", "y*z"}));
  setenv("BLOWUP_CALC_THREADS", "3", 1);
  auto b = blow_up(sub1(X, {"x", "y*z"}));
  unsetenv("BLOWUP_CALC_THREADS");
  ASSERT_EQ(a.result->size(), b.result->size());
  for (std::size_t n = 0; n < a.result->size(); ++n) {
    EXPECT_EQ(a.result->charts[n].relations.canonical(), b.result->charts[n].relations.canonical());
    EXPECT_EQ(a.exceptional.gens[n], b.exceptional.gens[n]);
  }
  EXPECT_EQ(a.result->gluings.size(), b.result->gluings.size());
}
