#include <gtest/gtest.h>

#include "blowup_calc/deform/deform.hpp"
#include "blowup_calc/geom/iso.hpp"
#include "blowup_calc/polycore/parse.hpp"

using namespace blowup_calc;

namespace {

ClosedSubscheme sub1(AtlasPtr X, std::initializer_list<std::string_view> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(X->charts[0].ring, s));
  return make_subscheme(X, {g});
}

}  // namespace

TEST(Deform, PointInLine) {
  auto X = share(affine_space({"x"}));
  auto D = deformation_space(sub1(X, {"x"}));
  const auto& P = D.main();
  EXPECT_EQ(P.total->size(), 3u);
  EXPECT_TRUE(gluing_defects(*P.total).empty());
  EXPECT_TRUE(section_defects(D).empty());
  // the exceptional is a P^1 over a point, the strict transform of X x 0 is a line
  EXPECT_EQ(as_atlas(P.divisor("E'_Y").sub).size(), 2u);
  EXPECT_EQ(as_atlas(P.divisor("E'_{}").sub).size(), 1u);
  // they meet in P(N) = a point
  auto meet = intersect(P.divisor("E'_Y").sub, P.divisor("E'_{}").sub);
  EXPECT_EQ(as_atlas(meet).size(), 1u);
}

TEST(Deform, WholeSpace) {
  auto X = share(affine_space({"x"}));
  auto D = deformation_space(whole(X));
  const auto& P = D.main();
  EXPECT_EQ(P.total->size(), 2u);
  EXPECT_TRUE(is_empty(P.divisor("E'_{}").sub));
  EXPECT_TRUE(section_defects(D).empty());
}

TEST(Deform, SingletonMultipleMatchesSingle) {
  auto X = share(affine_space({"x", "y"}));
  auto Y = sub1(X, {"x", "y"});
  auto a = deformation_space(Y);
  auto b = multiple_deformation_space({{"Y", Y}});
  const auto& A = *a.main().total;
  const auto& B = *b.main().total;
  ASSERT_EQ(A.size(), B.size());
  for (std::size_t n = 0; n < A.size(); ++n) {
    EXPECT_EQ(A.charts[n].label, B.charts[n].label);
    EXPECT_EQ(A.charts[n].ring->vars(), B.charts[n].ring->vars());
    EXPECT_EQ(A.charts[n].relations.canonical(), B.charts[n].relations.canonical());
  }
  ASSERT_EQ(a.main().divisors.size(), b.main().divisors.size());
  for (std::size_t k = 0; k < a.main().divisors.size(); ++k) {
    EXPECT_EQ(a.main().divisors[k].first, b.main().divisors[k].first);
    for (std::size_t n = 0; n < A.size(); ++n)
      EXPECT_EQ(a.main().divisors[k].second.sub.ideals[n].canonical(), b.main().divisors[k].second.sub.ideals[n].canonical());
  }
}

TEST(Deform, MultipleTwoPoints) {
  auto X1 = share(affine_space({"x"}));
  auto X2 = share(affine_space({"y"}));
  auto D = multiple_deformation_space({{"1", sub1(X1, {"x"})}, {"2", sub1(X2, {"y"})}});
  const auto& P = D.main();
  EXPECT_TRUE(gluing_defects(*P.total).empty());
  EXPECT_TRUE(section_defects(D).empty());
  EXPECT_EQ(P.divisors.size(), 4u);
  EXPECT_EQ(P.divisors[0].first, "E'_1+2");
  for (auto& [name, d] : P.divisors) EXPECT_TRUE(divisor_sound(d)) << name;
  EXPECT_FALSE(is_empty(P.divisor("E'_1+2").sub));
  // E'_1 and E'_2 are incomparable, hence disjoint
  EXPECT_TRUE(is_empty(intersect(P.divisor("E'_1").sub, P.divisor("E'_2").sub)));
}

TEST(Deform, Composite) {
  auto X = share(affine_space({"x", "y"}));
  auto D = composite_deformation_space(sub1(X, {"x", "y"}), sub1(X, {"y"}));
  EXPECT_EQ(D.pieces.size(), 4u);
  EXPECT_TRUE(composite_vanishing_defects(D).empty());
  EXPECT_TRUE(section_defects(D).empty());
  for (auto& P : D.pieces) EXPECT_TRUE(gluing_defects(*P.total).empty()) << P.name;
}
