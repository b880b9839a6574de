#include <gtest/gtest.h>

#include "blowup_calc/blowup/tower.hpp"
#include "blowup_calc/geom/iso.hpp"
#include "blowup_calc/geom/spaces.hpp"
#include "blowup_calc/polycore/parse.hpp"

using namespace blowup_calc;

namespace {

ClosedSubscheme sub1(AtlasPtr X, std::initializer_list<std::string_view> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(X->charts[0].ring, s));
  return make_subscheme(X, {g});
}

Lattice diamond() { return Lattice({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}); }

}  // namespace

TEST(Lattice, MeetsJoinsAndRank) {
  Lattice L = diamond();
  EXPECT_EQ(L.bottom(), 0u);
  EXPECT_EQ(L.top(), 3u);
  EXPECT_EQ(L.meet(1, 2), 0u);
  EXPECT_EQ(L.join(1, 2), 3u);
  EXPECT_EQ(L.rank(3), 2u);
  EXPECT_EQ(L.linear_extension(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(L.covers().size(), 4u);
}

TEST(Lattice, Invalid) {
  try {
    Lattice({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_lattice);
  }
  // two maximal elements: no join
  EXPECT_THROW(Lattice({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}), Error);
  EXPECT_THROW(Lattice({"a"}, {{"a", "z"}}), Error);
}

TEST(Lattice, PowerSetOpPlus) {
  Lattice L = Lattice::power_set_op_plus({"1", "2"});
  EXPECT_EQ(L.size(), 5u);
  EXPECT_EQ(L.name(L.bottom()), "1+2");
  EXPECT_EQ(L.name(L.top()), "top");
  EXPECT_EQ(L.name(L.meet(L.index("1"), L.index("2"))), "1+2");
  EXPECT_EQ(L.name(L.join(L.index("1"), L.index("2"))), "{}");
}

TEST(Excessive, Square) {
  auto X = share(affine_space({"x", "y"}));
  Square ok{sub1(X, {"x", "y"}), sub1(X, {"y"}), sub1(X, {"x"})};
  EXPECT_TRUE(excessive_check_square(ok));
  Square fat{sub1(X, {"x", "y"}), sub1(X, {"y"}), sub1(X, {"x^2"})};
  EXPECT_FALSE(excessive_check_square(fat));
  Square bad{sub1(X, {"x"}), sub1(X, {"y"}), sub1(X, {"x"})};
  EXPECT_THROW(excessive_check_square(bad), Error);
}

TEST(Excessive, Lattice) {
  auto X = share(affine_space({"x", "y"}));
  auto d = make_diagram(diamond(), {sub1(X, {"x", "y"}), sub1(X, {"x"}), sub1(X, {"y"}), whole(X)});
  EXPECT_TRUE(excessive_check_lattice(d));
  // not even monotone, but the meet condition is what fails first
  PosetDiagram fat{diamond(), {sub1(X, {"x^2", "y"}), sub1(X, {"x"}), sub1(X, {"y"}), whole(X)}};
  EXPECT_FALSE(excessive_check_lattice(fat));
  EXPECT_THROW(make_diagram(diamond(), {sub1(X, {"x"}), sub1(X, {"x", "y"}), sub1(X, {"y"}), whole(X)}), Error);
  Lattice chain({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}});
  EXPECT_TRUE(excessive_check_lattice(make_diagram(chain, {sub1(X, {"x", "y"}), sub1(X, {"y"}), whole(X)})));
}

TEST(PosetBlowup, TwoAxes) {
  auto X = share(affine_space({"x", "y"}));
  auto d = make_diagram(diamond(), {sub1(X, {"x", "y"}), sub1(X, {"x"}), sub1(X, {"y"}), whole(X)});
  auto R = poset_blow_up(d);
  EXPECT_EQ(R.atlas->size(), 2u);
  for (auto& s : poset_defects(d, R)) ADD_FAILURE() << s;
  EXPECT_TRUE(gluing_defects(*R.atlas).empty());
  auto Rq = poset_blow_up(d, StrictMode::quotient_once);
  EXPECT_TRUE(poset_defects(d, Rq).empty());
}

TEST(PosetBlowup, SingletonIsPlainBlowup) {
  auto X = share(affine_space({"x", "y"}));
  Lattice L({"0", "1"}, {{"0", "1"}});
  auto d = make_diagram(L, {sub1(X, {"x", "y"}), whole(X)});
  auto R = poset_blow_up(d);
  auto B = blow_up(sub1(X, {"x", "y"}));
  ASSERT_EQ(R.atlas->size(), B.result->size());
  for (std::size_t n = 0; n < B.result->size(); ++n)
    EXPECT_EQ(R.strict_exceptionals[0]->gens[n], B.exceptional.gens[n]);
  for (auto& s : poset_defects(d, R)) ADD_FAILURE() << s;
}

TEST(PosetBlowup, ThreePlanesInSpace) {
  auto X = share(affine_space({"x", "y", "z"}));
  // coordinate axes arrangement: origin < three lines < ambient
  Lattice L({"0", "lx", "ly", "lz", "1"},
            {{"0", "lx"}, {"0", "ly"}, {"0", "lz"}, {"lx", "1"}, {"ly", "1"}, {"lz", "1"}});
  auto d = make_diagram(L, {sub1(X, {"x", "y", "z"}), sub1(X, {"y", "z"}), sub1(X, {"x", "z"}), sub1(X, {"x", "y"}), whole(X)});
  ASSERT_TRUE(excessive_check_lattice(d));
  auto R = poset_blow_up(d);
  for (auto& s : poset_defects(d, R)) ADD_FAILURE() << s;
  EXPECT_TRUE(gluing_defects(*R.atlas).empty());
}

TEST(PushoutBlowup, AxesBothOrders) {
  auto X = share(affine_space({"x", "y"}));
  Square sq{sub1(X, {"x", "y"}), sub1(X, {"y"}), sub1(X, {"x"})};
  auto a = pushout_blow_up(sq, PushoutOrder::z_first);
  auto b = pushout_blow_up(sq, PushoutOrder::y_first);
  EXPECT_TRUE(cube_defects(a).empty());
  EXPECT_TRUE(cube_defects(b).empty());
  EXPECT_EQ(incidence(a), incidence(b));
}

TEST(PushoutBlowup, LinesInSpace) {
  auto X = share(affine_space({"x", "y", "z"}));
  Square sq{sub1(X, {"x", "y", "z"}), sub1(X, {"x", "z"}), sub1(X, {"y", "z"})};
  for (auto o : {PushoutOrder::z_first, PushoutOrder::y_first}) {
    auto R = pushout_blow_up(sq, o);
    EXPECT_TRUE(cube_defects(R).empty()) << to_string(o);
    EXPECT_TRUE(gluing_defects(*R.atlas).empty()) << to_string(o);
  }
  EXPECT_EQ(incidence(pushout_blow_up(sq, PushoutOrder::z_first)), incidence(pushout_blow_up(sq, PushoutOrder::y_first)));
}

TEST(PushoutBlowup, Degenerate) {
  auto X = share(affine_space({"x", "y"}));
  // W = Z = origin inside Y = x-axis
  Square wz{sub1(X, {"x", "y"}), sub1(X, {"x", "y"}), sub1(X, {"y"})};
  for (auto o : {PushoutOrder::z_first, PushoutOrder::y_first}) EXPECT_TRUE(cube_defects(pushout_blow_up(wz, o)).empty());
  // W = Y inside Z
  Square wy{sub1(X, {"x", "y"}), sub1(X, {"y"}), sub1(X, {"x", "y"})};
  for (auto o : {PushoutOrder::z_first, PushoutOrder::y_first}) EXPECT_TRUE(cube_defects(pushout_blow_up(wy, o)).empty());
}

TEST(StrictConormal, TwistByExceptional) {
  auto X = share(affine_space({"x", "y"}));
  Square sq{sub1(X, {"x", "y"}), sub1(X, {"y"}), sub1(X, {"x", "y"})};
  auto BY = blow_up(sq.Y);
  auto C = conormal_of_strict_transform(sq, BY);
  EXPECT_EQ(C.rank, 1u);
  EXPECT_EQ(C.strict.ideals[0].str(), "(u)");
  EXPECT_EQ(C.twist[0], 1u);
  EXPECT_TRUE(C.per_chart[0].free);
  // empty W: plain restriction, no twist
  Square far{empty_subscheme(X), sub1(X, {"y - 1"}), sub1(X, {"x", "y"})};
  auto C2 = conormal_of_strict_transform(far, blow_up(far.Y));
  for (auto k : C2.twist) EXPECT_EQ(k, 0u);
}
