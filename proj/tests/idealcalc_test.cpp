#include <gtest/gtest.h>

#include <random>

#include "blowup_calc/idealcalc/ideal.hpp"
#include "blowup_calc/idealcalc/ring_map.hpp"
#include "blowup_calc/polycore/parse.hpp"
#include "oracles.hpp"

using namespace blowup_calc;

namespace {

Ideal ideal(const Ring& R, std::initializer_list<std::string_view> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(R, s));
  return Ideal(R, g);
}

std::vector<std::string> strs(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (auto& p : ps) out.push_back(p.str());
  return out;
}

}  // namespace

TEST(Groebner, CollapsesToLinearFactor) {
  auto R = make_ring({"x"}, MonomialOrder::lex());
  auto gb = groebner_basis(ideal(R, {"x^2-1", "x-1"}).generators());
  EXPECT_EQ(strs(gb), std::vector<std::string>{"x - 1"});
}

TEST(Groebner, ZeroIdeal) { EXPECT_TRUE(groebner_basis({}).empty()); }

TEST(Groebner, TwistedCubicMatchesOracle) {
  auto R = make_ring({"z", "y", "x"}, MonomialOrder::lex());
  auto I = ideal(R, {"y-x^2", "z-x^3"});
  auto gb = groebner_basis(I.generators());
  EXPECT_EQ(strs(gb), strs(oracle::naive_groebner(I.generators())));
  EXPECT_TRUE(oracle::all_spolys_reduce(gb));
  auto s = strs(gb);
  EXPECT_NE(std::find(s.begin(), s.end(), "z - x^3"), s.end());
  EXPECT_NE(std::find(s.begin(), s.end(), "y - x^2"), s.end());
}

TEST(Groebner, IdempotentAndRandomOracle) {
  std::mt19937 rng(1234);
  for (int k = 0; k < 60; ++k) {
    auto R = make_ring({"x", "y", "z"}, k % 2 ? MonomialOrder::lex() : MonomialOrder::grevlex());
    auto I = oracle::random_ideal(rng, R);
    auto gb = groebner_basis(I.generators());
    EXPECT_EQ(strs(gb), strs(oracle::naive_groebner(I.generators())));
    EXPECT_EQ(strs(groebner_basis(gb)), strs(gb));
    for (auto& g : I.generators()) EXPECT_TRUE(normal_form(g, gb).is_zero());
  }
}

TEST(Membership, Basics) {
  auto R = make_ring({"x", "y"});
  EXPECT_TRUE(ideal(R, {"x", "y"}).contains(parse_polynomial(R, "x+y")));
  EXPECT_FALSE(ideal(R, {"x^2"}).contains(parse_polynomial(R, "x")));
  EXPECT_TRUE(ideal_equal(ideal(R, {"x-1"}), ideal(R, {"2*x-2"})));
}

TEST(SumProduct, Principal) {
  auto R = make_ring({"x", "y", "r"});
  EXPECT_TRUE(ideal_equal(ideal_product(ideal(R, {"x"}), ideal(R, {"y"})), ideal(R, {"x*y"})));
  EXPECT_TRUE(ideal_equal(ideal_sum(ideal(R, {"x"}), ideal(R, {"y"})), ideal(R, {"x", "y"})));
  EXPECT_TRUE(ideal_equal(ideal_product(ideal(R, {"r"}), ideal(R, {"r"})), ideal(R, {"r^2"})));
}

TEST(Intersection, Examples) {
  auto R = make_ring({"x", "y"});
  auto I = ideal_intersection(ideal(R, {"x"}), ideal(R, {"y"}));
  EXPECT_TRUE(ideal_equal(I, ideal(R, {"x*y"})));
  auto J = ideal(R, {"x^2+y", "x*y^2"});
  EXPECT_TRUE(ideal_equal(ideal_intersection(J, J), J));
  EXPECT_TRUE(ideal_equal(ideal_intersection(ideal(R, {"x^2"}), ideal(R, {"x"})), ideal(R, {"x^2"})));
}

TEST(Quotient, Examples) {
  auto R = make_ring({"x", "y"});
  auto x = parse_polynomial(R, "x"), y = parse_polynomial(R, "y");
  EXPECT_TRUE(ideal_equal(ideal_quotient(ideal(R, {"x*y"}), x), ideal(R, {"y"})));
  EXPECT_TRUE(ideal_equal(ideal_quotient(ideal(R, {"x"}), y), ideal(R, {"x"})));
  // (x^2 y, x y^2) : x^inf = (y)
  auto s = saturation(ideal(R, {"x^2*y", "x*y^2"}), x);
  EXPECT_TRUE(ideal_equal(s, ideal(R, {"y"})));
  EXPECT_TRUE(ideal_equal(s, saturation_rabinowitsch(ideal(R, {"x^2*y", "x*y^2"}), x)));
  EXPECT_THROW(ideal_quotient(ideal(R, {"x"}), Polynomial(R)), Error);
}

TEST(Eliminate, Examples) {
  auto R = make_ring({"x", "y"});
  EXPECT_TRUE(eliminate(ideal(R, {"y-x^2"}), {"y"}).is_zero() ||
              eliminate(ideal(R, {"y-x^2"}), {"y"}).gb().empty());
  EXPECT_TRUE(ideal_equal(eliminate(ideal(R, {"x"}), {}), ideal(R, {"x"})));
  auto S = make_ring({"u", "x", "y"});
  auto E = eliminate(ideal(S, {"u*x-y", "u*y-x^3"}), {"u"});
  // the resultant in u is x^4 - y^2 (up to sign)
  EXPECT_TRUE(E.contains(parse_polynomial(S, "y^2-x^4")));
  for (auto& g : E.gb()) EXPECT_FALSE(g.involves(0));
  EXPECT_THROW(eliminate(ideal(R, {"x"}), {"q"}), Error);
}

TEST(Nonzerodivisor, Examples) {
  auto R = make_ring({"x", "y"});
  auto x = parse_polynomial(R, "x");
  EXPECT_TRUE(is_nonzerodivisor(x, ideal(R, {"y"})));
  EXPECT_FALSE(is_nonzerodivisor(x, ideal(R, {"x*y"})));
  EXPECT_TRUE(is_nonzerodivisor(Polynomial::constant(R, 1), ideal(R, {"x^2*y", "y^3"})));
  EXPECT_THROW(is_nonzerodivisor(Polynomial(R), ideal(R, {"x"})), Error);
}

TEST(Pullback, Examples) {
  auto S = make_ring({"x", "y"});
  auto T = make_ring({"t"});
  RingMap phi(S, T, {parse_polynomial(T, "t"), Polynomial(T)});
  EXPECT_TRUE(ideal_equal(pullback_ideal(phi, ideal(S, {"x", "y"})), ideal(T, {"t"})));
  auto I = ideal(S, {"x^2-y", "x*y"});
  EXPECT_TRUE(ideal_equal(pullback_ideal(RingMap::identity(S), I), I));
  RingMap q = phi.with_modulus(ideal(T, {"t"}));
  auto P = pullback_ideal(q, ideal(S, {"x"}));
  EXPECT_TRUE(ideal_equal(P, ideal(T, {"t"})));
  EXPECT_FALSE(P.is_unit());
}

TEST(Lift, CofactorsReproduceElement) {
  std::mt19937 rng(99);
  auto R = make_ring({"x", "y", "z"});
  for (int k = 0; k < 40; ++k) {
    auto I = oracle::random_ideal(rng, R);
    auto h = oracle::random_poly(rng, R, 2, 3);
    Polynomial f(R);
    for (auto& g : I.generators()) f += g * oracle::random_poly(rng, R, 1, 2);
    f += h * I.generators().front();
    auto c = lift(f, I.generators());
    ASSERT_TRUE(c.has_value());
    Polynomial back(R);
    for (std::size_t i = 0; i < c->size(); ++i) back += (*c)[i] * I.generators()[i];
    EXPECT_EQ(back, f);
  }
}

TEST(Syzygy, KoszulAndRandom) {
  auto R = make_ring({"x", "y"});
  auto g = ideal(R, {"x^2", "x*y"}).generators();
  auto S = syzygies(g);
  ASSERT_FALSE(S.empty());
  for (auto& row : S) EXPECT_TRUE((row[0] * g[0] + row[1] * g[1]).is_zero());
  // (y, -x) must be in the module: check by membership of (y,-x) in span via a direct witness
  bool found = false;
  for (auto& row : S)
    if (ideal_equal(principal(row[0]), principal(parse_polynomial(R, "y")))) found = true;
  EXPECT_TRUE(found);
  std::mt19937 rng(5);
  auto T = make_ring({"x", "y", "z"});
  for (int k = 0; k < 20; ++k) {
    auto I = oracle::random_ideal(rng, T);
    for (auto& row : syzygies(I.generators())) {
      Polynomial s(T);
      for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * I.generators()[i];
      EXPECT_TRUE(s.is_zero());
    }
  }
}

TEST(Laws, QuotientAndSaturation) {
  std::mt19937 rng(4321);
  auto R = make_ring({"x", "y", "z"});
  for (int k = 0; k < 30; ++k) {
    auto I = oracle::random_ideal(rng, R);
    auto f = oracle::random_poly(rng, R, 2, 2);
    if (f.is_zero()) continue;
    auto q = ideal_quotient(I, f);
    EXPECT_TRUE(q.contains(I));
    EXPECT_TRUE(ideal_equal(ideal_quotient(q, f), ideal_quotient(I, f * f)));
    auto s = saturation(I, f);
    EXPECT_TRUE(ideal_equal(saturation(s, f), s));
    EXPECT_TRUE(ideal_equal(s, saturation_rabinowitsch(I, f)));
  }
}
