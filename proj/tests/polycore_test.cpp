#include <gtest/gtest.h>

#include <random>

#include "blowup_calc/polycore/division.hpp"
#include "blowup_calc/polycore/parse.hpp"
#include "oracles.hpp"

using namespace blowup_calc;

namespace {

Ring xy() { return make_ring({"x", "y"}); }

Monomial mono(std::initializer_list<int> e) {
  Monomial m;
  for (int v : e) m.push_back(v);
  return m;
}

}  // namespace

TEST(Compare, LexPrefersHigherFirstExponent) {
  EXPECT_EQ(compare(MonomialOrder::lex(), mono({2, 1}), mono({1, 3})), Ordering::greater);
}

TEST(Compare, Reflexive) {
  for (auto o : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block_order(1)})
    EXPECT_EQ(compare(o, mono({1, 2, 3}), mono({1, 2, 3})), Ordering::equal);
}

TEST(Compare, GrevlexIsGraded) {
  EXPECT_EQ(compare(MonomialOrder::grevlex(), mono({1, 0}), mono({0, 2})), Ordering::less);
}

TEST(Compare, LengthMismatchThrows) {
  try {
    compare(MonomialOrder::lex(), mono({1}), mono({1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension);
  }
}

TEST(Compare, MultiplicativeAndOneMinimal) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<MonomialOrder> orders = {MonomialOrder::lex(), MonomialOrder::grevlex(),
                                       MonomialOrder::block_order(1), MonomialOrder::block_order(2, {2, 0, 1}),
                                       {OrderKind::lex, 0, {1, 2, 0}}};
  for (auto& o : orders)
    for (int k = 0; k < 200; ++k) {
      Monomial a = mono({d(rng), d(rng), d(rng)}), b = mono({d(rng), d(rng), d(rng)}), c = mono({d(rng), d(rng), d(rng)});
      EXPECT_EQ(compare(o, a, b), compare(o, mono_mul(a, c), mono_mul(b, c)));
      EXPECT_NE(compare(o, unit_monomial(3), a), Ordering::greater);
      // antisymmetry
      EXPECT_EQ(static_cast<int>(compare(o, a, b)), -static_cast<int>(compare(o, b, a)));
    }
}

TEST(Arith, Cancellation) {
  auto R = xy();
  EXPECT_EQ((parse_polynomial(R, "x+y") + parse_polynomial(R, "x-y")).str(), "2*x");
}

TEST(Arith, DifferenceOfSquares) {
  auto R = xy();
  EXPECT_EQ((parse_polynomial(R, "x+1") * parse_polynomial(R, "x-1")).str(), "x^2 - 1");
}

TEST(Arith, ScaleByZero) {
  auto R = xy();
  EXPECT_TRUE(parse_polynomial(R, "x^2+3*y").scale(0).is_zero());
}

TEST(Arith, RingMismatch) {
  auto R = xy();
  auto S = make_ring({"x", "z"});
  try {
    (void)(Polynomial::variable(R, 0) + Polynomial::variable(S, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ring_mismatch);
  }
}

TEST(Arith, RingAxiomsOnRandomPolys) {
  auto R = make_ring({"x", "y", "z"});
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto a = oracle::random_poly(rng, R, 3, 4), b = oracle::random_poly(rng, R, 3, 4), c = oracle::random_poly(rng, R, 3, 4);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Canonical, TextForm) {
  auto R = make_ring({"x1", "x2"});
  auto f = parse_polynomial(R, "x2*x1^2 - 3/6 + 2*x2^3/3");
  EXPECT_EQ(f.str(), "x1^2*x2 + 2/3*x2^3 - 1/2");
  EXPECT_EQ(parse_polynomial(R, f.str()), f);
}

TEST(Parse, ReportsPositionOfSecondStar) {
  auto R = xy();
  try {
    parse_polynomial(R, "x**");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.pos(), 2u);
  }
}

TEST(Parse, UnknownVariable) {
  EXPECT_THROW(parse_polynomial(xy(), "x+q"), Error);
}

TEST(Reduce, ExactDivision) {
  auto R = xy();
  auto r = divide(parse_polynomial(R, "x^2*y"), {parse_polynomial(R, "x")});
  EXPECT_EQ(r.quotients[0].str(), "x*y");
  EXPECT_TRUE(r.remainder.is_zero());
}

TEST(Reduce, SubstitutionRemainder) {
  auto R = make_ring({"x", "y"}, MonomialOrder::lex());
  auto r = divide(parse_polynomial(R, "x^2+y^2"), {parse_polynomial(R, "x-y")});
  EXPECT_EQ(r.remainder.str(), "2*y^2");
}

TEST(Reduce, SelfReduction) {
  auto R = xy();
  auto f = parse_polynomial(R, "x^3 - 2*x*y + 5");
  EXPECT_TRUE(divide(f, {f}).remainder.is_zero());
}

TEST(Reduce, ZeroDivisorRejected) {
  auto R = xy();
  try {
    divide(parse_polynomial(R, "x"), {Polynomial(R)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(Reduce, ReexpansionAndDivisibilityAllOrders) {
  auto R = make_ring({"x", "y", "z"});
  std::mt19937 rng(3);
  std::vector<MonomialOrder> orders = {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block_order(1)};
  for (auto& o : orders)
    for (int k = 0; k < 60; ++k) {
      auto f = oracle::random_poly(rng, R, 4, 5);
      std::vector<Polynomial> ds;
      for (int j = 0; j < 3; ++j) {
        auto d = oracle::random_poly(rng, R, 2, 3);
        if (!d.is_zero()) ds.push_back(d);
      }
      if (ds.empty()) continue;
      auto r = reduce(f, ds, o);
      Polynomial back = r.remainder;
      for (std::size_t i = 0; i < ds.size(); ++i) back += r.quotients[i] * ds[i];
      EXPECT_EQ(back, f);
      Ring Ro = with_order(R, o);
      for (auto& t : r.remainder.terms())
        for (auto& d : ds) EXPECT_FALSE(mono_divides(d.in_ring(Ro).lm(), t.m));
    }
}

TEST(Reduce, ExactProductsLeaveNoRemainder) {
  auto R = make_ring({"x", "y", "z"});
  std::mt19937 rng(5);
  for (int k = 0; k < 60; ++k) {
    auto f = oracle::random_poly(rng, R, 3, 4), g = oracle::random_poly(rng, R, 3, 4);
    if (g.is_zero()) continue;
    EXPECT_TRUE(divide(f * g, {g}).remainder.is_zero());
  }
}

TEST(Derivative, PowerRuleAndVanishing) {
  auto R = make_ring({"x", "y"});
  auto f = parse_polynomial(R, "y^2 - x^3 + 3*x*y");
  EXPECT_EQ(derivative(f, 0), parse_polynomial(R, "-3*x^2 + 3*y"));
  EXPECT_EQ(derivative(f, 1), parse_polynomial(R, "2*y + 3*x"));
  EXPECT_TRUE(derivative(parse_polynomial(R, "y^4"), 0).is_zero());
}
