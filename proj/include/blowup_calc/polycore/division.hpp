#pragma once

#include <optional>
#include <vector>

#include "polynomial.hpp"

namespace blowup_calc {

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

// multivariate division in the order of f's ring; full reduction (no remainder
// monomial is divisible by any leading monomial of the divisors)
inline DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  const Ring& R = f.ring();
  DivisionResult out;
  out.quotients.assign(divisors.size(), Polynomial(R));
  for (auto& d : divisors) {
    require_same_ring(R, d.ring(), "reduce");
    if (d.is_zero()) throw Error(ErrorKind::invalid_input, "zero divisor entry");
  }
  std::vector<Term> rem;
  std::vector<std::vector<Term>> q(divisors.size());
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& lt = p.terms().front();
    bool hit = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& d = divisors[i];
      if (mono_divides(d.lm(), lt.m)) {
        Monomial m = mono_div(lt.m, d.lm());
        Rational c = lt.c / d.lc();
        q[i].push_back({m, c});
        p = p.sub_mul(c, m, d);
        hit = true;
        break;
      }
    }
    if (!hit) {
      rem.push_back(lt);
      p.drop_lead();
    }
  }
  for (std::size_t i = 0; i < q.size(); ++i) out.quotients[i] = Polynomial(R, std::move(q[i]));
  out.remainder = Polynomial::from_sorted(R, std::move(rem));
  return out;
}

// division under an explicit order; results are returned in f's ring
inline DivisionResult reduce(const Polynomial& f, const std::vector<Polynomial>& divisors,
                             const MonomialOrder& order) {
  Ring R = with_order(f.ring(), order);
  std::vector<Polynomial> ds;
  for (auto& d : divisors) {
    require_same_ring(f.ring(), d.ring(), "reduce");
    ds.push_back(d.in_ring(R));
  }
  auto r = divide(f.in_ring(R), ds);
  for (auto& qi : r.quotients) qi = qi.in_ring(f.ring());
  r.remainder = r.remainder.in_ring(f.ring());
  return r;
}

// exact division f / g; nullopt if g does not divide f
inline std::optional<Polynomial> exact_div(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw Error(ErrorKind::invalid_input, "division by zero polynomial");
  auto r = divide(f, {g});
  if (!r.remainder.is_zero()) return std::nullopt;
  return r.quotients[0];
}

}  // namespace blowup_calc
