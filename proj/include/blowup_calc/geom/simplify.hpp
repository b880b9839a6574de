#pragma once

#include "atlas.hpp"

namespace blowup_calc {

struct SimplifiedChart {
  Chart chart;
  RingMap phi;  // old ring -> new ring, an isomorphism modulo relations
};

namespace detail {

// g = c*v + h with c constant and v absent from h
inline std::optional<Polynomial> solve_linear(const Polynomial& g, std::size_t v) {
  const Term* lin = nullptr;
  for (auto& t : g.terms()) {
    if (t.m[v] == 0) continue;
    if (t.m[v] != 1 || total_degree(t.m) != 1 || lin) return std::nullopt;
    lin = &t;
  }
  if (!lin) return std::nullopt;
  Polynomial h = g - Polynomial::monomial(g.ring(), lin->m, lin->c);
  return h.scale(-1 / lin->c);
}

}  // namespace detail

// Repeatedly drop a variable that the relations express as a polynomial in the
// others. Prefers the lowest-index variable, so coordinates appended later
// (fiber coordinates) survive.
inline SimplifiedChart simplify_chart(const Chart& c) {
  Ring R = c.ring;
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < R->nvars(); ++i) images.push_back(Polynomial::variable(R, i));
  std::vector<Polynomial> rel = c.relations.gb();
  for (;;) {
    std::optional<std::pair<std::size_t, Polynomial>> pick;
    for (std::size_t v = 0; v < R->nvars() && !pick; ++v)
      for (auto& g : rel) {
        auto s = detail::solve_linear(g, v);
        if (s) {
          pick = std::make_pair(v, *s);
          break;
        }
      }
    if (!pick) break;
    auto [v, expr] = *pick;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < R->nvars(); ++i)
      if (i != v) vars.push_back(R->vars()[i]);
    Ring S = make_ring(vars, R->order().perm.empty() ? R->order() : MonomialOrder::grevlex());
    std::vector<Polynomial> sub;
    for (std::size_t i = 0; i < R->nvars(); ++i)
      sub.push_back(i == v ? expr.in_ring(S) : Polynomial::variable(S, R->vars()[i]));
    RingMap sigma(R, S, sub);
    for (auto& im : images) im = sigma.apply(im);
    rel = groebner_basis(sigma.apply(rel));
    R = S;
  }
  Chart out{R, Ideal(R, rel), c.label};
  return SimplifiedChart{out, RingMap(c.ring, R, images)};
}

}  // namespace blowup_calc
