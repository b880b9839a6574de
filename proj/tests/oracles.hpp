#pragma once

// Independent reference implementations used to cross-check the engine.

#include <random>
#include <vector>

#include "blowup_calc/idealcalc/ideal.hpp"

namespace oracle {

using namespace blowup_calc;

// Buchberger with no pair criteria: every pair is reduced
inline std::vector<Polynomial> naive_groebner(std::vector<Polynomial> gens) {
  std::vector<Polynomial> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());
  if (G.empty()) return {};
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) todo.push_back({i, j});
  while (!todo.empty()) {
    auto [i, j] = todo.back();
    todo.pop_back();
    Polynomial r = divide(spoly(G[i], G[j]), G).remainder;
    if (r.is_zero()) continue;
    G.push_back(r.monic());
    for (std::size_t k = 0; k + 1 < G.size(); ++k) todo.push_back({k, G.size() - 1});
  }
  // minimalize, then interreduce
  std::vector<Polynomial> M;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < G.size() && !redundant; ++b) {
      if (a == b) continue;
      if (mono_divides(G[b].lm(), G[a].lm()) && (G[b].lm() != G[a].lm() || b < a)) redundant = true;
    }
    if (!redundant) M.push_back(G[a]);
  }
  std::vector<Polynomial> out;
  for (std::size_t a = 0; a < M.size(); ++a) {
    std::vector<Polynomial> others;
    for (std::size_t b = 0; b < M.size(); ++b)
      if (b != a) others.push_back(M[b]);
    out.push_back(divide(M[a], others).remainder.monic());
  }
  const Ring& R = out.front().ring();
  std::sort(out.begin(), out.end(), [&](auto& x, auto& y) { return R->cmp(x.lm(), y.lm()) > 0; });
  return out;
}

inline bool all_spolys_reduce(const std::vector<Polynomial>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!divide(spoly(G[i], G[j]), G).remainder.is_zero()) return false;
  return true;
}

inline Polynomial random_poly(std::mt19937& rng, const Ring& R, int maxdeg, int maxterms) {
  std::uniform_int_distribution<int> coef(-2, 2), nterms(1, maxterms), deg(0, maxdeg);
  std::vector<Term> terms;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    int d = deg(rng);
    Monomial m = unit_monomial(R->nvars());
    std::uniform_int_distribution<std::size_t> var(0, R->nvars() - 1);
    for (int e = 0; e < d; ++e) ++m[var(rng)];
    terms.push_back({m, Rational(coef(rng))});
  }
  return Polynomial(R, std::move(terms));
}

inline Ideal random_ideal(std::mt19937& rng, const Ring& R, int maxgens = 3, int maxdeg = 3) {
  std::uniform_int_distribution<int> ng(1, maxgens);
  std::vector<Polynomial> g;
  int n = ng(rng);
  while (static_cast<int>(g.size()) < n) {
    auto p = random_poly(rng, R, maxdeg, 3);
    if (!p.is_zero()) g.push_back(p);
  }
  return Ideal(R, g);
}

}  // namespace oracle
