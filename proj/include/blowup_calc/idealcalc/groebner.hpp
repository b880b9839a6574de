#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "../polycore/division.hpp"
#include "../polycore/polynomial.hpp"

namespace blowup_calc {

// full normal form of f with respect to G (G need not be a basis)
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
  if (G.empty() || f.is_zero()) return f;
  std::vector<Term> rem;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& lt = p.terms().front();
    const Polynomial* hit = nullptr;
    for (auto& g : G) {
      if (!g.is_zero() && mono_divides(g.lm(), lt.m)) {
        hit = &g;
        break;
      }
    }
    if (hit) {
      p = p.sub_mul(lt.c / hit->lc(), mono_div(lt.m, hit->lm()), *hit);
    } else {
      rem.push_back(lt);
      p.drop_lead();
    }
  }
  return Polynomial::from_sorted(f.ring(), std::move(rem));
}

inline Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  Monomial l = mono_lcm(f.lm(), g.lm());
  Polynomial a = f.mul_term(1 / f.lc(), mono_div(l, f.lm()));
  return a.sub_mul(1 / g.lc(), mono_div(l, g.lm()), g);
}

namespace detail {

struct GBElem {
  Polynomial p;
  std::vector<Polynomial> cof;  // empty unless tracking
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const std::vector<Polynomial>& gens, bool track, bool criteria)
      : track_(track), criteria_(criteria) {
    if (gens.empty()) return;
    R_ = gens.front().ring();
    zero_ = Polynomial(R_);
    n_ = gens.size();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      require_same_ring(R_, gens[k].ring(), "groebner_basis");
      GBElem e{gens[k], {}};
      if (track_) {
        e.cof.assign(n_, zero_);
        e.cof[k] = Polynomial::constant(R_, 1);
      }
      add(reduce(std::move(e)));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        int c = R_->cmp(pairs_[k].lcm, pairs_[best].lcm);
        if (c < 0 || (c == 0 && std::make_pair(pairs_[k].j, pairs_[k].i) <
                                    std::make_pair(pairs_[best].j, pairs_[best].i)))
          best = k;
      }
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<long>(best));
      GBElem s = make_spoly(pr);
      GBElem h = reduce(std::move(s));
      if (!h.p.is_zero()) add(std::move(h));
    }
  }

  // active elements, made monic; not yet interreduced
  std::vector<GBElem> active() const {
    std::vector<GBElem> out;
    for (std::size_t k : G_) out.push_back(elems_[k]);
    return out;
  }

  std::vector<Polynomial> reduced() const {
    std::vector<Polynomial> basis;
    for (std::size_t k : G_) basis.push_back(elems_[k].p);
    std::vector<Polynomial> out;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      // tail-reduce against the others; the leading term is untouched since G is minimal
      std::vector<Polynomial> others;
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (b != a) others.push_back(basis[b]);
      Polynomial lead = Polynomial::monomial(R_, basis[a].lm(), basis[a].lc());
      Polynomial tail = basis[a] - lead;
      out.push_back((lead + normal_form(tail, others)).monic());
    }
    std::sort(out.begin(), out.end(),
              [&](const Polynomial& x, const Polynomial& y) { return R_->cmp(x.lm(), y.lm()) > 0; });
    return out;
  }

 private:
  GBElem make_spoly(const Pair& pr) const {
    const GBElem& f = elems_[pr.i];
    const GBElem& g = elems_[pr.j];
    Monomial mf = mono_div(pr.lcm, f.p.lm());
    Monomial mg = mono_div(pr.lcm, g.p.lm());
    Rational cf = 1 / f.p.lc();
    Rational cg = 1 / g.p.lc();
    GBElem s{f.p.mul_term(cf, mf).sub_mul(cg, mg, g.p), {}};
    if (track_) {
      s.cof.resize(n_, zero_);
      for (std::size_t k = 0; k < n_; ++k) s.cof[k] = f.cof[k].mul_term(cf, mf).sub_mul(cg, mg, g.cof[k]);
    }
    return s;
  }

  GBElem reduce(GBElem e) const {
    std::vector<Term> rem;
    Polynomial p = std::move(e.p);
    while (!p.is_zero()) {
      const Term& lt = p.terms().front();
      const GBElem* hit = nullptr;
      for (std::size_t k : G_) {
        if (mono_divides(elems_[k].p.lm(), lt.m)) {
          hit = &elems_[k];
          break;
        }
      }
      if (hit) {
        Rational c = lt.c / hit->p.lc();
        Monomial m = mono_div(lt.m, hit->p.lm());
        if (track_)
          for (std::size_t k = 0; k < n_; ++k) e.cof[k] = e.cof[k].sub_mul(c, m, hit->cof[k]);
        p = p.sub_mul(c, m, hit->p);
      } else {
        rem.push_back(lt);
        p.drop_lead();
      }
    }
    e.p = Polynomial::from_sorted(R_, std::move(rem));
    if (!e.p.is_zero() && e.p.lc() != 1) {
      Rational inv = 1 / e.p.lc();
      e.p = e.p.scale(inv);
      for (auto& c : e.cof) c = c.scale(inv);
    }
    return e;
  }

  void add(GBElem h) {
    if (h.p.is_zero()) return;
    std::size_t hi = elems_.size();
    elems_.push_back(std::move(h));
    const Monomial& lh = elems_[hi].p.lm();
    if (!criteria_) {
      for (std::size_t k : G_) pairs_.push_back({k, hi, mono_lcm(elems_[k].p.lm(), lh)});
      G_.push_back(hi);
      return;
    }
    // Gebauer-Moeller update
    std::vector<Pair> C;
    for (std::size_t k : G_) C.push_back({k, hi, mono_lcm(elems_[k].p.lm(), lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p1 = C[a];
      bool keep = mono_coprime(lh, elems_[p1.i].p.lm());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (mono_divides(C[b].lcm, p1.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (mono_divides(D[b].lcm, p1.lcm)) keep = false;
      }
      if (keep) D.push_back(p1);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!mono_coprime(lh, elems_[p.i].p.lm())) E.push_back(p);
    std::vector<Pair> nb;
    for (auto& p : pairs_) {
      bool drop = mono_divides(lh, p.lcm) && mono_lcm(elems_[p.i].p.lm(), lh) != p.lcm &&
                  mono_lcm(lh, elems_[p.j].p.lm()) != p.lcm;
      if (!drop) nb.push_back(p);
    }
    for (auto& p : E) nb.push_back(p);
    pairs_ = std::move(nb);
    std::vector<std::size_t> ng;
    for (std::size_t k : G_)
      if (!mono_divides(lh, elems_[k].p.lm())) ng.push_back(k);
    ng.push_back(hi);
    G_ = std::move(ng);
  }

  bool track_, criteria_;
  Ring R_;
  Polynomial zero_;
  std::size_t n_ = 0;
  std::vector<GBElem> elems_;
  std::vector<std::size_t> G_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

// unique reduced Groebner basis in the default order of the generators' ring,
// sorted by leading monomial descending; zero generators are ignored
inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> nz;
  for (auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return {};
  for (auto& g : nz)
    if (g.is_constant()) return {Polynomial::constant(g.ring(), 1)};
  return detail::Buchberger(nz, false, true).reduced();
}

inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (gens.empty()) return {};
  Ring R = with_order(gens.front().ring(), order);
  auto gb = groebner_basis(in_ring(gens, R));
  return gb;
}

// Groebner basis carrying, for each element, cofactors with respect to the input
struct TrackedBasis {
  Ring ring;
  std::size_t ngens = 0;
  std::vector<Polynomial> basis;
  std::vector<std::vector<Polynomial>> cof;
};

inline TrackedBasis tracked_groebner(const std::vector<Polynomial>& gens, bool criteria = true) {
  TrackedBasis tb;
  tb.ngens = gens.size();
  if (gens.empty()) return tb;
  tb.ring = gens.front().ring();
  // zero generators keep their slot so cofactor indices match the input
  std::vector<Polynomial> work;
  std::vector<std::size_t> slot;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!gens[k].is_zero()) {
      work.push_back(gens[k]);
      slot.push_back(k);
    }
  if (work.empty()) return tb;
  detail::Buchberger bb(work, true, criteria);
  Polynomial zero(tb.ring);
  for (auto& e : bb.active()) {
    tb.basis.push_back(e.p);
    std::vector<Polynomial> c(gens.size(), zero);
    for (std::size_t k = 0; k < slot.size(); ++k) c[slot[k]] = e.cof[k];
    tb.cof.push_back(std::move(c));
  }
  return tb;
}

// f = sum c_k gens_k if f lies in the ideal
inline std::optional<std::vector<Polynomial>> lift(const Polynomial& f, const TrackedBasis& tb) {
  Polynomial zero(f.ring());
  std::vector<Polynomial> c(tb.ngens, zero);
  if (f.is_zero()) return c;
  if (tb.basis.empty()) return std::nullopt;
  auto d = divide(f, tb.basis);
  if (!d.remainder.is_zero()) return std::nullopt;
  for (std::size_t b = 0; b < tb.basis.size(); ++b) {
    if (d.quotients[b].is_zero()) continue;
    for (std::size_t k = 0; k < tb.ngens; ++k)
      if (!tb.cof[b][k].is_zero()) c[k] += d.quotients[b] * tb.cof[b][k];
  }
  return c;
}

inline std::optional<std::vector<Polynomial>> lift(const Polynomial& f, const std::vector<Polynomial>& gens) {
  return lift(f, tracked_groebner(gens));
}

// syzygies of (g_1..g_m): rows s with sum s_k g_k = 0, generating the syzygy module
// (Schreyer's construction over a criterion-free basis)
inline std::vector<std::vector<Polynomial>> syzygies(const std::vector<Polynomial>& gens) {
  std::vector<std::vector<Polynomial>> out;
  if (gens.empty()) return out;
  Ring R = gens.front().ring();
  Polynomial zero(R);
  const std::size_t m = gens.size();
  for (std::size_t k = 0; k < m; ++k)
    if (gens[k].is_zero()) {
      std::vector<Polynomial> row(m, zero);
      row[k] = Polynomial::constant(R, 1);
      out.push_back(std::move(row));
    }
  TrackedBasis tb = tracked_groebner(gens, false);
  const auto& G = tb.basis;
  auto add_row = [&](std::vector<Polynomial> row) {
    bool nz = false;
    for (auto& r : row) nz = nz || !r.is_zero();
    if (nz) out.push_back(std::move(row));
  };
  // S-pair syzygies of the basis, pulled back to the generators
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      Monomial l = mono_lcm(G[i].lm(), G[j].lm());
      Monomial mi = mono_div(l, G[i].lm());
      Monomial mj = mono_div(l, G[j].lm());
      Rational ci = 1 / G[i].lc(), cj = 1 / G[j].lc();
      Polynomial s = G[i].mul_term(ci, mi).sub_mul(cj, mj, G[j]);
      auto d = divide(s, G);
      std::vector<Polynomial> row(m, zero);
      for (std::size_t k = 0; k < m; ++k) {
        Polynomial v = tb.cof[i][k].mul_term(ci, mi).sub_mul(cj, mj, tb.cof[j][k]);
        for (std::size_t b = 0; b < G.size(); ++b)
          if (!d.quotients[b].is_zero()) v -= d.quotients[b] * tb.cof[b][k];
        row[k] = v;
      }
      add_row(std::move(row));
    }
  // g_k minus its expression through the basis
  for (std::size_t k = 0; k < m; ++k) {
    if (gens[k].is_zero()) continue;
    auto d = divide(gens[k], G);
    std::vector<Polynomial> row(m, zero);
    row[k] = Polynomial::constant(R, 1);
    for (std::size_t b = 0; b < G.size(); ++b)
      if (!d.quotients[b].is_zero())
        for (std::size_t j = 0; j < m; ++j) row[j] -= d.quotients[b] * tb.cof[b][j];
    add_row(std::move(row));
  }
  return out;
}

}  // namespace blowup_calc
