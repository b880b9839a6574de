#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "../idealcalc/ideal.hpp"
#include "../idealcalc/ring_map.hpp"

namespace blowup_calc {

// Spec(ring / relations)
struct Chart {
  Ring ring;
  Ideal relations;
  std::string label;
};

inline Chart make_chart(Ring r, std::string label, std::vector<Polynomial> rel = {}) {
  Ideal I(r, std::move(rel));
  return Chart{std::move(r), std::move(I), std::move(label)};
}

// R with one extra variable, the inverse of a localizing element; always the last variable
inline Ring localized_ring(const Ring& r) { return extend_ring(r, {fresh_name(*r, "w")}); }

inline Polynomial inverse_var(const Ring& localized) {
  return Polynomial::variable(localized, localized->nvars() - 1);
}

// chart i localized at fi is identified with chart j localized at fj.
// to_i : R_j -> L_i and to_j : R_i -> L_j, where L = R[w]/(rel, w f - 1).
struct Gluing {
  std::size_t i = 0, j = 0;
  Polynomial fi, fj;
  RingMap to_i, to_j;

  Gluing reversed() const { return Gluing{j, i, fj, fi, to_j, to_i}; }
};

struct Atlas {
  std::vector<Chart> charts;
  std::vector<Gluing> gluings;  // stored with i < j

  std::size_t size() const { return charts.size(); }

  // gluing oriented as (a, b); nullopt if the overlap is empty
  std::optional<Gluing> gluing(std::size_t a, std::size_t b) const {
    for (auto& g : gluings) {
      if (g.i == a && g.j == b) return g;
      if (g.i == b && g.j == a) return g.reversed();
    }
    return std::nullopt;
  }
};

using AtlasPtr = std::shared_ptr<const Atlas>;

inline AtlasPtr share(Atlas a) { return std::make_shared<const Atlas>(std::move(a)); }

// relations of L = R[w]/(rel, w f - 1)
inline Ideal localized_relations(const Chart& c, const Ring& L, const Polynomial& f) {
  auto g = in_ring(c.relations.generators(), L);
  g.push_back(inverse_var(L) * f.in_ring(L) - Polynomial::constant(L, 1));
  return Ideal(L, std::move(g));
}

// map from a localized ring L_src = R_src[w] into target: variables by name,
// w to w_image
inline RingMap extend_localized(const Ring& Lsrc, const Ring& target, const std::vector<Polynomial>& var_images,
                                const Polynomial& w_image) {
  std::vector<Polynomial> im = var_images;
  im.push_back(w_image);
  return RingMap(Lsrc, target, std::move(im));
}

// images of a localized-ring map transported into target: variables by name,
// the trailing inverse variable to w_image
inline std::vector<Polynomial> transport_images(const RingMap& to, const Ring& target, const Polynomial& w_image) {
  const Ring& L = to.target();
  std::vector<Polynomial> sub;
  for (std::size_t v = 0; v + 1 < L->nvars(); ++v) sub.push_back(Polynomial::variable(target, L->vars()[v]));
  sub.push_back(w_image);
  RingMap m(L, target, sub);
  return m.apply(to.images());
}

// product of factors, and the inverse of one factor as w times the others
struct LocalizingFactors {
  Ring ring;
  std::vector<Polynomial> factors;

  Polynomial product() const {
    Polynomial p = Polynomial::constant(ring, 1);
    for (auto& f : factors) p = p * f;
    return p;
  }
  Polynomial inverse(std::size_t k, const Polynomial& w) const {
    Polynomial p = w;
    for (std::size_t m = 0; m < factors.size(); ++m)
      if (m != k) p = p * factors[m].in_ring(w.ring());
    return p;
  }
};

// ---- closed subschemes and divisors

struct ClosedSubscheme {
  AtlasPtr ambient;
  std::vector<Ideal> ideals;  // per chart, always containing the chart relations
};

inline ClosedSubscheme make_subscheme(AtlasPtr X, const std::vector<std::vector<Polynomial>>& gens) {
  if (gens.size() != X->size()) throw Error(ErrorKind::dimension, "one ideal per chart required");
  ClosedSubscheme Y{X, {}};
  for (std::size_t c = 0; c < X->size(); ++c)
    Y.ideals.push_back(ideal_sum(X->charts[c].relations, gens[c]));
  return Y;
}

inline ClosedSubscheme whole(AtlasPtr X) {
  ClosedSubscheme Y{X, {}};
  for (auto& c : X->charts) Y.ideals.push_back(c.relations);
  return Y;
}

inline ClosedSubscheme empty_subscheme(AtlasPtr X) {
  ClosedSubscheme Y{X, {}};
  for (auto& c : X->charts) Y.ideals.push_back(Ideal::unit(c.ring));
  return Y;
}

struct Divisor {
  ClosedSubscheme sub;
  std::vector<Polynomial> gens;
};

inline Divisor make_divisor(AtlasPtr X, std::vector<Polynomial> gens) {
  std::vector<std::vector<Polynomial>> g;
  for (auto& p : gens) g.push_back({p});
  return Divisor{make_subscheme(X, g), std::move(gens)};
}

inline void require_same_ambient(const ClosedSubscheme& a, const ClosedSubscheme& b) {
  if (a.ambient != b.ambient) throw Error(ErrorKind::invalid_input, "subschemes live in different atlases");
}

// fiber product: ideal sums
inline ClosedSubscheme intersect(const ClosedSubscheme& Y, const ClosedSubscheme& Z) {
  require_same_ambient(Y, Z);
  ClosedSubscheme out{Y.ambient, {}};
  for (std::size_t c = 0; c < Y.ideals.size(); ++c) out.ideals.push_back(ideal_sum(Y.ideals[c], Z.ideals[c]));
  return out;
}

// classical model of Y + Z: ideal products (plus relations)
inline ClosedSubscheme add_closed(const ClosedSubscheme& Y, const ClosedSubscheme& Z) {
  require_same_ambient(Y, Z);
  ClosedSubscheme out{Y.ambient, {}};
  for (std::size_t c = 0; c < Y.ideals.size(); ++c)
    out.ideals.push_back(ideal_sum(Y.ambient->charts[c].relations, ideal_product(Y.ideals[c], Z.ideals[c])));
  return out;
}

inline ClosedSubscheme union_closed(const ClosedSubscheme& Y, const ClosedSubscheme& Z) {
  require_same_ambient(Y, Z);
  ClosedSubscheme out{Y.ambient, {}};
  for (std::size_t c = 0; c < Y.ideals.size(); ++c) out.ideals.push_back(ideal_intersection(Y.ideals[c], Z.ideals[c]));
  return out;
}

inline bool subscheme_equal(const ClosedSubscheme& Y, const ClosedSubscheme& Z) {
  require_same_ambient(Y, Z);
  for (std::size_t c = 0; c < Y.ideals.size(); ++c)
    if (!ideal_equal(Y.ideals[c], Z.ideals[c])) return false;
  return true;
}

inline bool is_empty(const ClosedSubscheme& Y) {
  for (auto& I : Y.ideals)
    if (!I.is_unit()) return false;
  return true;
}

// Y - D: chartwise quotient by the divisor generator
inline ClosedSubscheme subtract_divisor(const ClosedSubscheme& Y, const Divisor& D) {
  require_same_ambient(Y, D.sub);
  ClosedSubscheme out{Y.ambient, {}};
  for (std::size_t c = 0; c < Y.ideals.size(); ++c) {
    if (!D.sub.ideals[c].contains(Y.ideals[c]))
      throw Error(ErrorKind::not_a_subdivisor, "divisor is not contained in the subscheme on chart " +
                                                   Y.ambient->charts[c].label);
    out.ideals.push_back(ideal_quotient(Y.ideals[c], D.gens[c]));
  }
  return out;
}

// every divisor generator is a nonzerodivisor modulo the chart relations, and
// generates the chart ideal
inline bool divisor_sound(const Divisor& D) {
  for (std::size_t c = 0; c < D.gens.size(); ++c) {
    const auto& rel = D.sub.ambient->charts[c].relations;
    if (rel.is_unit()) continue;
    if (D.gens[c].is_zero() || !is_nonzerodivisor(D.gens[c], rel)) return false;
    if (!ideal_equal(D.sub.ideals[c], ideal_sum(rel, {D.gens[c]}))) return false;
  }
  return true;
}

// minimal generating list of I modulo rel: reduced basis in canonical string
// order, minus elements of rel, then greedily dropping redundant entries
inline std::vector<Polynomial> minimal_generators(const Ideal& I, const Ideal& rel) {
  std::vector<Polynomial> cand;
  for (auto& g : I.gb())
    if (!rel.contains(g)) cand.push_back(g);
  std::sort(cand.begin(), cand.end(), [](const Polynomial& a, const Polynomial& b) { return a.str() < b.str(); });
  for (std::size_t k = cand.size(); k-- > 0;) {
    if (cand.size() == 1) break;
    std::vector<Polynomial> rest;
    for (std::size_t m = 0; m < cand.size(); ++m)
      if (m != k) rest.push_back(cand[m]);
    if (ideal_sum(rel, rest).contains(cand[k])) cand.erase(cand.begin() + static_cast<long>(k));
  }
  return cand;
}

// p in R[w] with w = 1/f: returns (f^N p as an element of R, N)
inline std::pair<Polynomial, unsigned> clear_denominator(const Polynomial& p, const Polynomial& f, const Ring& R) {
  const Ring& L = p.ring();
  std::size_t wi = L->nvars() - 1;
  long N = std::max(0L, p.degree_in(wi));
  Polynomial out(R);
  std::vector<Polynomial> fpow{Polynomial::constant(R, 1)};
  for (long k = 1; k <= N; ++k) fpow.push_back(fpow.back() * f.in_ring(R));
  for (auto& t : p.terms()) {
    Monomial m = t.m;
    long k = m[wi];
    m[wi] = 0;
    Polynomial mono = Polynomial::monomial(L, m, t.c);
    out += mono.in_ring(R) * fpow[static_cast<std::size_t>(N - k)];
  }
  return {out, static_cast<unsigned>(N)};
}

// ---- consistency checks

// the transitions are mutually inverse on overlaps
inline std::vector<std::string> gluing_defects(const Atlas& A) {
  std::vector<std::string> out;
  for (auto& g0 : A.gluings) {
    for (const Gluing& g : {g0, g0.reversed()}) {
      const Chart& ci = A.charts[g.i];
      const Chart& cj = A.charts[g.j];
      const Ring& Li = g.to_i.target();
      Ideal Lrel = localized_relations(ci, Li, g.fi);
      // image of fj must be a unit on the overlap
      Polynomial fj_img = g.to_i.apply(g.fj);
      if (!ideal_sum(Lrel, {fj_img}).is_unit()) {
        out.push_back("gluing " + ci.label + "<-" + cj.label + ": localizing element not a unit");
        continue;
      }
      // relations of j are respected
      for (auto& r : cj.relations.generators())
        if (!Lrel.contains(g.to_i.apply(r)))
          out.push_back("gluing " + ci.label + "<-" + cj.label + ": relation not preserved");
      // to_i ∘ to_j = id, with w_j sent to the inverse of to_i(fj)
      Ring LL = extend_ring(Li, {fresh_name(*Li, "z")});
      Polynomial z = Polynomial::variable(LL, LL->nvars() - 1);
      Ideal LLrel = ideal_sum(Lrel.in_ring(LL), {z * fj_img.in_ring(LL) - Polynomial::constant(LL, 1)});
      std::vector<Polynomial> im;
      for (auto& p : g.to_i.images()) im.push_back(p.in_ring(LL));
      RingMap ext = extend_localized(g.to_j.target(), LL, im, z);
      for (std::size_t v = 0; v < ci.ring->nvars(); ++v) {
        Polynomial back = ext.apply(g.to_j.image(v));
        if (!LLrel.contains(back - Polynomial::variable(LL, ci.ring->vars()[v])))
          out.push_back("gluing " + ci.label + "<-" + cj.label + ": transitions not inverse on " + ci.ring->vars()[v]);
      }
    }
  }
  return out;
}

// chartwise ideals agree on overlaps
inline bool subscheme_compatible(const ClosedSubscheme& Y) {
  const Atlas& A = *Y.ambient;
  for (auto& g : A.gluings) {
    for (const Gluing& o : {g, g.reversed()}) {
      const Ring& Li = o.to_i.target();
      Ideal Lrel = localized_relations(A.charts[o.i], Li, o.fi);
      Ideal here = ideal_sum(Lrel, Y.ideals[o.i].in_ring(Li));
      Ideal there = ideal_sum(Lrel, o.to_i.apply(Y.ideals[o.j].generators()));
      if (!ideal_equal(here, there)) return false;
    }
  }
  return true;
}

// the closed subscheme as an atlas of its own; empty charts are dropped and
// gluings restricted
inline Atlas as_atlas(const ClosedSubscheme& Y) {
  const Atlas& A = *Y.ambient;
  Atlas out;
  std::vector<long> idx(A.size(), -1);
  for (std::size_t c = 0; c < A.size(); ++c) {
    if (Y.ideals[c].is_unit()) continue;
    idx[c] = static_cast<long>(out.charts.size());
    out.charts.push_back(Chart{A.charts[c].ring, Ideal(A.charts[c].ring, Y.ideals[c].gb()), A.charts[c].label});
  }
  for (auto& g : A.gluings) {
    if (idx[g.i] < 0 || idx[g.j] < 0) continue;
    Gluing h = g;
    h.i = static_cast<std::size_t>(idx[g.i]);
    h.j = static_cast<std::size_t>(idx[g.j]);
    const Chart& ci = out.charts[h.i];
    if (localized_relations(ci, h.to_i.target(), h.fi).is_unit()) continue;
    out.gluings.push_back(h);
  }
  return out;
}

}  // namespace blowup_calc
