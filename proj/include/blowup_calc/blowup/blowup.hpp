#pragma once

#include <map>

#include "../geom/atlas.hpp"
#include "../geom/simplify.hpp"
#include "parallel.hpp"

namespace blowup_calc {

struct BlowupResult {
  AtlasPtr source;
  ClosedSubscheme center;
  AtlasPtr result;
  Divisor exceptional;
  std::vector<std::size_t> parent;                         // source chart of each result chart
  std::vector<RingMap> projection;                         // R_parent -> R_chart
  std::vector<std::vector<Polynomial>> center_generators;  // per source chart
};

enum class StrictMode { quotient_once, saturate };

namespace detail {

struct ReesChart {
  Chart chart;
  RingMap proj;
  Polynomial exc;
  std::vector<Polynomial> u;  // image of every fiber coordinate, 1 at the own index
  std::size_t parent = 0, gen = 0;
};

struct ReesSource {
  std::vector<Polynomial> gens;
  std::vector<std::string> names;  // fiber coordinate per generator
  std::vector<ReesChart> charts;
};

inline ReesSource rees_charts(const Atlas& X, const ClosedSubscheme& Y, std::size_t c, const std::string& fiber) {
  ReesSource out;
  const Chart& src = X.charts[c];
  if (src.relations.is_unit()) return out;
  out.gens = minimal_generators(Y.ideals[c], src.relations);
  const std::size_t n = out.gens.size();
  const Ring& R = src.ring;
  for (std::size_t j = 0; j < n; ++j)
    out.names.push_back(fresh_name(*R, n == 2 ? fiber : fiber + std::to_string(j)));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> extra;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) extra.push_back(out.names[j]);
    Ring Ru = extend_ring(R, extra);
    Polynomial fi = out.gens[i].in_ring(Ru);
    auto rel = in_ring(src.relations.generators(), Ru);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) rel.push_back(Polynomial::variable(Ru, out.names[j]) * fi - out.gens[j].in_ring(Ru));
    Ideal J = saturation(Ideal(Ru, rel), fi);
    if (J.is_unit()) continue;
    std::string label = n == 1 ? src.label : src.label + "." + std::to_string(i);
    SimplifiedChart s = n == 1 ? SimplifiedChart{Chart{Ru, J, label}, RingMap::identity(Ru)}
                               : simplify_chart(Chart{Ru, Ideal(Ru, J.gb()), label});
    ReesChart rc{s.chart, RingMap(R, s.chart.ring, std::vector<Polynomial>(s.phi.images().begin(),
                                                                             s.phi.images().begin() + static_cast<long>(R->nvars()))),
                 s.phi.apply(fi), {}, c, i};
    for (std::size_t j = 0; j < n; ++j)
      rc.u.push_back(j == i ? Polynomial::constant(s.chart.ring, 1)
                            : s.phi.apply(Polynomial::variable(Ru, out.names[j])));
    out.charts.push_back(std::move(rc));
  }
  return out;
}

// cofactors of the b-generators in terms of the a-generators on the overlap,
// denominators cleared by a common power of the localizing element
struct SourceTransition {
  Gluing g;                                  // oriented (a, b)
  std::vector<std::vector<Polynomial>> c;    // c[k][l] in R_a
};

inline SourceTransition source_transition(const Atlas& X, const Gluing& g, const ReesSource& A, const ReesSource& B) {
  const Chart& ca = X.charts[g.i];
  const Ring& La = g.to_i.target();
  Ideal Lrel = localized_relations(ca, La, g.fi);
  std::vector<Polynomial> basis = in_ring(A.gens, La);
  for (auto& r : Lrel.generators()) basis.push_back(r);
  TrackedBasis tb = tracked_groebner(basis);
  std::vector<std::vector<Polynomial>> raw;
  long N = 0;
  std::size_t wi = La->nvars() - 1;
  for (auto& gb : B.gens) {
    auto cof = lift(g.to_i.apply(gb), tb);
    if (!cof)
      throw Error(ErrorKind::invalid_input, "center ideals disagree on the overlap " + ca.label + "/" + X.charts[g.j].label);
    cof->resize(A.gens.size());
    for (auto& p : *cof) N = std::max(N, p.degree_in(wi));
    raw.push_back(*cof);
  }
  SourceTransition out{g, {}};
  const Ring& R = ca.ring;
  for (auto& row : raw) {
    std::vector<Polynomial> cleared;
    for (auto& p : row) {
      auto [q, n] = clear_denominator(p, g.fi, R);
      cleared.push_back(q * g.fi.in_ring(R).pow(static_cast<unsigned>(N - static_cast<long>(n))));
    }
    out.c.push_back(std::move(cleared));
  }
  return out;
}

inline Gluing identity_gluing(const Chart& c, std::size_t idx) {
  Ring L = localized_ring(c.ring);
  Polynomial one = Polynomial::constant(c.ring, 1);
  RingMap to = RingMap::by_name(c.ring, L);
  return Gluing{idx, idx, one, one, to, to};
}

// localizing element in chart A and the map R_B -> L_A
inline std::optional<std::pair<Polynomial, RingMap>> rees_transition(const SourceTransition& T, const ReesChart& A,
                                                                     const ReesChart& B, const ReesSource& srcB) {
  const Ring& S = A.chart.ring;
  std::vector<Polynomial> q;
  for (auto& row : T.c) {
    Polynomial acc(S);
    for (std::size_t l = 0; l < row.size(); ++l) acc += A.proj.apply(row[l]) * A.u[l];
    q.push_back(acc);
  }
  Polynomial sa = A.proj.apply(T.g.fi);
  Polynomial loc = sa * q[B.gen];
  if (loc.is_zero()) return std::nullopt;
  Ring L = localized_ring(S);
  if (localized_relations(A.chart, L, loc).is_unit()) return std::nullopt;
  Polynomial w = inverse_var(L);
  const Ring& La = T.g.to_i.target();
  std::vector<Polynomial> sub;
  for (auto& im : A.proj.images()) sub.push_back(im.in_ring(L));
  sub.push_back(w * q[B.gen].in_ring(L));
  RingMap down(La, L, sub);
  const Ring& Rb = T.g.to_i.source();
  std::vector<Polynomial> images;
  for (auto& v : B.chart.ring->vars()) {
    if (auto i = Rb->index_of(v)) {
      images.push_back(down.apply(T.g.to_i.image(*i)));
      continue;
    }
    std::size_t k = 0;
    while (k == B.gen || srcB.names[k] != v) ++k;
    images.push_back(q[k].in_ring(L) * w * sa.in_ring(L));
  }
  return std::make_pair(loc, RingMap(B.chart.ring, L, images));
}

}  // namespace detail

// Rees-algebra charts of Bl_Y X; fiber coordinates are named after `fiber`
inline BlowupResult blow_up(const ClosedSubscheme& Y, const std::string& fiber = "u") {
  const Atlas& X = *Y.ambient;
  auto sources = parallel_map(X.size(), [&](std::size_t c) { return detail::rees_charts(X, Y, c, fiber); });
  Atlas out;
  std::vector<const detail::ReesChart*> flat;
  BlowupResult B;
  B.source = Y.ambient;
  B.center = Y;
  for (auto& s : sources) {
    B.center_generators.push_back(s.gens);
    for (auto& rc : s.charts) {
      flat.push_back(&rc);
      out.charts.push_back(rc.chart);
      B.parent.push_back(rc.parent);
      B.projection.push_back(rc.proj);
    }
  }
  // source transitions for every ordered pair of source charts with an overlap
  std::map<std::pair<std::size_t, std::size_t>, detail::SourceTransition> trans;
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = 0; b < X.size(); ++b) {
      if (sources[a].charts.empty() || sources[b].charts.empty()) continue;
      std::optional<Gluing> g = a == b ? detail::identity_gluing(X.charts[a], a) : X.gluing(a, b);
      if (!g) continue;
      trans.emplace(std::make_pair(a, b), detail::source_transition(X, *g, sources[a], sources[b]));
    }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < flat.size(); ++p)
    for (std::size_t q = p + 1; q < flat.size(); ++q)
      if (trans.count({flat[p]->parent, flat[q]->parent})) pairs.emplace_back(p, q);
  auto glued = parallel_map(pairs.size(), [&](std::size_t n) -> std::optional<Gluing> {
    auto [p, q] = pairs[n];
    const auto& A = *flat[p];
    const auto& Bq = *flat[q];
    auto tp = detail::rees_transition(trans.at({A.parent, Bq.parent}), A, Bq, sources[Bq.parent]);
    if (!tp) return std::nullopt;
    auto tq = detail::rees_transition(trans.at({Bq.parent, A.parent}), Bq, A, sources[A.parent]);
    if (!tq) return std::nullopt;
    return Gluing{p, q, tp->first, tq->first, tp->second, tq->second};
  });
  for (auto& g : glued)
    if (g) out.gluings.push_back(std::move(*g));
  B.result = share(std::move(out));
  std::vector<Polynomial> exc;
  for (auto* rc : flat) exc.push_back(rc->exc);
  B.exceptional = make_divisor(B.result, exc);
  return B;
}

// pullback of I_Z along the projection
inline ClosedSubscheme total_transform(const BlowupResult& B, const ClosedSubscheme& Z) {
  if (Z.ambient != B.source) throw Error(ErrorKind::invalid_input, "subscheme does not live on the blown-up space");
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t n = 0; n < B.result->size(); ++n)
    gens.push_back(B.projection[n].apply(Z.ideals[B.parent[n]].generators()));
  return make_subscheme(B.result, gens);
}

inline ClosedSubscheme strict_transform(const BlowupResult& B, const ClosedSubscheme& Z,
                                        StrictMode mode = StrictMode::saturate) {
  ClosedSubscheme T = total_transform(B, Z);
  if (mode == StrictMode::quotient_once) return subtract_divisor(T, B.exceptional);
  for (std::size_t n = 0; n < T.ideals.size(); ++n) T.ideals[n] = saturation(T.ideals[n], B.exceptional.gens[n]);
  return T;
}

// the divisor whose chart ideals are those of D; each chart ideal must be
// principal modulo the relations
inline Divisor as_divisor(const ClosedSubscheme& D) {
  std::vector<Polynomial> gens;
  for (std::size_t c = 0; c < D.ideals.size(); ++c) {
    const Chart& ch = D.ambient->charts[c];
    const Ideal& I = D.ideals[c];
    if (I.is_unit()) {
      gens.push_back(Polynomial::constant(ch.ring, 1));
      continue;
    }
    auto mg = minimal_generators(I, ch.relations);
    std::optional<Polynomial> pick;
    if (mg.size() == 1) pick = mg[0];
    for (std::size_t k = 0; !pick && k < I.gb().size(); ++k)
      if (ideal_equal(ideal_sum(ch.relations, {I.gb()[k]}), I)) pick = I.gb()[k];
    if (!pick) throw Error(ErrorKind::invalid_input, "ideal is not principal on chart " + ch.label);
    gens.push_back(*pick);
  }
  return Divisor{D, std::move(gens)};
}

inline Divisor pullback_divisor(const BlowupResult& B, const Divisor& D) {
  if (D.sub.ambient != B.source) throw Error(ErrorKind::invalid_input, "divisor does not live on the blown-up space");
  std::vector<Polynomial> gens;
  for (std::size_t n = 0; n < B.result->size(); ++n) gens.push_back(B.projection[n].apply(D.gens[B.parent[n]]));
  return make_divisor(B.result, gens);
}

inline Divisor strict_divisor(const BlowupResult& B, const Divisor& D, StrictMode mode = StrictMode::saturate) {
  return as_divisor(strict_transform(B, D.sub, mode));
}

// charts where pullback(I_center) != (e) or e is a zero divisor
inline std::vector<std::string> universal_defects(const BlowupResult& B) {
  std::vector<std::string> out;
  ClosedSubscheme T = total_transform(B, B.center);
  for (std::size_t n = 0; n < B.result->size(); ++n) {
    const Chart& c = B.result->charts[n];
    if (!ideal_equal(T.ideals[n], B.exceptional.sub.ideals[n])) out.push_back(c.label + ": pullback differs from exceptional");
    if (!is_nonzerodivisor(B.exceptional.gens[n], c.relations)) out.push_back(c.label + ": exceptional is a zero divisor");
  }
  return out;
}

// chartwise comparison of the two strict transform modes; nullopt when they
// agree, otherwise the first chart where they differ
struct ModeWitness {
  std::string chart;
  Ideal quotient_once, saturate;
};

inline std::optional<ModeWitness> strict_mode_disagreement(const BlowupResult& B, const ClosedSubscheme& Z) {
  ClosedSubscheme q = strict_transform(B, Z, StrictMode::quotient_once);
  ClosedSubscheme s = strict_transform(B, Z, StrictMode::saturate);
  for (std::size_t n = 0; n < q.ideals.size(); ++n)
    if (!ideal_equal(q.ideals[n], s.ideals[n])) return ModeWitness{B.result->charts[n].label, q.ideals[n], s.ideals[n]};
  return std::nullopt;
}

}  // namespace blowup_calc
