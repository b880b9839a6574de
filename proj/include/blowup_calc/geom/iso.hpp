#pragma once

#include <set>

#include "atlas.hpp"

namespace blowup_calc {

// chart a of A paired with chart b of B; alpha : R_b -> R_a, beta : R_a -> R_b
struct ChartCorrespondence {
  std::size_t a = 0, b = 0;
  RingMap alpha, beta;
};

// chart a of A mapped into chart b of B by alpha : R_b -> R_a
struct ChartMorphism {
  std::size_t a = 0, b = 0;
  RingMap alpha;
};

struct IsoReport {
  bool ok = true;
  std::vector<std::string> problems;
  void fail(std::string s) {
    ok = false;
    problems.push_back(std::move(s));
  }
};

namespace detail {

// On the overlap of A's gluing g (charts g.i, g.j), check that chart maps alpha_i
// (into B chart bi) and alpha_j (into bj) agree through B's gluing gb (nullopt
// when bi == bj).
inline void check_gluing_square(const Atlas& A, const Atlas& B, const Gluing& g, std::size_t bi, std::size_t bj,
                                const RingMap& alpha_i, const RingMap& alpha_j, IsoReport& rep, bool same_open) {
  const Chart& ci = A.charts[g.i];
  const std::string tag = ci.label + "<-" + A.charts[g.j].label;
  const Ring& Li = g.to_i.target();
  Ideal Lrel = localized_relations(ci, Li, g.fi);
  Ring LL = extend_ring(Li, {fresh_name(*Li, "z")});
  Polynomial z = Polynomial::variable(LL, LL->nvars() - 1);
  std::optional<Gluing> gb;
  Polynomial fB_img;
  if (bi != bj) {
    gb = B.gluing(bi, bj);
    if (!gb) {
      rep.fail("overlap " + tag + " has no counterpart in the target");
      return;
    }
    fB_img = alpha_i.apply(gb->fi).in_ring(Li);
    if (!ideal_sum(Lrel, {fB_img}).is_unit()) {
      rep.fail("overlap " + tag + " does not land in the target overlap");
      return;
    }
    if (same_open) {
      // the target overlap pulled back is no larger than the source overlap
      Ring Rz = extend_ring(ci.ring, {fresh_name(*ci.ring, "z")});
      auto gens = in_ring(ci.relations.generators(), Rz);
      gens.push_back(Polynomial::variable(Rz, Rz->nvars() - 1) * alpha_i.apply(gb->fi).in_ring(Rz) -
                     Polynomial::constant(Rz, 1));
      gens.push_back(g.fi.in_ring(Rz));
      if (!Ideal(Rz, gens).is_unit()) rep.fail("overlap " + tag + " is smaller than the target overlap");
    }
  }
  std::vector<Polynomial> lgens = in_ring(Lrel.generators(), LL);
  if (gb) lgens.push_back(z * fB_img.in_ring(LL) - Polynomial::constant(LL, 1));
  Ideal LLrel(LL, lgens);
  // B chart bj coordinates, two ways into LL
  const Ring& Rbj = B.charts[bj].ring;
  std::optional<RingMap> via_b;
  if (gb) {
    std::vector<Polynomial> im;
    for (auto& p : alpha_i.images()) im.push_back(p.in_ring(LL));
    via_b = extend_localized(gb->to_i.target(), LL, im, z);
  }
  for (std::size_t v = 0; v < Rbj->nvars(); ++v) {
    Polynomial y = Polynomial::variable(Rbj, v);
    Polynomial lhs = gb ? via_b->apply(gb->to_i.apply(y)) : alpha_i.apply(y).in_ring(LL);
    Polynomial rhs = g.to_i.apply(alpha_j.apply(y)).in_ring(LL);
    if (!LLrel.contains(lhs - rhs)) {
      rep.fail("gluing square " + tag + " fails on " + Rbj->vars()[v]);
      return;
    }
  }
}

inline void check_relations(const Ideal& src_rel, const Ideal& dst_rel, const RingMap& m, const std::string& tag,
                            IsoReport& rep) {
  for (auto& r : src_rel.generators())
    if (!dst_rel.contains(m.apply(r))) {
      rep.fail(tag + ": relation " + r.str() + " not preserved");
      return;
    }
}

}  // namespace detail

// verifies a candidate isomorphism given as a chart pairing
inline IsoReport check_iso(const Atlas& A, const Atlas& B, const std::vector<ChartCorrespondence>& corr) {
  IsoReport rep;
  std::vector<long> toB(A.size(), -1), toA(B.size(), -1);
  std::vector<const ChartCorrespondence*> byA(A.size(), nullptr);
  for (auto& c : corr) {
    if (c.a >= A.size() || c.b >= B.size()) throw Error(ErrorKind::coverage, "chart index out of range");
    if (toB[c.a] >= 0 || toA[c.b] >= 0) throw Error(ErrorKind::coverage, "chart paired twice");
    toB[c.a] = static_cast<long>(c.b);
    toA[c.b] = static_cast<long>(c.a);
    byA[c.a] = &c;
  }
  for (std::size_t a = 0; a < A.size(); ++a)
    if (toB[a] < 0) throw Error(ErrorKind::coverage, "chart " + A.charts[a].label + " missing in correspondence");
  for (std::size_t b = 0; b < B.size(); ++b)
    if (toA[b] < 0) throw Error(ErrorKind::coverage, "chart " + B.charts[b].label + " missing in correspondence");
  for (auto& c : corr) {
    const Chart& ca = A.charts[c.a];
    const Chart& cb = B.charts[c.b];
    std::string tag = ca.label + "~" + cb.label;
    detail::check_relations(cb.relations, ca.relations, c.alpha, tag, rep);
    detail::check_relations(ca.relations, cb.relations, c.beta, tag, rep);
    for (std::size_t v = 0; v < ca.ring->nvars(); ++v) {
      Polynomial x = Polynomial::variable(ca.ring, v);
      if (!ca.relations.contains(c.alpha.apply(c.beta.apply(x)) - x)) {
        rep.fail(tag + ": maps do not compose to the identity on " + ca.ring->vars()[v]);
        break;
      }
    }
    for (std::size_t v = 0; v < cb.ring->nvars(); ++v) {
      Polynomial y = Polynomial::variable(cb.ring, v);
      if (!cb.relations.contains(c.beta.apply(c.alpha.apply(y)) - y)) {
        rep.fail(tag + ": maps do not compose to the identity on " + cb.ring->vars()[v]);
        break;
      }
    }
  }
  if (!rep.ok) return rep;
  for (auto& g0 : A.gluings)
    for (const Gluing& g : {g0, g0.reversed()}) {
      auto bi = static_cast<std::size_t>(toB[g.i]), bj = static_cast<std::size_t>(toB[g.j]);
      detail::check_gluing_square(A, B, g, bi, bj, byA[g.i]->alpha, byA[g.j]->alpha, rep, true);
    }
  for (auto& g : B.gluings) {
    auto ai = static_cast<std::size_t>(toA[g.i]), aj = static_cast<std::size_t>(toA[g.j]);
    if (!A.gluing(ai, aj)) rep.fail("target overlap " + B.charts[g.i].label + "," + B.charts[g.j].label + " has no counterpart");
  }
  return rep;
}

// verifies a morphism A -> B given chartwise
inline IsoReport check_morphism(const Atlas& A, const Atlas& B, const std::vector<ChartMorphism>& maps) {
  IsoReport rep;
  std::vector<const ChartMorphism*> byA(A.size(), nullptr);
  for (auto& m : maps) {
    if (m.a >= A.size() || m.b >= B.size()) throw Error(ErrorKind::coverage, "chart index out of range");
    byA[m.a] = &m;
  }
  for (std::size_t a = 0; a < A.size(); ++a)
    if (!byA[a]) throw Error(ErrorKind::coverage, "chart " + A.charts[a].label + " has no map");
  for (auto& m : maps)
    detail::check_relations(B.charts[m.b].relations, A.charts[m.a].relations, m.alpha,
                            A.charts[m.a].label + "->" + B.charts[m.b].label, rep);
  if (!rep.ok) return rep;
  for (auto& g0 : A.gluings)
    for (const Gluing& g : {g0, g0.reversed()})
      detail::check_gluing_square(A, B, g, byA[g.i]->b, byA[g.j]->b, byA[g.i]->alpha, byA[g.j]->alpha, rep, false);
  return rep;
}

}  // namespace blowup_calc
