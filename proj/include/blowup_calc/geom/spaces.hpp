#pragma once

#include <set>

#include "atlas.hpp"

namespace blowup_calc {

namespace detail {

inline std::string join_label(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace detail

inline Atlas affine_space(const std::vector<std::string>& names) {
  Atlas A;
  A.charts.push_back(make_chart(make_ring(names), "A"));
  return A;
}

inline Atlas affine_space(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return affine_space(names);
}

inline Atlas point() {
  Atlas A;
  A.charts.push_back(make_chart(make_ring({}), "pt"));
  return A;
}

// chart i of P^n has coordinates x_j / x_i, named names[i][j]
struct ProjFactor {
  std::size_t dim = 0;
  std::vector<std::vector<std::string>> names;
  std::vector<std::string> labels;
};

inline ProjFactor proj_factor(std::size_t n, const std::string& prefix = "p") {
  ProjFactor f;
  f.dim = n;
  f.names.assign(n + 1, std::vector<std::string>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    f.labels.push_back(prefix + std::to_string(i));
    for (std::size_t j = 0; j <= n; ++j)
      if (i != j) f.names[i][j] = prefix + std::to_string(i) + "_" + std::to_string(j);
  }
  return f;
}

// P^1 with chart coordinates t = x1/x0 and s = x0/x1
inline ProjFactor p1_factor(const std::string& t = "t", const std::string& s = "s") {
  ProjFactor f;
  f.dim = 1;
  f.names = {{"", t}, {s, ""}};
  f.labels = {t, s};
  return f;
}

// products of projective spaces with an affine factor
struct BaseSpace {
  std::vector<ProjFactor> proj;
  std::vector<std::string> affine;
};

// direct sum of line bundles O(d) on a BaseSpace, d a multidegree (one entry per
// projective factor). Total space is Spec Sym, projectivization is Proj Sym.
struct TwistedSum {
  BaseSpace base;
  std::vector<std::vector<int>> twists;
  std::size_t rank() const { return twists.size(); }
};

namespace detail {

struct BundleChart {
  std::vector<std::size_t> idx;  // chart index per projective factor
  std::size_t k = 0;             // fiber chart (projective bundles)
};

inline std::vector<std::vector<std::size_t>> base_tuples(const BaseSpace& B) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (auto& f : B.proj) {
    std::vector<std::vector<std::size_t>> next;
    for (auto& t : out)
      for (std::size_t i = 0; i <= f.dim; ++i) {
        auto u = t;
        u.push_back(i);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::string> base_vars(const BaseSpace& B, const std::vector<std::size_t>& idx) {
  std::vector<std::string> v;
  for (std::size_t r = 0; r < B.proj.size(); ++r)
    for (std::size_t j = 0; j <= B.proj[r].dim; ++j)
      if (j != idx[r]) v.push_back(B.proj[r].names[idx[r]][j]);
  for (auto& a : B.affine) v.push_back(a);
  return v;
}

inline std::string base_label(const BaseSpace& B, const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t r = 0; r < B.proj.size(); ++r) s = join_label(s, B.proj[r].labels[idx[r]]);
  if (!B.affine.empty()) s = join_label(s, "A");
  return s.empty() ? "pt" : s;
}

enum class BundleKind { total, proj };

inline std::string fiber_name(const std::string& prefix, std::size_t rank, std::size_t l) {
  return rank == 1 ? prefix : prefix + std::to_string(l);
}

inline std::string proj_fiber_name(const std::string& prefix, std::size_t k, std::size_t l) {
  return prefix + std::to_string(k) + "_" + std::to_string(l);
}

class BundleBuilder {
 public:
  BundleBuilder(const TwistedSum& E, BundleKind kind, std::string prefix)
      : E_(E), kind_(kind), prefix_(std::move(prefix)) {
    for (auto& d : E_.twists)
      if (d.size() != E_.base.proj.size())
        throw Error(ErrorKind::unsupported_base, "twist multidegree does not match the base");
    if (kind_ == BundleKind::proj && E_.rank() == 0)
      throw Error(ErrorKind::unsupported_base, "projectivization of the zero bundle");
    std::set<std::string> seen;
    for (auto& f : E_.base.proj)
      for (auto& row : f.names)
        for (auto& n : row)
          if (!n.empty() && !seen.insert(n).second) throw Error(ErrorKind::invalid_input, "duplicate name " + n);
  }

  Atlas build() {
    for (auto& idx : base_tuples(E_.base)) {
      std::size_t fibers = kind_ == BundleKind::proj ? E_.rank() : 1;
      for (std::size_t k = 0; k < fibers; ++k) cells_.push_back({idx, k});
    }
    Atlas A;
    for (auto& c : cells_) {
      auto vars = base_vars(E_.base, c.idx);
      std::string label = base_label(E_.base, c.idx);
      if (kind_ == BundleKind::total) {
        for (std::size_t l = 0; l < E_.rank(); ++l) vars.push_back(fiber_name(prefix_, E_.rank(), l));
      } else {
        for (std::size_t l = 0; l < E_.rank(); ++l)
          if (l != c.k) vars.push_back(proj_fiber_name(prefix_, c.k, l));
        if (E_.rank() > 1) label += "/" + std::to_string(c.k);
      }
      A.charts.push_back(make_chart(make_ring(vars), label));
    }
    for (std::size_t p = 0; p < cells_.size(); ++p)
      for (std::size_t q = p + 1; q < cells_.size(); ++q) {
        auto [fp, top] = transition(A, p, q);
        auto [fq, toq] = transition(A, q, p);
        A.gluings.push_back(Gluing{p, q, fp, fq, top, toq});
      }
    return A;
  }

 private:
  // localizing element in chart p and the map R_q -> L_p
  std::pair<Polynomial, RingMap> transition(const Atlas& A, std::size_t p, std::size_t q) const {
    const auto& a = cells_[p];
    const auto& b = cells_[q];
    const Ring& Rp = A.charts[p].ring;
    const Ring& Rq = A.charts[q].ring;
    Ring L = localized_ring(Rp);
    Polynomial w = inverse_var(L);
    LocalizingFactors F{Rp, {}};
    std::vector<long> tpos(E_.base.proj.size(), -1);
    for (std::size_t r = 0; r < E_.base.proj.size(); ++r)
      if (a.idx[r] != b.idx[r]) {
        tpos[r] = static_cast<long>(F.factors.size());
        F.factors.push_back(Polynomial::variable(Rp, E_.base.proj[r].names[a.idx[r]][b.idx[r]]));
      }
    long fpos = -1;
    if (kind_ == BundleKind::proj && a.k != b.k) {
      fpos = static_cast<long>(F.factors.size());
      F.factors.push_back(Polynomial::variable(Rp, proj_fiber_name(prefix_, a.k, b.k)));
    }
    auto var = [&](const std::string& n) { return Polynomial::variable(L, n); };
    auto one = Polynomial::constant(L, 1);
    auto tpow = [&](std::size_t r, int e) {
      if (tpos[r] < 0) return one;
      Polynomial base = e >= 0 ? F.factors[static_cast<std::size_t>(tpos[r])].in_ring(L)
                               : F.inverse(static_cast<std::size_t>(tpos[r]), w);
      return base.pow(static_cast<unsigned>(std::abs(e)));
    };
    auto twist = [&](const std::vector<int>& d) {
      Polynomial m = one;
      for (std::size_t r = 0; r < d.size(); ++r) m = m * tpow(r, d[r]);
      return m;
    };
    std::vector<Polynomial> im;
    for (auto& v : Rq->vars()) {
      Polynomial img = one;
      bool done = false;
      for (std::size_t r = 0; r < E_.base.proj.size() && !done; ++r) {
        const auto& f = E_.base.proj[r];
        for (std::size_t j = 0; j <= f.dim; ++j) {
          if (j == b.idx[r] || f.names[b.idx[r]][j] != v) continue;
          done = true;
          if (tpos[r] < 0)
            img = var(v);
          else if (j == a.idx[r])
            img = F.inverse(static_cast<std::size_t>(tpos[r]), w);
          else
            img = var(f.names[a.idx[r]][j]) * F.inverse(static_cast<std::size_t>(tpos[r]), w);
          break;
        }
      }
      if (!done)
        for (auto& x : E_.base.affine)
          if (x == v) {
            img = var(v);
            done = true;
          }
      if (!done && kind_ == BundleKind::total) {
        for (std::size_t l = 0; l < E_.rank() && !done; ++l)
          if (fiber_name(prefix_, E_.rank(), l) == v) {
            img = twist(E_.twists[l]) * var(fiber_name(prefix_, E_.rank(), l));
            done = true;
          }
      }
      if (!done && kind_ == BundleKind::proj) {
        for (std::size_t l = 0; l < E_.rank() && !done; ++l) {
          if (l == b.k || proj_fiber_name(prefix_, b.k, l) != v) continue;
          std::vector<int> d(E_.base.proj.size());
          for (std::size_t r = 0; r < d.size(); ++r) d[r] = E_.twists[l][r] - E_.twists[b.k][r];
          Polynomial el = l == a.k ? one : var(proj_fiber_name(prefix_, a.k, l));
          Polynomial inv_ek = fpos < 0 ? one : F.inverse(static_cast<std::size_t>(fpos), w);
          img = twist(d) * el * inv_ek;
          done = true;
        }
      }
      if (!done) throw Error(ErrorKind::unsupported_base, "cannot place variable " + v);
      im.push_back(img);
    }
    return {F.product(), RingMap(Rq, L, im)};
  }

  const TwistedSum& E_;
  BundleKind kind_;
  std::string prefix_;
  std::vector<BundleChart> cells_;
};

}  // namespace detail

inline Atlas base_atlas(const BaseSpace& B) {
  return detail::BundleBuilder(TwistedSum{B, {}}, detail::BundleKind::total, "v").build();
}

inline Atlas projective_space(const ProjFactor& f) { return base_atlas(BaseSpace{{f}, {}}); }
inline Atlas projective_space(std::size_t n, const std::string& prefix = "p") {
  return projective_space(proj_factor(n, prefix));
}

inline Atlas bundle_total(const TwistedSum& E, const std::string& fiber_prefix = "v") {
  return detail::BundleBuilder(E, detail::BundleKind::total, fiber_prefix).build();
}

inline Atlas bundle_proj(const TwistedSum& E, const std::string& fiber_prefix = "e") {
  return detail::BundleBuilder(E, detail::BundleKind::proj, fiber_prefix).build();
}

// P(sub-sum) inside P(E): the summands outside `keep` vanish
inline ClosedSubscheme proj_subbundle(const TwistedSum& E, AtlasPtr PE, const std::vector<std::size_t>& keep,
                                      const std::string& fiber_prefix = "e") {
  std::set<std::size_t> K(keep.begin(), keep.end());
  const std::size_t nfib = E.rank();
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t c = 0; c < PE->size(); ++c) {
    std::size_t k = c % nfib;
    const Ring& R = PE->charts[c].ring;
    if (!K.count(k)) {
      gens.push_back({Polynomial::constant(R, 1)});
      continue;
    }
    std::vector<Polynomial> g;
    for (std::size_t l = 0; l < nfib; ++l)
      if (!K.count(l)) g.push_back(Polynomial::variable(R, detail::proj_fiber_name(fiber_prefix, k, l)));
    gens.push_back(g);
  }
  return make_subscheme(std::move(PE), gens);
}

inline ClosedSubscheme zero_section(const TwistedSum& E, AtlasPtr VE, const std::string& fiber_prefix = "v") {
  std::vector<std::vector<Polynomial>> gens;
  for (auto& c : VE->charts) {
    std::vector<Polynomial> g;
    for (std::size_t l = 0; l < E.rank(); ++l)
      g.push_back(Polynomial::variable(c.ring, detail::fiber_name(fiber_prefix, E.rank(), l)));
    gens.push_back(g);
  }
  return make_subscheme(std::move(VE), gens);
}

// chartwise product; variable names of the factors must be disjoint
inline Atlas product(const Atlas& A, const Atlas& B) {
  Atlas P;
  for (auto& a : A.charts)
    for (auto& b : B.charts) {
      auto vars = a.ring->vars();
      for (auto& v : b.ring->vars()) {
        if (a.ring->has(v)) throw Error(ErrorKind::invalid_input, "product factors share variable " + v);
        vars.push_back(v);
      }
      Ring R = make_ring(vars);
      auto rel = in_ring(a.relations.generators(), R);
      for (auto& g : b.relations.generators()) rel.push_back(g.in_ring(R));
      P.charts.push_back(make_chart(R, detail::join_label(a.label, b.label), rel));
    }
  const std::size_t nb = B.size();
  // localizing element in chart p and map R_q -> L_p
  auto transition = [&](std::size_t p, std::size_t q) -> std::optional<std::pair<Polynomial, RingMap>> {
    std::size_t a = p / nb, b = p % nb, a2 = q / nb, b2 = q % nb;
    std::optional<Gluing> ga, gb;
    if (a != a2) {
      ga = A.gluing(a, a2);
      if (!ga) return std::nullopt;
    }
    if (b != b2) {
      gb = B.gluing(b, b2);
      if (!gb) return std::nullopt;
    }
    const Ring& Rp = P.charts[p].ring;
    const Ring& Rq = P.charts[q].ring;
    Ring L = localized_ring(Rp);
    Polynomial w = inverse_var(L);
    LocalizingFactors F{Rp, {}};
    long ia = -1, ib = -1;
    if (ga) {
      ia = static_cast<long>(F.factors.size());
      F.factors.push_back(ga->fi.in_ring(Rp));
    }
    if (gb) {
      ib = static_cast<long>(F.factors.size());
      F.factors.push_back(gb->fi.in_ring(Rp));
    }
    std::vector<Polynomial> imA, imB;
    if (ga) imA = transport_images(ga->to_i, L, F.inverse(static_cast<std::size_t>(ia), w));
    if (gb) imB = transport_images(gb->to_i, L, F.inverse(static_cast<std::size_t>(ib), w));
    std::vector<Polynomial> im;
    const Ring& RA = A.charts[a2].ring;
    const Ring& RB = B.charts[b2].ring;
    for (std::size_t v = 0; v < Rq->nvars(); ++v) {
      const std::string& name = Rq->vars()[v];
      if (auto i = RA->index_of(name))
        im.push_back(ga ? imA[*i] : Polynomial::variable(L, name));
      else if (auto j = RB->index_of(name))
        im.push_back(gb ? imB[*j] : Polynomial::variable(L, name));
    }
    return std::make_pair(F.product(), RingMap(Rq, L, im));
  };
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = p + 1; q < P.size(); ++q) {
      auto tp = transition(p, q);
      auto tq = transition(q, p);
      if (!tp || !tq) continue;
      P.gluings.push_back(Gluing{p, q, tp->first, tq->first, tp->second, tq->second});
    }
  return P;
}

// closed subscheme of A pulled to A x B (chart a x b gets the ideal of chart a)
inline ClosedSubscheme product_pullback_left(const ClosedSubscheme& Y, AtlasPtr AxB, std::size_t nb) {
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t p = 0; p < AxB->size(); ++p)
    gens.push_back(in_ring(Y.ideals[p / nb].generators(), AxB->charts[p].ring));
  return make_subscheme(std::move(AxB), gens);
}

inline ClosedSubscheme product_pullback_right(const ClosedSubscheme& Y, AtlasPtr AxB, std::size_t nb) {
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t p = 0; p < AxB->size(); ++p)
    gens.push_back(in_ring(Y.ideals[p % nb].generators(), AxB->charts[p].ring));
  return make_subscheme(std::move(AxB), gens);
}

}  // namespace blowup_calc
