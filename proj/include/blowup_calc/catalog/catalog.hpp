#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "../deform/deform.hpp"
#include "../geom/complement.hpp"
#include "../geom/conormal.hpp"
#include "../geom/iso.hpp"
#include "../polycore/division.hpp"
#include "../polycore/parse.hpp"

namespace blowup_calc {

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "skipped";
  }
}

struct Anchor {
  std::string citation;
  std::string quote;  // verbatim from the source text
};

struct Assertion {
  std::string what;
  bool ok = true;
  std::string detail;
};

struct CheckReport {
  std::string name;
  Anchor anchor;
  std::vector<std::string> tags;
  Verdict verdict = Verdict::pass;
  std::string reason;
  std::vector<Assertion> assertions;
  double seconds = 0;  // not part of the json report
};

using Params = std::map<std::string, std::string>;

// collects sub-assertions of one check
class Probe {
 public:
  void expect(std::string what, bool ok, std::string detail = {}) {
    out_.push_back(Assertion{std::move(what), ok, std::move(detail)});
  }
  void iso(std::string what, const IsoReport& r) {
    std::string d;
    for (auto& p : r.problems) d += (d.empty() ? "" : "; ") + p;
    expect(std::move(what), r.ok, d);
  }
  void empty(std::string what, const std::vector<std::string>& defects) {
    std::string d;
    for (auto& p : defects) d += (d.empty() ? "" : "; ") + p;
    expect(std::move(what), defects.empty(), d);
  }
  void skip(std::string reason) { skipped_ = std::move(reason); }

  const std::vector<Assertion>& assertions() const { return out_; }
  const std::optional<std::string>& skipped() const { return skipped_; }

 private:
  std::vector<Assertion> out_;
  std::optional<std::string> skipped_;
};

struct IdentityCheck {
  std::string name;
  Anchor anchor;
  std::vector<std::string> tags;
  std::string fixture;  // what the builder constructs
  std::function<void(Probe&, const Params&)> run;
};

namespace fixtures {

inline std::string param(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// chartwise generators given as text, one list per chart
inline ClosedSubscheme sub(AtlasPtr X, const std::vector<std::vector<std::string>>& gens) {
  if (gens.size() != X->size()) throw Error(ErrorKind::dimension, "one generator list per chart required");
  std::vector<std::vector<Polynomial>> g;
  for (std::size_t c = 0; c < gens.size(); ++c) {
    g.emplace_back();
    for (auto& s : gens[c]) g.back().push_back(parse_polynomial(X->charts[c].ring, s));
  }
  return make_subscheme(std::move(X), g);
}

inline bool is_var(const Polynomial& p, std::string* name = nullptr) {
  for (auto& v : p.ring()->vars())
    if (p == Polynomial::variable(p.ring(), v)) {
      if (name) *name = v;
      return true;
    }
  return false;
}

inline std::size_t chart_index(const Atlas& A, const std::string& label) {
  for (std::size_t c = 0; c < A.size(); ++c)
    if (A.charts[c].label == label) return c;
  throw Error(ErrorKind::unresolved_name, "no chart labeled " + label);
}

// coordinates of a Rees chart: which of the given parent coordinates is the
// exceptional generator, and every coordinate divided by it
struct ReesCoords {
  std::size_t gen = 0;
  std::vector<Polynomial> image;  // coordinate pulled back
  std::vector<Polynomial> ratio;  // coordinate / generator
};

inline ReesCoords rees_coords(const BlowupResult& B, std::size_t n, const std::vector<std::string>& coords) {
  const RingMap& pr = B.projection[n];
  ReesCoords rc;
  const Ideal& rel = B.result->charts[n].relations;
  for (auto& c : coords) rc.image.push_back(normal_form(pr.apply(Polynomial::variable(pr.source(), c)), rel.gb()));
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (rc.image[a].is_constant()) continue;
    std::vector<Polynomial> r;
    for (auto& im : rc.image) {
      auto q = exact_div(im, rc.image[a]);
      if (!q) break;
      r.push_back(*q);
    }
    if (r.size() != coords.size()) continue;
    rc.gen = a;
    rc.ratio = std::move(r);
    return rc;
  }
  throw Error(ErrorKind::invalid_input, "chart " + B.result->charts[n].label + " is not a Rees chart of the coordinates");
}

// a map given by images of the source variables (missing ones by name)
inline RingMap assign(const Ring& src, const Ring& tgt, const std::map<std::string, Polynomial>& im) {
  for (auto& [k, v] : im)
    if (!src->has(k)) throw Error(ErrorKind::unresolved_name, "no variable " + k);
  return RingMap::by_name(src, tgt, im);
}

inline RingMap assign(const Ring& src, const Ring& tgt, const std::map<std::string, std::string>& im) {
  std::map<std::string, Polynomial> p;
  for (auto& [k, v] : im) p.emplace(k, parse_polynomial(tgt, v));
  return assign(src, tgt, p);
}

// the inverse of alpha : R_b -> R_a when alpha sends variables to variables;
// variables of R_a that alpha misses must vanish modulo rel_a
inline RingMap invert(const RingMap& alpha, const Ideal& rel_a) {
  const Ring& Ra = alpha.target();
  const Ring& Rb = alpha.source();
  std::map<std::string, Polynomial> im;
  for (std::size_t k = 0; k < Rb->nvars(); ++k) {
    std::string v;
    if (is_var(alpha.image(k), &v)) im.emplace(v, Polynomial::variable(Rb, k));
  }
  std::vector<Polynomial> out;
  for (auto& v : Ra->vars()) {
    auto it = im.find(v);
    if (it != im.end()) {
      out.push_back(it->second);
      continue;
    }
    if (!rel_a.contains(Polynomial::variable(Ra, v))) throw Error(ErrorKind::invalid_input, "cannot invert on " + v);
    out.push_back(Polynomial::constant(Rb, 0));
  }
  return RingMap(Ra, Rb, std::move(out));
}

inline ChartCorrespondence corr(const Atlas& A, std::size_t a, const Atlas&, std::size_t b, RingMap alpha) {
  RingMap beta = invert(alpha, A.charts[a].relations);
  return ChartCorrespondence{a, b, std::move(alpha), std::move(beta)};
}

inline std::vector<ChartCorrespondence> by_name(const Atlas& A, const Atlas& B,
                                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<ChartCorrespondence> out;
  for (auto [a, b] : pairs)
    out.push_back(corr(A, a, B, b, RingMap::by_name(B.charts[b].ring, A.charts[a].ring)));
  return out;
}

// k-th variable to k-th variable, for atlases differing only in fiber names
inline std::vector<ChartCorrespondence> positional(const Atlas& A, const Atlas& B,
                                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<ChartCorrespondence> out;
  for (auto [a, b] : pairs) {
    const Ring& Ra = A.charts[a].ring;
    const Ring& Rb = B.charts[b].ring;
    if (Ra->nvars() != Rb->nvars()) throw Error(ErrorKind::dimension, "paired charts differ in dimension");
    std::vector<Polynomial> ab, ba;
    for (std::size_t k = 0; k < Ra->nvars(); ++k) {
      ab.push_back(Polynomial::variable(Ra, k));
      ba.push_back(Polynomial::variable(Rb, k));
    }
    out.push_back(ChartCorrespondence{a, b, RingMap(Rb, Ra, ab), RingMap(Ra, Rb, ba)});
  }
  return out;
}

// ideals agree on paired charts once transported along alpha
inline bool transported_equal(const ClosedSubscheme& onA, const ClosedSubscheme& onB, const ChartCorrespondence& c) {
  const Ideal& rel = onA.ambient->charts[c.a].relations;
  Ideal moved = ideal_sum(rel, c.alpha.apply(onB.ideals[c.b].generators()));
  return ideal_equal(moved, ideal_sum(rel, onA.ideals[c.a].generators()));
}

inline Atlas bundle_over_point(std::size_t rank, const std::string& prefix, bool proj) {
  TwistedSum E{BaseSpace{}, std::vector<std::vector<int>>(rank)};
  return proj ? bundle_proj(E, prefix) : bundle_total(E, prefix);
}

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(prefix + std::to_string(k));
  return v;
}

// strict-transform mode fixtures: center Y and a smooth subscheme Z of X containing it
struct ModeFixture {
  std::string name;
  AtlasPtr X;
  ClosedSubscheme center, Z;
};

inline std::vector<ModeFixture> mode_fixtures() {
  std::vector<ModeFixture> out;
  auto A2 = share(affine_space({"x", "y"}));
  auto A3 = share(affine_space({"x", "y", "z"}));
  auto A4 = share(affine_space({"x1", "x2", "x3", "x4"}));
  auto P2 = share(projective_space(2));
  auto P1A1 = share(product(projective_space(p1_factor()), affine_space({"y"})));
  auto add = [&](std::string n, AtlasPtr X, std::vector<std::vector<std::string>> c,
                 std::vector<std::vector<std::string>> z) {
    out.push_back(ModeFixture{std::move(n), X, sub(X, c), sub(X, z)});
  };
  for (const char* z : {"x", "y", "x + y", "y - x^2", "x - y^3", "x + y + x*y", "y + x^3 + x*y^2"})
    add(std::string("A2 origin, Z = ") + z, A2, {{"x", "y"}}, {{z}});
  add("A3 origin, Z = (z)", A3, {{"x", "y", "z"}}, {{"z"}});
  add("A3 origin, Z = (x, y)", A3, {{"x", "y", "z"}}, {{"x", "y"}});
  add("A3 origin, Z = (y - x^2, z)", A3, {{"x", "y", "z"}}, {{"y - x^2", "z"}});
  add("A3 origin, Z = (x + y + z)", A3, {{"x", "y", "z"}}, {{"x + y + z"}});
  add("A3 origin, Z = (z - x*y)", A3, {{"x", "y", "z"}}, {{"z - x*y"}});
  add("A3 z-axis, Z = (x)", A3, {{"x", "y"}}, {{"x"}});
  add("A3 z-axis, Z = (y - x*z)", A3, {{"x", "y"}}, {{"y - x*z"}});
  add("A3 z-axis, Z = (x + y*z)", A3, {{"x", "y"}}, {{"x + y*z"}});
  add("A3 origin, Z = (x - y^2 + z^3)", A3, {{"x", "y", "z"}}, {{"x - y^2 + z^3"}});
  add("A4 origin, Z = (x3, x4)", A4, {{"x1", "x2", "x3", "x4"}}, {{"x3", "x4"}});
  add("A4 plane, Z = (x1)", A4, {{"x1", "x2"}}, {{"x1"}});
  add("A4 line, Z = (x1 - x2*x4, x3)", A4, {{"x1", "x2", "x3"}}, {{"x1 - x2*x4", "x3"}});
  add("P2 point, Z = line", P2, {{"p0_1", "p0_2"}, {"1"}, {"1"}}, {{"p0_2"}, {"p1_2"}, {"1"}});
  add("P2 point, Z = conic", P2, {{"p0_1", "p0_2"}, {"1"}, {"1"}},
      {{"p0_2 - p0_1^2"}, {"p1_0*p1_2 - 1"}, {"p2_0 - p2_1^2"}});
  add("P1xA1 point, Z = (y)", P1A1, {{"t", "y"}, {"1"}}, {{"y"}, {"y"}});
  add("P1xA1 point, Z = graph", P1A1, {{"t", "y"}, {"1"}}, {{"y - t"}, {"y*s - 1"}});
  return out;
}

struct PosetFixture {
  std::string name;
  PosetDiagram d;
  bool both_modes = false;
};

inline std::vector<PosetFixture> poset_fixtures() {
  auto X = share(affine_space({"x", "y"}));
  Lattice L({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
  PosetDiagram axes = make_diagram(L, {sub(X, {{"x", "y"}}), sub(X, {{"y"}}), sub(X, {{"x"}}), whole(X)});
  auto X3 = share(affine_space({"x", "y", "z"}));
  Lattice L3({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
  PosetDiagram lines = make_diagram(
      L3, {sub(X3, {{"x", "y", "z"}}), sub(X3, {{"y", "z"}}), sub(X3, {{"x", "z"}}), sub(X3, {{"x", "y"}}), whole(X3)});
  auto X1 = share(affine_space({"x"}));
  auto X2 = share(affine_space({"y"}));
  PosetDiagram md = multiple_deformation_diagram({{"1", sub(X1, {{"x"}})}, {"2", sub(X2, {{"y"}})}});
  return {{"two axes and the origin in A2", axes, true},
          {"three axes and the origin in A3", lines, false},
          {"multiple deformation of two points in A1 x A1", md, false}};
}

}  // namespace fixtures


namespace checks {

using namespace fixtures;

inline void subtract(Probe& P, const Params& prm) {
  auto X = share(affine_space({"x", "y"}));
  const Ring& R = X->charts[0].ring;
  Polynomial r = parse_polynomial(R, param(prm, "r", "x"));
  Polynomial g = parse_polynomial(R, param(prm, "g", "y"));
  struct Case {
    std::string name;
    ClosedSubscheme Y;
    Divisor D;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // Bl_Y X chart, Bl_{Y-D} X chart
  };
  std::vector<Case> cases{
      {"Y = (r*g), D = (r)", make_subscheme(X, {{r * g}}), make_divisor(X, {r}), {{0, 0}}},
      {"Y = (x^2, x*y), D = (x)", sub(X, {{"x^2", "x*y"}}), make_divisor(X, {Polynomial::variable(R, "x")}),
       {{0, 1}, {1, 0}}},
  };
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const Case& c = cases[k];
    ClosedSubscheme YD = subtract_divisor(c.Y, c.D);
    if (k == 0) P.expect(c.name + ": Y - D = (g)", ideal_equal(YD.ideals[0], principal(g)), YD.ideals[0].str());
    P.expect(c.name + ": (Y - D) + D = Y", subscheme_equal(add_closed(YD, c.D.sub), c.Y));
    BlowupResult BY = blow_up(c.Y), BYD = blow_up(YD);
    auto cr = by_name(*BY.result, *BYD.result, c.pairs);
    P.iso(c.name + ": Bl_Y X = Bl_{Y-D} X", check_iso(*BY.result, *BYD.result, cr));
    ClosedSubscheme sum = add_closed(BYD.exceptional.sub, total_transform(BYD, c.D.sub));
    bool ok = true;
    for (auto& m : cr) ok = ok && transported_equal(BY.exceptional.sub, sum, m);
    P.expect(c.name + ": E_Y = E_{Y-D} + D|", ok);
  }
}

// R_{src chart} -> R_{tgt chart} between Rees charts over matching coordinates:
// pulled-back coordinates and ratios go to their namesakes, other variables to
// the same-named parent variable, or to 0 when they vanish on the source chart
inline RingMap rees_map(const BlowupResult& Bs, std::size_t ns, const std::vector<std::string>& cs, const Ideal& rel_s,
                        const BlowupResult& Bt, std::size_t nt, const std::vector<std::string>& ct) {
  ReesCoords rs = rees_coords(Bs, ns, cs), rt = rees_coords(Bt, nt, ct);
  const Ring& Rs = Bs.result->charts[ns].ring;
  const Ring& Rt = Bt.result->charts[nt].ring;
  const RingMap& pt = Bt.projection[nt];
  std::vector<Polynomial> im;
  for (auto& v : Rs->vars()) {
    Polynomial pv = Polynomial::variable(Rs, v);
    std::optional<Polynomial> found;
    for (std::size_t l = 0; l < cs.size() && !found; ++l) {
      std::size_t lt = std::find(ct.begin(), ct.end(), cs[l]) - ct.begin();
      if (lt == ct.size()) continue;
      if (rs.image[l] == pv) found = rt.image[lt];
      else if (rs.ratio[l] == pv) found = rt.ratio[lt];
    }
    if (!found && pt.source()->has(v)) found = pt.apply(Polynomial::variable(pt.source(), v));
    if (!found && rel_s.contains(pv)) found = Polynomial::constant(Rt, 0);
    if (!found) throw Error(ErrorKind::invalid_input, "no image for " + v + " on " + Bs.result->charts[ns].label);
    im.push_back(*found);
  }
  return RingMap(Rs, Rt, std::move(im));
}

// pairs the charts of as_atlas(S), S on the blowup BX, with those of BY, both Rees
// charts over the same coordinates, matching generator to generator
inline std::vector<ChartCorrespondence> rees_match(const Atlas& St, const BlowupResult& BX, const BlowupResult& BY,
                                                   const std::vector<std::string>& cx, const std::vector<std::string>& cy) {
  std::vector<ChartCorrespondence> cr;
  for (std::size_t a = 0; a < St.size(); ++a) {
    std::size_t nx = chart_index(*BX.result, St.charts[a].label);
    ReesCoords rx = rees_coords(BX, nx, cx);
    std::size_t b = BY.result->size();
    for (std::size_t m = 0; m < BY.result->size(); ++m)
      if (cy[rees_coords(BY, m, cy).gen] == cx[rx.gen]) b = m;
    if (b == BY.result->size()) throw Error(ErrorKind::coverage, "no chart over " + St.charts[a].label);
    RingMap alpha = rees_map(BY, b, cy, BY.result->charts[b].relations, BX, nx, cx);
    RingMap beta = rees_map(BX, nx, cx, St.charts[a].relations, BY, b, cy);
    cr.push_back(ChartCorrespondence{a, b, std::move(alpha), std::move(beta)});
  }
  return cr;
}

// T restricted to the charts kept by as_atlas
inline ClosedSubscheme on_atlas(AtlasPtr St, const ClosedSubscheme& T) {
  std::vector<std::vector<Polynomial>> g;
  for (auto& ch : St->charts) g.push_back(T.ideals[chart_index(*T.ambient, ch.label)].generators());
  return make_subscheme(std::move(St), g);
}

inline void total_trans(Probe& P, const Params&) {
  auto X = share(affine_space({"x", "y", "z"}));
  const std::vector<std::string> coords{"x", "y", "z"};
  for (std::vector<std::string> y : {std::vector<std::string>{"z"}, {"x", "z"}}) {
    std::string tag = y.size() == 1 ? "Y = plane, Z = origin" : "Y = line, Z = origin";
    ClosedSubscheme Y = sub(X, {y});
    BlowupResult BX = blow_up(sub(X, {coords}));
    ClosedSubscheme S = strict_transform(BX, Y);
    P.expect(tag + ": Bl_{E_Z X}(Y|) = Y| - E_Z X",
             subscheme_equal(S, subtract_divisor(total_transform(BX, Y), BX.exceptional)));
    auto Yat = share(as_atlas(Y));
    BlowupResult BY = blow_up(sub(Yat, {coords}));
    auto St = share(as_atlas(S));
    auto cr = rees_match(*St, BX, BY, coords, coords);
    P.iso(tag + ": Bl_Z Y = Bl_{E_Z X}(Y|)", check_iso(*St, *BY.result, cr));
    ClosedSubscheme E = on_atlas(St, intersect(S, BX.exceptional.sub));
    bool ok = true;
    for (auto& m : cr) ok = ok && transported_equal(E, BY.exceptional.sub, m);
    P.expect(tag + ": E_Z Y = E_{E_Z X}(Y|)", ok);
  }
}

template <class F>
void each_poset(F&& f) {
  for (auto& fx : poset_fixtures())
    for (StrictMode m : {StrictMode::saturate, StrictMode::quotient_once}) {
      if (m == StrictMode::quotient_once && !fx.both_modes) continue;
      f(fx.name + (m == StrictMode::saturate ? "" : " (quotient_once)"), fx.d, poset_blow_up(fx.d, m));
    }
}

inline void poset_e(Probe& P, const Params&) {
  each_poset([&](const std::string& tag, const PosetDiagram& d, const PosetBlowupResult& R) {
    const Lattice& L = d.lattice;
    for (std::size_t pi = 0; pi < L.size(); ++pi) {
      if (pi == L.top()) continue;
      P.expect(tag + ": E_" + L.name(pi) + " = sum of E'_rho over rho <= " + L.name(pi),
               subscheme_equal(R.pullbacks[pi], R.composite_exceptionals[pi]));
      P.expect(tag + ": E'_" + L.name(pi) + " is a divisor", divisor_sound(*R.strict_exceptionals[pi]));
    }
  });
}

inline void poset_disj(Probe& P, const Params&) {
  each_poset([&](const std::string& tag, const PosetDiagram& d, const PosetBlowupResult& R) {
    const Lattice& L = d.lattice;
    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = a + 1; b < L.size(); ++b) {
        if (a == L.top() || b == L.top() || L.comparable(a, b)) continue;
        P.expect(tag + ": E'_" + L.name(a) + " misses E'_" + L.name(b),
                 is_empty(intersect(R.strict_exceptionals[a]->sub, R.strict_exceptionals[b]->sub)));
      }
  });
}

inline void pushout8(Probe& P, const Params&) {
  auto A2 = share(affine_space({"x", "y"}));
  auto A3 = share(affine_space({"x", "y", "z"}));
  struct Case {
    std::string name;
    Square sq;
    bool iso;  // the two orders have the same chart list
  };
  std::vector<Case> cases{
      {"A2, Z = origin, Y = x-axis", Square{sub(A2, {{"x", "y"}}), sub(A2, {{"x", "y"}}), sub(A2, {{"y"}})}, true},
      {"A2, two axes", Square{sub(A2, {{"x", "y"}}), sub(A2, {{"y"}}), sub(A2, {{"x"}})}, true},
      {"A3, two lines", Square{sub(A3, {{"x", "y", "z"}}), sub(A3, {{"x", "z"}}), sub(A3, {{"x", "y"}})}, false},
      {"A3, line in a plane", Square{sub(A3, {{"x", "y"}}), sub(A3, {{"x", "y"}}), sub(A3, {{"x"}})}, false},
  };
  for (auto& c : cases) {
    PushoutBlowupResult Rz = pushout_blow_up(c.sq, PushoutOrder::z_first);
    PushoutBlowupResult Ry = pushout_blow_up(c.sq, PushoutOrder::y_first);
    P.empty(c.name + ": cube equalities, Z first", cube_defects(Rz));
    P.empty(c.name + ": cube equalities, Y first", cube_defects(Ry));
    P.expect(c.name + ": incidence agrees across orders", incidence(Rz) == incidence(Ry));
    if (!c.iso) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n = 0; n < Rz.atlas->size(); ++n) pairs.emplace_back(n, n);
    auto cr = positional(*Rz.atlas, *Ry.atlas, pairs);
    P.iso(c.name + ": the orders agree", check_iso(*Rz.atlas, *Ry.atlas, cr));
    bool ok = true;
    for (auto& m : cr)
      ok = ok && transported_equal(Rz.e_y.sub, Ry.e_y.sub, m) && transported_equal(Rz.e_z.sub, Ry.e_z.sub, m) &&
           transported_equal(Rz.e_w.sub, Ry.e_w.sub, m);
    P.expect(c.name + ": the strict exceptionals correspond", ok);
  }
}

// Bl_0 V(O^n) against V_{P^{n-1}}(O(1)) over a point
inline void bl0v(Probe& P, const Params& prm) {
  int n = std::stoi(param(prm, "rank", "2"));
  if (n < 2 || n > 4) {
    P.skip("rank must be between 2 and 4");
    return;
  }
  auto coords = names("x", static_cast<std::size_t>(n));
  auto X = share(affine_space(coords));
  BlowupResult B = blow_up(sub(X, {coords}));
  auto pf = proj_factor(static_cast<std::size_t>(n - 1), "p");
  Atlas V = bundle_total(TwistedSum{BaseSpace{{pf}, {}}, {{1}}});
  std::vector<ChartCorrespondence> cr;
  bool zero = true;
  for (std::size_t m = 0; m < B.result->size(); ++m) {
    ReesCoords rc = rees_coords(B, m, coords);
    std::size_t a = rc.gen;
    std::map<std::string, Polynomial> im{{"v", rc.image[a]}};
    for (std::size_t l = 0; l < coords.size(); ++l)
      if (l != a) im.emplace(pf.names[a][l], rc.ratio[l]);
    cr.push_back(corr(*B.result, m, V, a, assign(V.charts[a].ring, B.result->charts[m].ring, im)));
    zero = zero && ideal_equal(B.exceptional.sub.ideals[m], principal(rc.image[a]));
  }
  P.iso("Bl_0 V(E) = V_{P(E)}(O(1))", check_iso(*B.result, V, cr));
  P.expect("the exceptional divisor is the zero section", zero);
}

// P^2 blown up at [1:0:0] against P_{P^1}(O(1) + O)
inline void bl0p(Probe& P, const Params&) {
  auto X = share(projective_space(2));
  BlowupResult B = blow_up(sub(X, {{"p0_1", "p0_2"}, {"1"}, {"1"}}));
  Atlas F = bundle_proj(TwistedSum{BaseSpace{{p1_factor()}, {}}, {{1}, {0}}});
  // F charts: t/0, t/1, s/0, s/1
  std::vector<ChartCorrespondence> cr;
  for (std::size_t m = 0; m < B.result->size(); ++m) {
    const Ring& Rm = B.result->charts[m].ring;
    std::size_t parent = B.parent[m];
    if (parent == 0) {
      ReesCoords rc = rees_coords(B, m, {"p0_1", "p0_2"});
      std::size_t b = rc.gen == 0 ? 1 : 3;
      std::map<std::string, Polynomial> im{{rc.gen == 0 ? "t" : "s", rc.ratio[1 - rc.gen]}, {"e1_0", rc.image[rc.gen]}};
      cr.push_back(corr(*B.result, m, F, b, assign(F.charts[b].ring, Rm, im)));
    } else if (parent == 1) {
      cr.push_back(corr(*B.result, m, F, 0, assign(F.charts[0].ring, Rm, std::map<std::string, std::string>{{"t", "p1_2"}, {"e0_1", "p1_0"}})));
    } else {
      cr.push_back(corr(*B.result, m, F, 2, assign(F.charts[2].ring, Rm, std::map<std::string, std::string>{{"s", "p2_1"}, {"e0_1", "p2_0"}})));
    }
  }
  P.iso("Bl_0 P(E + O) = P_{P(E)}(O(1) + O)", check_iso(*B.result, F, cr));
  // the exceptional divisor is P(O(1)), cut out by e1_0
  Atlas Fp = F;
  auto FP = share(std::move(Fp));
  ClosedSubscheme inf = fixtures::sub(FP, {{"1"}, {"e1_0"}, {"1"}, {"e1_0"}});
  bool ok = true;
  for (auto& m : cr) ok = ok && transported_equal(B.exceptional.sub, inf, m);
  P.expect("the exceptional divisor is P(O(1))", ok);
}

// P(E + O) minus P(O) against V_{P(E)}(O(-1)), E = O^2 over a point and over A1
inline void compl_check(Probe& P, const Params&) {
  for (bool line : {false, true}) {
    std::vector<std::string> aff;
    if (line) aff.push_back("z");
    std::string tag = line ? "over A1" : "over a point";
    TwistedSum EO{BaseSpace{{}, aff}, {{}, {}, {}}};
    auto PEO = share(bundle_proj(EO));
    Atlas U = open_complement(proj_subbundle(EO, PEO, {2}));
    Atlas V = bundle_total(TwistedSum{BaseSpace{{p1_factor()}, aff}, {{-1}}});
    if (U.size() != 2) {
      P.expect(tag + ": complement has two charts", false, std::to_string(U.size()));
      continue;
    }
    std::vector<ChartCorrespondence> cr{
        corr(U, 0, V, 0, assign(V.charts[0].ring, U.charts[0].ring, std::map<std::string, std::string>{{"t", "e0_1"}, {"v", "e0_2"}})),
        corr(U, 1, V, 1, assign(V.charts[1].ring, U.charts[1].ring, std::map<std::string, std::string>{{"s", "e1_0"}, {"v", "e1_2"}})),
    };
    P.iso(tag + ": P(E + O) - P(O) = V_{P(E)}(O(-1))", check_iso(U, V, cr));
  }
}

// Bl_{P(E)} P(E + F) against P_{P(F)}(E(-1) + O), E = O, F = O^2 over A1
inline void blpe(Probe& P, const Params&) {
  TwistedSum EF{BaseSpace{{}, {"z"}}, {{}, {}, {}}};
  auto X = share(bundle_proj(EF));
  BlowupResult B = blow_up(proj_subbundle(EF, X, {0}));
  Atlas T = bundle_proj(TwistedSum{BaseSpace{{p1_factor()}, {"z"}}, {{-1}, {0}}}, "f");
  // T charts: t/0, t/1, s/0, s/1
  std::vector<ChartCorrespondence> cr;
  for (std::size_t m = 0; m < B.result->size(); ++m) {
    const Ring& Rm = B.result->charts[m].ring;
    std::size_t parent = B.parent[m];
    if (parent == 0) {
      ReesCoords rc = rees_coords(B, m, {"e0_1", "e0_2"});
      std::size_t b = rc.gen == 0 ? 0 : 2;
      std::map<std::string, Polynomial> im{{rc.gen == 0 ? "t" : "s", rc.ratio[1 - rc.gen]}, {"f0_1", rc.image[rc.gen]}};
      cr.push_back(corr(*B.result, m, T, b, assign(T.charts[b].ring, Rm, im)));
    } else if (parent == 1) {
      cr.push_back(corr(*B.result, m, T, 1, assign(T.charts[1].ring, Rm, std::map<std::string, std::string>{{"t", "e1_2"}, {"f1_0", "e1_0"}})));
    } else {
      cr.push_back(corr(*B.result, m, T, 3, assign(T.charts[3].ring, Rm, std::map<std::string, std::string>{{"s", "e2_1"}, {"f1_0", "e2_0"}})));
    }
  }
  P.iso("Bl_{P(E)} P(E + F) = P_{P(F)}(E(-1) + O)", check_iso(*B.result, T, cr));
}

// (v, t) -> [v : t] from Bl_{(0,0)}(V(E) x A1) to P(E + O), E = O^2 over a point
inline void vt_split(Probe& P, const Params&) {
  const std::vector<std::string> coords{"v0", "v1", "t"};
  auto X = share(affine_space(coords));
  BlowupResult B = blow_up(sub(X, {coords}));
  TwistedSum EO{BaseSpace{}, {{}, {}, {}}};
  auto PEO = share(bundle_proj(EO));
  std::vector<ChartMorphism> maps;
  for (std::size_t m = 0; m < B.result->size(); ++m) {
    ReesCoords rc = rees_coords(B, m, coords);
    std::size_t a = rc.gen;
    std::map<std::string, Polynomial> im;
    for (std::size_t l = 0; l < coords.size(); ++l)
      if (l != a) im.emplace("e" + std::to_string(a) + "_" + std::to_string(l), rc.ratio[l]);
    maps.push_back(ChartMorphism{m, a, assign(PEO->charts[a].ring, B.result->charts[m].ring, im)});
  }
  P.iso("[v : t] is well defined on every overlap", check_morphism(*B.result, *PEO, maps));
  ClosedSubscheme S = strict_transform(B, sub(X, {{"t"}}));
  ClosedSubscheme PE = proj_subbundle(EO, PEO, {0, 1});
  bool ok = true;
  for (auto& mp : maps) {
    Ideal target = ideal_sum(B.result->charts[mp.a].relations, S.ideals[mp.a].generators());
    for (auto& g : PE.ideals[mp.b].generators()) ok = ok && target.contains(mp.alpha.apply(g));
  }
  P.expect("Bl_{(0,0)}(V(E) x 0) lands in P(E)", ok);
}

inline void deform_check(Probe& P, const Params&) {
  struct Case {
    std::string name;
    std::vector<std::string> X, Y, base;  // ambient coordinates, generators of Y, coordinates of Y
  };
  std::vector<Case> cases{{"origin in A2", {"x", "y"}, {"x", "y"}, {}},
                          {"x-axis in A2", {"x", "y"}, {"y"}, {"x"}},
                          {"z-axis in A3", {"x", "y", "z"}, {"x", "y"}, {"z"}}};
  for (auto& c : cases) {
    auto X = share(affine_space(c.X));
    ClosedSubscheme Y = sub(X, {c.Y});
    DeformationSpace D = deformation_space(Y);
    const DeformPiece& Pc = D.main();
    const BlowupResult& B = Pc.steps.front().blowup;
    std::vector<std::string> coords = c.Y;
    coords.push_back("t");
    // E'_Y against P_Y(N + O) with N free on the generators of Y
    Atlas E = as_atlas(Pc.divisor("E'_Y").sub);
    TwistedSum NO{BaseSpace{{}, c.base}, std::vector<std::vector<int>>(coords.size())};
    Atlas PN = bundle_proj(NO);
    std::vector<ChartCorrespondence> cr;
    for (std::size_t a = 0; a < E.size(); ++a) {
      std::size_t m = chart_index(*B.result, E.charts[a].label);
      ReesCoords rc = rees_coords(B, m, coords);
      std::size_t g = rc.gen;
      std::map<std::string, Polynomial> im;
      for (std::size_t l = 0; l < coords.size(); ++l)
        if (l != g) im.emplace("e" + std::to_string(g) + "_" + std::to_string(l), rc.ratio[l]);
      for (auto& v : c.base) im.emplace(v, B.projection[m].apply(Polynomial::variable(B.projection[m].source(), v)));
      cr.push_back(corr(E, a, PN, g, assign(PN.charts[g].ring, E.charts[a].ring, im)));
    }
    P.iso(c.name + ": E'_Y = P_Y(N + O)", check_iso(E, PN, cr));
    // E'_{} against Bl_Y X
    BlowupResult BY = blow_up(Y);
    auto St = share(as_atlas(Pc.divisor("E'_{}").sub));
    P.iso(c.name + ": E'_{} = Bl_Y X", check_iso(*St, *BY.result, rees_match(*St, B, BY, coords, c.Y)));
    P.empty(c.name + ": X x 1 misses the divisors", section_defects(D));
  }
}

inline void composite_empty(Probe& P, const Params&) {
  auto A2 = share(affine_space({"x", "y"}));
  auto A3 = share(affine_space({"x", "y", "z"}));
  struct Case {
    std::string name;
    ClosedSubscheme Z, Y;
  };
  std::vector<Case> cases{{"origin in the x-axis in A2", sub(A2, {{"x", "y"}}), sub(A2, {{"y"}})},
                          {"z-axis in the plane y = 0 in A3", sub(A3, {{"x", "y"}}), sub(A3, {{"y"}})}};
  for (auto& c : cases) {
    DeformationSpace D = composite_deformation_space(c.Z, c.Y);
    P.empty(c.name + ": E'_Z on dY D and dYZ D is empty", composite_vanishing_defects(D));
    P.empty(c.name + ": X x 1 x 1 misses the divisors", section_defects(D));
    for (auto& piece : D.pieces) {
      bool ok = true;
      for (auto& [n, d] : piece.divisors) ok = ok && divisor_sound(d);
      P.expect(c.name + ": divisors on " + piece.name + " are Cartier", ok);
    }
  }
}

inline void conormal_check(Probe& P, const Params&) {
  auto A2 = share(affine_space({"x", "y"}));
  auto A3 = share(affine_space({"x", "y", "z"}));
  struct Case {
    std::string name;
    Square sq;
    unsigned twist;  // expected power of E on charts meeting the exceptional
  };
  std::vector<Case> cases{
      {"A2, Y = origin, Z = x-axis", Square{sub(A2, {{"x", "y"}}), sub(A2, {{"y"}}), sub(A2, {{"x", "y"}})}, 1},
      {"A2, Y = origin, Z = (x - 1)", Square{sub(A2, {{"1"}}), sub(A2, {{"x - 1"}}), sub(A2, {{"x", "y"}})}, 0},
      {"A3, Y = origin, Z = (z)", Square{sub(A3, {{"x", "y", "z"}}), sub(A3, {{"z"}}), sub(A3, {{"x", "y", "z"}})}, 1},
      {"A3, Y = z-axis, Z = (x)", Square{sub(A3, {{"x", "y"}}), sub(A3, {{"x"}}), sub(A3, {{"x", "y"}})}, 1},
      {"A3, Y = origin, Z = z-axis", Square{sub(A3, {{"x", "y", "z"}}), sub(A3, {{"x", "y"}}), sub(A3, {{"x", "y", "z"}})}, 1},
  };
  for (auto& c : cases) {
    BlowupResult BY = blow_up(c.sq.Y);
    StrictConormal sc = conormal_of_strict_transform(c.sq, BY);
    std::size_t nrank = conormal_presentation(c.sq.Z, 0).rank;
    P.expect(c.name + ": rank equals rank N_{Z/X}", sc.rank == nrank,
             std::to_string(sc.rank) + " vs " + std::to_string(nrank));
    ClosedSubscheme EW = intersect(sc.strict, BY.exceptional.sub);
    bool ok = true, free = true;
    std::string detail;
    for (std::size_t n = 0; n < BY.result->size(); ++n) {
      if (sc.strict.ideals[n].is_unit()) continue;
      free = free && sc.per_chart[n].free;
      unsigned want = EW.ideals[n].is_unit() ? 0 : c.twist;
      if (sc.twist[n] != want) {
        ok = false;
        detail += BY.result->charts[n].label + ": " + std::to_string(sc.twist[n]) + " ";
      }
    }
    P.expect(c.name + ": conormal of the strict transform is free", free);
    P.expect(c.name + ": twisted by E_W Z exactly where E_W Z is", ok, detail);
  }
}

inline void strict_modes(Probe& P, const Params&) {
  for (auto& f : mode_fixtures()) {
    BlowupResult B = blow_up(f.center);
    auto w = strict_mode_disagreement(B, f.Z);
    P.expect(f.name + ": quotient_once = saturate", !w,
             w ? w->chart + ": " + w->quotient_once.str() + " vs " + w->saturate.str() : "");
  }
}

}  // namespace checks

inline const std::vector<IdentityCheck>& registry() {
  static const std::vector<IdentityCheck> r{
      {"ID-SUBTRACT",
       {"Cor. (blowup along Y minus a divisor)", "Then $\\mathrm{Bl}_YX=\\mathrm{Bl}_{Y-D}X$"},
       {"blowup", "divisor"},
       "X = A2, Y = (r*g) and (x^2, x*y), D = (r) and (x)",
       checks::subtract},
      {"ID-TOTALTRANS",
       {"Cor. (blowup of a closed subscheme)", "$\\mathrm{Bl}_ZY=\\mathrm{Bl}_{\\mathrm{E}_ZX}(Y|_{\\mathrm{Bl}_ZX})$"},
       {"blowup"},
       "X = A3, Z = origin, Y = (z) and (x, z)",
       checks::total_trans},
      {"ID-POSET-E",
       {"Thm. (poset blowups)", "$\\mathrm{E}_\\pi(i)=\\sum_{\\rho\\le\\pi}\\mathrm{E}'_\\rho(i)$"},
       {"poset"},
       "axes in A2 and A3 with the origin; multiple deformation of two points",
       checks::poset_e},
      {"ID-POSET-DISJ",
       {"Thm. (poset blowups)", "$\\mathrm{E}'_\\pi(i)\\cap\\mathrm{E}'_\\rho(i)=\\varnothing$"},
       {"poset"},
       "axes in A2 and A3 with the origin; multiple deformation of two points",
       checks::poset_disj},
      {"ID-PUSHOUT-8",
       {"Thm. (pushout blowups)",
        "$\\mathrm{Bl}'=\\mathrm{Bl}_{\\mathrm{Bl}_{\\mathrm{E}_WY}(\\mathrm{E}_ZX)_W}\\mathrm{Bl}_{\\mathrm{Bl}_WY}\\mathrm{Bl}_ZX$"},
       {"pushout"},
       "excessive squares in A2 and A3, both orders",
       checks::pushout8},
      {"ID-BL0V",
       {"Prop. proof (blowup of the zero section)",
        "$\\mathrm{Bl}_0\\mathbf{V}_T(\\mathcal{E})=\\mathbf{V}_{\\mathbf{P}_T(\\mathcal{E})}(\\mathcal{O}(1))$"},
       {"bundle"},
       "E = O^rank over a point, rank 2 by default",
       checks::bl0v},
      {"ID-BL0P",
       {"Prop. proof (blowup of the zero section)",
        "$\\mathrm{Bl}_0\\mathbf{P}_T(\\mathcal{E}\\oplus\\mathcal{O})=\\mathbf{P}_{\\mathbf{P}_T(\\mathcal{E})}(\\mathcal{O}(1)\\oplus\\mathcal{O})$"},
       {"bundle"},
       "E = O^2 over a point",
       checks::bl0p},
      {"ID-COMPL",
       {"Lemma (complement of P(O))",
        "$\\mathbf{P}_T(\\mathcal{E}\\oplus\\mathcal{O})\\setminus\\mathbf{P}_T(\\mathcal{O})=\\mathbf{V}_{\\mathbf{P}_T(\\mathcal{E})}(\\mathcal{O}(-1))$"},
       {"bundle"},
       "E = O^2 over a point and over A1",
       checks::compl_check},
      {"ID-BLPE",
       {"Cor. proof (blowup of a projective subbundle)",
        "$\\mathrm{Bl}_{\\mathbf{P}_Z(\\mathcal{E})}\\mathbf{P}_Z(\\mathcal{E}\\oplus\\mathcal{F})=\\mathbf{P}_{\\mathbf{P}_Z(\\mathcal{F})}(\\mathcal{E}(-1)\\oplus\\mathcal{O})$"},
       {"bundle"},
       "E = O, F = O^2 over A1",
       checks::blpe},
      {"ID-VT-SPLIT",
       {"Thm. normalization proof", "$(v,t)\\mapsto[v:t]$"},
       {"bundle", "deform"},
       "E = O^2 over a point",
       checks::vt_split},
      {"ID-DEFORM",
       {"Construction (multiple deformation space), singleton case",
        "$\\mathrm{E}'_\\Omega\\mathrm{D}(i)=\\mathbf{P}_Y(\\mathcal{N}_i\\oplus\\mathcal{O})$"},
       {"deform"},
       "origin and x-axis in A2, z-axis in A3",
       checks::deform_check},
      {"ID-COMPOSITE-EMPTY",
       {"Construction (composite deformation space)",
        "$\\mathrm{E}'_Z\\partial_Y\\mathrm{D}=\\mathrm{E}'_Z\\partial_{Y,Z}\\mathrm{D}=\\varnothing$"},
       {"deform", "pushout"},
       "origin in a line in A2, line in a plane in A3",
       checks::composite_empty},
      {"ID-CONORMAL",
       {"Prop. (blowup edges of an excessive square), fiber-twist rank check",
        "$\\mathcal{N}_{\\mathrm{Bl}_WZ/\\mathrm{Bl}_YX}=\\fib(\\mathcal{N}_{Z/X}|_{\\mathrm{Bl}_WZ}\\to\\mathcal{N}_{W/Y}|_{\\mathrm{E}_WZ})(\\mathrm{E}_WZ)$"},
       {"conormal"},
       "excessive squares in A2 and A3 with Y blown up",
       checks::conormal_check},
      {"ID-STRICT-MODES",
       {"Cor. (blowup of a closed subscheme)", "$Y|_{\\mathrm{Bl}_ZX}-\\mathrm{E}_ZX$"},
       {"lci-excessive", "blowup"},
       "smooth subschemes through or transverse to smooth centers",
       checks::strict_modes},
  };
  return r;
}

inline const IdentityCheck& find_check(const std::string& name) {
  for (auto& c : registry())
    if (c.name == name) return c;
  throw Error(ErrorKind::unregistered, name);
}

inline CheckReport run_check(const IdentityCheck& c, const Params& params = {}) {
  CheckReport rep{c.name, c.anchor, c.tags, Verdict::pass, {}, {}, 0};
  auto t0 = std::chrono::steady_clock::now();
  Probe P;
  try {
    c.run(P, params);
  } catch (const std::exception& e) {
    rep.verdict = Verdict::fail;
    rep.reason = e.what();
  }
  rep.assertions = P.assertions();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rep.verdict == Verdict::fail) return rep;
  if (P.skipped()) {
    rep.verdict = Verdict::skipped;
    rep.reason = *P.skipped();
    return rep;
  }
  for (auto& a : rep.assertions)
    if (!a.ok) {
      rep.verdict = Verdict::fail;
      rep.reason = "failed: " + a.what;
      break;
    }
  if (rep.assertions.empty() && rep.verdict == Verdict::pass) {
    rep.verdict = Verdict::fail;
    rep.reason = "no assertions ran";
  }
  return rep;
}

inline CheckReport run_check(const std::string& name, const Params& params = {}) {
  return run_check(find_check(name), params);
}

struct SuiteSummary {
  std::string tag;
  std::vector<CheckReport> reports;
  std::size_t count(Verdict v) const {
    std::size_t n = 0;
    for (auto& r : reports) n += r.verdict == v;
    return n;
  }
  bool ok() const { return count(Verdict::fail) == 0; }
};

inline bool has_tag(const IdentityCheck& c, const std::string& tag) {
  return tag == "all" || std::find(c.tags.begin(), c.tags.end(), tag) != c.tags.end();
}

// every check must carry a citation and a verbatim quote
inline void require_anchors(const std::vector<IdentityCheck>& checks) {
  for (auto& c : checks)
    if (c.anchor.citation.empty() || c.anchor.quote.empty())
      throw Error(ErrorKind::invalid_input, "check " + c.name + " has no source anchor");
}

inline SuiteSummary run_suite(const std::vector<IdentityCheck>& checks, const std::string& tag = "all") {
  require_anchors(checks);
  std::vector<const IdentityCheck*> sel;
  for (auto& c : checks)
    if (has_tag(c, tag)) sel.push_back(&c);
  SuiteSummary s{tag, parallel_map(sel.size(), [&](std::size_t k) { return run_check(*sel[k]); })};
  return s;
}

inline SuiteSummary run_suite(const std::string& tag = "all") { return run_suite(registry(), tag); }

}  // namespace blowup_calc
