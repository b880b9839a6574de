// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include <blowup_calc/catalog/report.hpp>
#include <blowup_calc/deform/deform.hpp>

#include "oracles.hpp"

using namespace blowup_calc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<std::string> strs(const std::vector<Polynomial>& v) {
  std::vector<std::string> out;
  for (auto& p : v) out.push_back(p.str());
  return out;
}

struct Corpus {
  Ideal I, J;
  Polynomial f;
};

// <= 3 variables, <= 3 generators, degree <= 3, coefficients in -2..2
std::vector<Corpus> random_corpus(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> nv(1, 3), ord(0, 1);
  const std::vector<std::string> names{"x", "y", "z"};
  std::vector<Corpus> out;
  while (out.size() < n) {
    std::vector<std::string> v(names.begin(), names.begin() + nv(rng));
    Ring R = make_ring(v, ord(rng) ? MonomialOrder::lex() : MonomialOrder::grevlex());
    Ideal I = oracle::random_ideal(rng, R);
    Ideal J = oracle::random_ideal(rng, R);
    Polynomial f = oracle::random_poly(rng, R, 3, 3);
    if (f.is_zero() || f.is_constant()) continue;
    out.push_back({I, J, f});
  }
  return out;
}

Outcome groebner_oracle() {
  Outcome o;
  std::size_t k = 0, proper = 0, maxlen = 0;
  for (auto& c : random_corpus(200, 2024)) {
    auto gb = groebner_basis(c.I.generators());
    proper += !(gb.size() == 1 && gb[0].is_constant());
    maxlen = std::max(maxlen, gb.size());
    auto naive = oracle::naive_groebner(c.I.generators());
    o.require(strs(gb) == strs(naive), "ideal " + std::to_string(k) + ": bases differ");
    o.require(oracle::all_spolys_reduce(gb), "ideal " + std::to_string(k) + ": S-polynomial does not reduce");
    o.require(oracle::all_spolys_reduce(naive), "ideal " + std::to_string(k) + ": oracle basis is not a basis");
    ++k;
  }
  if (o.ok)
    o.detail = "200 random ideals (" + std::to_string(proper) + " proper, bases up to " + std::to_string(maxlen) +
               " elements), reduced bases identical, all S-polynomials reduce to 0";
  return o;
}

Outcome ideal_laws() {
  Outcome o;
  std::size_t k = 0;
  for (auto& c : random_corpus(200, 2024)) {
    std::string at = "ideal " + std::to_string(k++) + ": ";
    Ideal P = ideal_product(c.I, c.J), N = ideal_intersection(c.I, c.J), S = ideal_sum(c.I, c.J);
    o.require(N.contains(P), at + "product not in intersection");
    o.require(c.I.contains(N) && c.J.contains(N), at + "intersection not in a factor");
    o.require(S.contains(c.I) && S.contains(c.J), at + "factor not in sum");
    o.require(ideal_quotient(c.I, c.f).contains(c.I), at + "(I:f) does not contain I");
    Ideal s = saturation(c.I, c.f);
    o.require(ideal_equal(saturation(s, c.f), s), at + "saturation not idempotent");
    o.require(ideal_equal(s, saturation_rabinowitsch(c.I, c.f)), at + "iterated quotient differs from t-trick");
  }
  o.detail = o.ok ? "200 ideal pairs: product, intersection, sum, quotient, saturation" : o.detail;
  return o;
}

Outcome divisor_subtraction() {
  Outcome o;
  std::size_t k = 0;
  for (auto& c : random_corpus(50, 77)) {
    std::string at = "instance " + std::to_string(k++) + ": ";
    const Ring& R = c.J.ring();
    o.require(is_nonzerodivisor(c.f, Ideal(R, {})), at + "f is a zero divisor");
    Ideal I = ideal_product(principal(c.f), c.J);
    o.require(ideal_equal(ideal_quotient(I, c.f), c.J), at + "(fJ : f) != J");
    AtlasPtr X = share(affine_space(R->vars()));
    Ring XR = X->charts[0].ring;
    ClosedSubscheme Y = make_subscheme(X, {in_ring(c.J.generators(), XR)});
    Divisor D = make_divisor(X, {c.f.in_ring(XR)});
    ClosedSubscheme back = remove_divisor(add_closed(Y, D.sub), D, StrictMode::quotient_once);
    o.require(subscheme_equal(back, Y), at + "(Y + D) - D != Y");
  }
  o.detail = o.ok ? "50 instances I = f*J: (I:f) = J and (Y + D) - D = Y" : o.detail;
  return o;
}

std::vector<std::pair<std::string, BlowupResult>> fixture_blowups() {
  std::vector<std::pair<std::string, BlowupResult>> out;
  std::set<std::string> seen;
  for (auto& fx : fixtures::mode_fixtures()) {
    std::string key = fx.name.substr(0, fx.name.find(','));
    if (seen.insert(key).second) out.emplace_back(key, blow_up(fx.center));
  }
  for (auto& fx : fixtures::poset_fixtures())
    for (auto& s : poset_blow_up(fx.d).steps) out.emplace_back(fx.name + " / " + s.name, s.blowup);
  auto A2 = share(affine_space({"x", "y"}));
  Square sq{fixtures::sub(A2, {{"x", "y"}}), fixtures::sub(A2, {{"x", "y"}}), fixtures::sub(A2, {{"y"}})};
  for (auto ord : {PushoutOrder::z_first, PushoutOrder::y_first})
    for (auto& s : pushout_blow_up(sq, ord).steps)
      out.emplace_back(std::string("pushout ") + to_string(ord) + " / " + s.name, s.blowup);
  DeformationSpace D = deformation_space(fixtures::sub(A2, {{"y"}}));
  for (auto& s : D.main().steps) out.emplace_back("deformation / " + s.name, s.blowup);
  return out;
}

Outcome universal_equalities() {
  Outcome o;
  auto bl = fixture_blowups();
  for (auto& [name, B] : bl) {
    auto d = universal_defects(B);
    o.require(d.empty(), name + ": " + (d.empty() ? "" : d.front()));
  }
  o.detail = o.ok ? std::to_string(bl.size()) + " fixture blowups: pullback of the center is the exceptional, exceptional a nonzerodivisor"
                  : o.detail;
  return o;
}

Outcome catalog_suite() {
  Outcome o;
  SuiteSummary s = run_suite("all");
  const std::vector<std::string> required{"ID-SUBTRACT", "ID-TOTALTRANS", "ID-POSET-E", "ID-POSET-DISJ", "ID-PUSHOUT-8",
                                          "ID-BL0V", "ID-BL0P", "ID-COMPL", "ID-BLPE", "ID-VT-SPLIT", "ID-DEFORM",
                                          "ID-COMPOSITE-EMPTY", "ID-CONORMAL"};
  for (auto& n : required) {
    auto it = std::find_if(s.reports.begin(), s.reports.end(), [&](auto& r) { return r.name == n; });
    o.require(it != s.reports.end(), n + " not registered");
    if (it == s.reports.end()) continue;
    o.require(it->verdict == Verdict::pass, n + ": " + it->reason);
    o.require(!it->anchor.quote.empty() && !it->anchor.citation.empty(), n + " has no anchor");
  }
  o.require(s.count(Verdict::fail) == 0, "suite has failures");
  if (o.ok)
    o.detail = std::to_string(s.count(Verdict::pass)) + " checks pass, " + std::to_string(s.count(Verdict::fail)) +
               " fail, " + std::to_string(s.count(Verdict::skipped)) + " skipped";
  return o;
}

Outcome poset_structure() {
  Outcome o;
  auto fx = fixtures::poset_fixtures();
  std::size_t runs = 0;
  for (auto& f : fx) {
    bool wanted = f.name.find("two axes") != std::string::npos || f.name.find("multiple deformation") != std::string::npos;
    if (!wanted) continue;
    for (StrictMode m : {StrictMode::saturate, StrictMode::quotient_once}) {
      if (m == StrictMode::quotient_once && !f.both_modes) continue;
      auto d = poset_defects(f.d, poset_blow_up(f.d, m));
      o.require(d.empty(), f.name + ": " + (d.empty() ? "" : d.front()));
      ++runs;
    }
  }
  o.require(runs == 3, "expected fixtures missing");
  if (o.ok) o.detail = "two axes with origin in A2 (both modes), two points in A1 x A1 x P1: E_pi = sum of E'_rho, incomparable E' disjoint";
  return o;
}

Outcome mode_agreement() {
  Outcome o;
  auto fx = fixtures::mode_fixtures();
  o.require(fx.size() >= 20, "fewer than 20 fixtures");
  for (auto& f : fx) {
    auto w = strict_mode_disagreement(blow_up(f.center), f.Z);
    if (w) o.require(false, f.name + " on " + w->chart + ": quotient_once " + w->quotient_once.str() + " vs saturate " + w->saturate.str());
  }
  if (o.ok) o.detail = std::to_string(fx.size()) + " lci-excessive fixtures: quotient_once = saturate";
  return o;
}

Outcome cusp_smooth() {
  Outcome o;
  auto A2 = share(affine_space({"x", "y"}));
  BlowupResult B = blow_up(fixtures::sub(A2, {{"x", "y"}}));
  ClosedSubscheme C = strict_transform(B, fixtures::sub(A2, {{"y^2 - x^3"}}), StrictMode::saturate);
  std::optional<std::size_t> xchart;
  for (std::size_t n = 0; n < B.result->size(); ++n) {
    std::string v;
    if (fixtures::is_var(B.exceptional.gens[n], &v) && v == "x") xchart = n;
  }
  o.require(xchart.has_value(), "no chart with exceptional x");
  if (!o.ok) return o;
  const Ideal& I = C.ideals[*xchart];
  std::vector<Polynomial> jac = I.generators();
  const Ring& R = I.ring();
  for (auto& g : I.generators())
    for (std::size_t v = 0; v < R->nvars(); ++v) jac.push_back(derivative(g, v));
  o.require(!I.is_unit(), "strict transform misses the chart");
  o.require(Ideal(R, jac).is_unit(), "Jacobian ideal plus curve ideal is not the unit ideal");
  if (o.ok) o.detail = "strict transform " + I.str() + " in chart " + B.result->charts[*xchart].label + " is smooth";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::string a = suite_json(run_suite("all")).dump(2);
  std::string b = suite_json(run_suite("all")).dump(2);
  o.require(a == b, "suite reports differ");
  if (o.ok) o.detail = "two full-suite JSON reports byte-identical (" + std::to_string(a.size()) + " bytes)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Groebner oracle equivalence", groebner_oracle},
      {"ideal-calculus laws", ideal_laws},
      {"divisor-subtraction adjunction", divisor_subtraction},
      {"blowup universal equalities", universal_equalities},
      {"identity catalog", catalog_suite},
      {"poset blowup structure", poset_structure},
      {"strict-transform mode agreement", mode_agreement},
      {"cusp smoothness", cusp_smooth},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu  %s  %s (%.2fs): %s\n", k + 1, o.ok ? "PASS" : "FAIL", criteria[k].first.c_str(), s,
                o.detail.c_str());
    failed += !o.ok;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
