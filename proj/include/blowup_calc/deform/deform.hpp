#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "../blowup/tower.hpp"
#include "../geom/spaces.hpp"

namespace blowup_calc {

enum class DeformKind { single, multiple, composite };

inline const char* to_string(DeformKind k) {
  switch (k) {
    case DeformKind::single: return "single";
    case DeformKind::multiple: return "multiple";
    default: return "composite";
  }
}

struct TowerLogEntry {
  std::string step;
  std::vector<std::string> center;  // canonical GB per source chart
  std::size_t charts = 0;           // charts after the step
};

struct DeformPiece {
  std::string name;
  AtlasPtr total;
  std::vector<std::pair<std::string, Divisor>> divisors;
  std::optional<ClosedSubscheme> section;  // X x 1
  std::vector<TowerLogEntry> log;
  std::vector<TowerStep> steps;

  const Divisor& divisor(const std::string& n) const {
    for (auto& [k, d] : divisors)
      if (k == n) return d;
    throw Error(ErrorKind::unresolved_name, "no divisor named " + n + " on " + name);
  }
};

struct DeformationSpace {
  DeformKind kind = DeformKind::single;
  std::vector<DeformPiece> pieces;  // one piece, or D, dY D, dZ D, dYZ D

  const DeformPiece& main() const { return pieces.front(); }
  const DeformPiece& piece(const std::string& n) const {
    for (auto& p : pieces)
      if (p.name == n) return p;
    throw Error(ErrorKind::unresolved_name, "no piece named " + n);
  }
};

namespace detail {

inline std::string center_text(const ClosedSubscheme& C) {
  std::string s;
  for (std::size_t c = 0; c < C.ideals.size(); ++c) s += (c ? " | " : "") + C.ideals[c].str();
  return s;
}

inline TowerLogEntry log_step(const std::string& name, const BlowupResult& B) {
  TowerLogEntry e{name, {}, B.result->size()};
  for (auto& I : B.center.ideals) e.center.push_back(I.str());
  return e;
}

// subscheme of X x P^1 (chart order: X outer, P^1 inner, t-chart first) given
// by the ideal of Y on the base and t^k on the fiber: k = 0 gives Y x P^1,
// k = 1 gives Y x 0
inline ClosedSubscheme times_p1(const ClosedSubscheme& Y, AtlasPtr XP, bool at_zero, const std::string& t = "t") {
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t p = 0; p < XP->size(); ++p) {
    const Ring& R = XP->charts[p].ring;
    bool tchart = p % 2 == 0;
    if (at_zero && !tchart) {
      gens.push_back({Polynomial::constant(R, 1)});
      continue;
    }
    auto g = in_ring(Y.ideals[p / 2].generators(), R);
    if (at_zero) g.push_back(Polynomial::variable(R, t));
    gens.push_back(g);
  }
  return make_subscheme(std::move(XP), gens);
}

// the section x1 = x0 on the P^1 factors named by (t, s) pairs
inline ClosedSubscheme unit_section(AtlasPtr A, const std::vector<std::pair<std::string, std::string>>& p1s) {
  std::vector<std::vector<Polynomial>> gens;
  for (auto& c : A->charts) {
    std::vector<Polynomial> g;
    for (auto& [t, s] : p1s) {
      const std::string& v = c.ring->has(t) ? t : s;
      g.push_back(Polynomial::variable(c.ring, v) - Polynomial::constant(c.ring, 1));
    }
    gens.push_back(g);
  }
  return make_subscheme(std::move(A), gens);
}

inline ClosedSubscheme pull_steps(const std::vector<const BlowupResult*>& steps, ClosedSubscheme Y) {
  for (auto* B : steps) Y = total_transform(*B, Y);
  return Y;
}

}  // namespace detail

// Bl_{Y x 0}(X x P^1) with the exceptional over Y x 0 and the strict transform of X x 0
inline DeformationSpace deformation_space(const ClosedSubscheme& Y) {
  const AtlasPtr& X = Y.ambient;
  AtlasPtr XP = share(product(*X, projective_space(p1_factor())));
  ClosedSubscheme Y0 = detail::times_p1(Y, XP, true);
  ClosedSubscheme X0 = detail::times_p1(whole(X), XP, true);
  BlowupResult B = blow_up(Y0, "u");
  DeformPiece P{"D", B.result, {}, std::nullopt, {detail::log_step("Y", B)}, {}};
  P.divisors.emplace_back("E'_Y", B.exceptional);
  P.divisors.emplace_back("E'_{}", as_divisor(strict_transform(B, X0)));
  P.section = total_transform(B, detail::unit_section(XP, {{"t", "s"}}));
  P.steps.push_back(TowerStep{"Y", std::move(B)});
  return DeformationSpace{DeformKind::single, {std::move(P)}};
}

struct FamilyMember {
  std::string name;
  ClosedSubscheme sub;  // Y_omega in X_omega
};

// Psi -> Y^Psi x X^(Omega - Psi) x 0 inside X^Omega x P^1, over P(Omega)^op with a maximum
inline PosetDiagram multiple_deformation_diagram(const std::vector<FamilyMember>& family) {
  if (family.empty()) throw Error(ErrorKind::invalid_input, "empty family");
  Atlas prod = *family[0].sub.ambient;
  std::vector<std::string> names{family[0].name};
  for (std::size_t k = 1; k < family.size(); ++k) {
    prod = product(prod, *family[k].sub.ambient);
    names.push_back(family[k].name);
  }
  AtlasPtr XP = share(product(prod, projective_space(p1_factor())));
  const std::size_t n = family.size();
  // chart index of each factor inside a chart of the product
  auto factor_chart = [&](std::size_t p, std::size_t k) {
    std::size_t q = p / 2;
    for (std::size_t m = n; m-- > k + 1;) q /= family[m].sub.ambient->size();
    return q % family[k].sub.ambient->size();
  };
  Lattice L = Lattice::power_set_op_plus(names);
  std::vector<ClosedSubscheme> assign;
  for (std::size_t e = 0; e < L.size(); ++e) {
    if (e == L.top()) {
      assign.push_back(whole(XP));
      continue;
    }
    std::vector<std::vector<Polynomial>> gens;
    for (std::size_t p = 0; p < XP->size(); ++p) {
      const Ring& R = XP->charts[p].ring;
      if (p % 2 == 1) {
        gens.push_back({Polynomial::constant(R, 1)});
        continue;
      }
      std::vector<Polynomial> g{Polynomial::variable(R, "t")};
      for (std::size_t k = 0; k < n; ++k)
        if (e & (std::size_t{1} << k))
          for (auto& h : family[k].sub.ideals[factor_chart(p, k)].generators()) g.push_back(h.in_ring(R));
      gens.push_back(g);
    }
    assign.push_back(make_subscheme(XP, gens));
  }
  return make_diagram(L, assign);
}

inline DeformationSpace multiple_deformation_space(const std::vector<FamilyMember>& family) {
  PosetDiagram d = multiple_deformation_diagram(family);
  const Lattice& L = d.lattice;
  const AtlasPtr& XP = d.ambient();
  PosetBlowupResult R = poset_blow_up(d);
  DeformPiece P{"D", R.atlas, {}, std::nullopt, {}, {}};
  for (auto& s : R.steps) P.log.push_back(detail::log_step(s.name, s.blowup));
  for (std::size_t e : R.order_used) P.divisors.emplace_back("E'_" + L.name(e), *R.strict_exceptionals[e]);
  std::vector<const BlowupResult*> steps;
  for (auto& s : R.steps) steps.push_back(&s.blowup);
  P.section = detail::pull_steps(steps, detail::unit_section(XP, {{"t", "s"}}));
  P.steps = std::move(R.steps);
  return DeformationSpace{DeformKind::multiple, {std::move(P)}};
}

namespace detail {

inline DeformPiece pushout_piece(const std::string& name, const Square& sq, std::optional<ClosedSubscheme> section) {
  PushoutBlowupResult R = pushout_blow_up(sq, PushoutOrder::z_first);
  DeformPiece P{name, R.atlas, {}, std::nullopt, {}, {}};
  for (auto& s : R.steps) P.log.push_back(log_step(s.name, s.blowup));
  P.divisors.emplace_back("E'_Y", R.e_y);
  P.divisors.emplace_back("E'_Z", R.e_z);
  P.divisors.emplace_back("E'_{Y,Z}", R.e_w);
  if (section) P.section = pull_through(R.steps, *section);
  P.steps = std::move(R.steps);
  return P;
}

// Y x (Y-factor) x (Z-factor) on X x P^1(t,s) x P^1(a,b); flags say which factor sits at 0
inline ClosedSubscheme times_p1p1(const ClosedSubscheme& Y, AtlasPtr XPP, bool t0, bool a0) {
  std::vector<std::vector<Polynomial>> gens;
  for (std::size_t p = 0; p < XPP->size(); ++p) {
    const Ring& R = XPP->charts[p].ring;
    bool tchart = (p / 2) % 2 == 0, achart = p % 2 == 0;
    if ((t0 && !tchart) || (a0 && !achart)) {
      gens.push_back({Polynomial::constant(R, 1)});
      continue;
    }
    auto g = in_ring(Y.ideals[p / 4].generators(), R);
    if (t0) g.push_back(Polynomial::variable(R, "t"));
    if (a0) g.push_back(Polynomial::variable(R, "a"));
    gens.push_back(g);
  }
  return make_subscheme(std::move(XPP), gens);
}

}  // namespace detail

// the four pushout-blowups D, dY D, dZ D, dYZ D of a chain Z in Y in X
inline DeformationSpace composite_deformation_space(const ClosedSubscheme& Z, const ClosedSubscheme& Y) {
  require_same_ambient(Z, Y);
  for (std::size_t c = 0; c < Z.ideals.size(); ++c)
    if (!Z.ideals[c].contains(Y.ideals[c])) throw Error(ErrorKind::invalid_diagram, "Z is not contained in Y");
  const AtlasPtr& X = Y.ambient;
  auto P1t = projective_space(p1_factor("t", "s"));
  auto P1a = projective_space(p1_factor("a", "b"));
  AtlasPtr XPP = share(product(product(*X, P1t), P1a));
  AtlasPtr XPt = share(product(*X, P1t));
  AtlasPtr XPa = share(product(*X, P1a));
  std::vector<std::function<DeformPiece()>> build{
      [&] {
        Square sq{detail::times_p1p1(Z, XPP, true, true), detail::times_p1p1(Z, XPP, true, false),
                  detail::times_p1p1(Y, XPP, false, true)};
        return detail::pushout_piece("D", sq, detail::unit_section(XPP, {{"t", "s"}, {"a", "b"}}));
      },
      [&] {
        Square sq{detail::times_p1(Z, XPt, true), detail::times_p1(Z, XPt, true), detail::times_p1(Y, XPt, false)};
        return detail::pushout_piece("dY D", sq, std::nullopt);
      },
      [&] {
        Square sq{detail::times_p1(Z, XPa, true, "a"), detail::times_p1(Z, XPa, false, "a"),
                  detail::times_p1(Y, XPa, true, "a")};
        return detail::pushout_piece("dZ D", sq, std::nullopt);
      },
      [&] { return detail::pushout_piece("dYZ D", Square{Z, Z, Y}, std::nullopt); },
  };
  auto pieces = parallel_map(build.size(), [&](std::size_t k) { return build[k](); });
  return DeformationSpace{DeformKind::composite, std::move(pieces)};
}

// the section X x 1 misses every labeled divisor
inline std::vector<std::string> section_defects(const DeformationSpace& D) {
  std::vector<std::string> out;
  for (auto& P : D.pieces) {
    if (!P.section) continue;
    for (auto& [name, div] : P.divisors)
      if (!is_empty(intersect(*P.section, div.sub))) out.push_back(P.name + ": section meets " + name);
  }
  return out;
}

// E'_Z of dY D and of dYZ D are empty
inline std::vector<std::string> composite_vanishing_defects(const DeformationSpace& D) {
  std::vector<std::string> out;
  for (const char* n : {"dY D", "dYZ D"})
    if (!is_empty(D.piece(n).divisor("E'_Z").sub)) out.push_back(std::string("E'_Z of ") + n + " is not empty");
  return out;
}

}  // namespace blowup_calc
