#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../geom/conormal.hpp"
#include "blowup.hpp"
#include "lattice.hpp"

namespace blowup_calc {

struct TowerStep {
  std::string name;  // what was blown up
  BlowupResult blowup;
};

// ---- poset blowups

struct PosetBlowupResult {
  AtlasPtr atlas;
  std::vector<std::optional<Divisor>> strict_exceptionals;  // by element; none for the maximum
  std::vector<ClosedSubscheme> composite_exceptionals;      // product of E'_rho over rho <= pi
  std::vector<ClosedSubscheme> pullbacks;                   // I_{Y_pi} pulled back to the final space
  std::vector<std::size_t> order_used;
  std::vector<TowerStep> steps;
};

inline ClosedSubscheme remove_divisor(const ClosedSubscheme& Y, const Divisor& D, StrictMode mode) {
  if (mode == StrictMode::quotient_once) return subtract_divisor(Y, D);
  ClosedSubscheme out = Y;
  for (std::size_t c = 0; c < out.ideals.size(); ++c) out.ideals[c] = saturation(out.ideals[c], D.gens[c]);
  return out;
}

namespace detail {

inline std::string step_fiber(std::size_t step) {
  static const char* letters[] = {"u", "v", "r", "q", "m", "n"};
  return step < 6 ? letters[step] : "u" + std::to_string(step);
}

}  // namespace detail

// iterated blowup along strict transforms in a fixed linear extension
inline PosetBlowupResult poset_blow_up(const PosetDiagram& d, StrictMode mode = StrictMode::saturate) {
  const Lattice& L = d.lattice;
  if (!excessive_check_lattice(d)) throw Error(ErrorKind::invalid_diagram, "diagram is not excessive");
  PosetBlowupResult R;
  R.order_used = L.linear_extension();
  std::vector<ClosedSubscheme> pulled = d.assign;
  std::vector<std::optional<Divisor>> Ep(L.size());
  for (std::size_t s = 0; s < R.order_used.size(); ++s) {
    std::size_t p = R.order_used[s];
    ClosedSubscheme center = pulled[p];
    for (std::size_t rho = 0; rho < L.size(); ++rho)
      if (rho != p && L.leq(rho, p) && Ep[rho]) center = remove_divisor(center, *Ep[rho], mode);
    BlowupResult B = blow_up(center, detail::step_fiber(s));
    for (auto& Y : pulled) Y = total_transform(B, Y);
    for (auto& E : Ep)
      if (E) E = strict_divisor(B, *E);
    Ep[p] = B.exceptional;
    R.steps.push_back(TowerStep{L.name(p), std::move(B)});
  }
  R.atlas = R.steps.empty() ? d.ambient() : R.steps.back().blowup.result;
  R.strict_exceptionals = Ep;
  R.pullbacks = pulled;
  for (std::size_t pi = 0; pi < L.size(); ++pi) {
    ClosedSubscheme acc = pi == L.top() ? whole(R.atlas) : empty_subscheme(R.atlas);
    if (pi != L.top())
      for (std::size_t rho = 0; rho < L.size(); ++rho)
        if (L.leq(rho, pi) && Ep[rho]) acc = add_closed(acc, Ep[rho]->sub);
    R.composite_exceptionals.push_back(acc);
  }
  return R;
}

// E_pi = sum of E'_rho, incomparable E' disjoint, every E' Cartier
inline std::vector<std::string> poset_defects(const PosetDiagram& d, const PosetBlowupResult& R) {
  const Lattice& L = d.lattice;
  std::vector<std::string> out;
  for (std::size_t pi = 0; pi < L.size(); ++pi) {
    if (pi == L.top()) continue;
    if (!subscheme_equal(R.pullbacks[pi], R.composite_exceptionals[pi]))
      out.push_back("E_" + L.name(pi) + " differs from the sum of strict exceptionals below it");
    if (!divisor_sound(*R.strict_exceptionals[pi])) out.push_back("E'_" + L.name(pi) + " is not a divisor");
  }
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = a + 1; b < L.size(); ++b) {
      if (a == L.top() || b == L.top() || L.comparable(a, b)) continue;
      if (!is_empty(intersect(R.strict_exceptionals[a]->sub, R.strict_exceptionals[b]->sub)))
        out.push_back("E'_" + L.name(a) + " meets E'_" + L.name(b));
    }
  return out;
}

// ---- pushout-blowups

enum class PushoutOrder { z_first, y_first };

inline const char* to_string(PushoutOrder o) { return o == PushoutOrder::z_first ? "z_first" : "y_first"; }

struct PushoutBlowupResult {
  AtlasPtr atlas;
  Divisor e_y, e_z, e_w;
  PushoutOrder order = PushoutOrder::z_first;
  std::vector<TowerStep> steps;
  ClosedSubscheme pull_y, pull_z, pull_yz;  // I_Y, I_Z, I_Y cap I_Z pulled back
};

inline ClosedSubscheme pull_through(const std::vector<TowerStep>& steps, ClosedSubscheme Y) {
  for (auto& s : steps) Y = total_transform(s.blowup, Y);
  return Y;
}

// Bl_{Bl_{E_W Y}(E_Z X)_W} Bl_{Bl_W Y} Bl_Z X, or the mirror with Y and Z swapped
inline PushoutBlowupResult pushout_blow_up(const Square& sq, PushoutOrder order = PushoutOrder::z_first) {
  if (!excessive_check_square(sq)) throw Error(ErrorKind::invalid_diagram, "square is not excessive");
  const bool zf = order == PushoutOrder::z_first;
  const ClosedSubscheme& first = zf ? sq.Z : sq.Y;
  const ClosedSubscheme& second = zf ? sq.Y : sq.Z;
  PushoutBlowupResult R;
  R.order = order;
  BlowupResult B1 = blow_up(first, "u");
  ClosedSubscheme S2 = strict_transform(B1, second);
  BlowupResult B2 = blow_up(S2, "v");
  ClosedSubscheme T = intersect(B1.exceptional.sub, total_transform(B1, sq.W));
  ClosedSubscheme C3 = strict_transform(B2, T);
  BlowupResult B3 = blow_up(C3, "r");
  Divisor e_first = strict_divisor(B3, strict_divisor(B2, B1.exceptional));
  Divisor e_second = strict_divisor(B3, B2.exceptional);
  R.e_w = B3.exceptional;
  R.e_z = zf ? e_first : e_second;
  R.e_y = zf ? e_second : e_first;
  R.steps.push_back(TowerStep{zf ? "Z" : "Y", std::move(B1)});
  R.steps.push_back(TowerStep{zf ? "Bl_W Y" : "Bl_W Z", std::move(B2)});
  R.steps.push_back(TowerStep{zf ? "Bl_{E_W Y}(E_Z X)_W" : "Bl_{E_W Z}(E_Y X)_W", std::move(B3)});
  R.atlas = R.steps.back().blowup.result;
  R.pull_y = pull_through(R.steps, sq.Y);
  R.pull_z = pull_through(R.steps, sq.Z);
  R.pull_yz = pull_through(R.steps, union_closed(sq.Y, sq.Z));
  return R;
}

// the three surjectivity equalities of the cube, chartwise
inline std::vector<std::string> cube_defects(const PushoutBlowupResult& R) {
  std::vector<std::string> out;
  if (!subscheme_equal(R.pull_y, add_closed(R.e_y.sub, R.e_w.sub))) out.push_back("I_Y does not pull back to E'_Y + E'_W");
  if (!subscheme_equal(R.pull_z, add_closed(R.e_z.sub, R.e_w.sub))) out.push_back("I_Z does not pull back to E'_Z + E'_W");
  if (!subscheme_equal(R.pull_yz, add_closed(add_closed(R.e_y.sub, R.e_z.sub), R.e_w.sub)))
    out.push_back("I_Y cap I_Z does not pull back to E'_Y + E'_Z + E'_W");
  for (const Divisor* D : {&R.e_y, &R.e_z, &R.e_w})
    if (!divisor_sound(*D)) out.push_back("a strict exceptional is not a divisor");
  return out;
}

// which of the strict exceptionals meet, and on how many charts
struct Incidence {
  std::vector<std::pair<std::string, std::size_t>> entries;  // "Y.Z", "Y.W", "Z.W", "Y.Z.W"
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

inline Incidence incidence(const PushoutBlowupResult& R) {
  Incidence inc;
  auto count = [&](const ClosedSubscheme& S) {
    std::size_t n = 0;
    for (auto& I : S.ideals)
      if (!I.is_unit()) ++n;
    return n;
  };
  inc.entries.emplace_back("Y.Z", count(intersect(R.e_y.sub, R.e_z.sub)));
  inc.entries.emplace_back("Y.W", count(intersect(R.e_y.sub, R.e_w.sub)));
  inc.entries.emplace_back("Z.W", count(intersect(R.e_z.sub, R.e_w.sub)));
  inc.entries.emplace_back("Y.Z.W", count(intersect(intersect(R.e_y.sub, R.e_z.sub), R.e_w.sub)));
  return inc;
}

// ---- conormal of Bl_W Z inside Bl_Y X

struct StrictConormal {
  ClosedSubscheme strict;                          // Bl_W Z in Bl_Y X
  std::vector<ConormalPresentation> per_chart;     // empty presentation on charts missing it
  std::vector<unsigned> twist;                     // power of the exceptional dividing the pulled-back I_Z
  std::size_t rank = 0;                            // maximal chart rank
};

inline StrictConormal conormal_of_strict_transform(const Square& sq, const BlowupResult& BY) {
  if (!excessive_check_square(sq)) throw Error(ErrorKind::invalid_diagram, "square is not excessive");
  if (BY.center.ambient != sq.ambient()) throw Error(ErrorKind::invalid_input, "blowup is not over the square's ambient");
  StrictConormal out{strict_transform(BY, sq.Z), {}, {}, 0};
  ClosedSubscheme total = total_transform(BY, sq.Z);
  for (std::size_t n = 0; n < BY.result->size(); ++n) {
    const Ideal& S = out.strict.ideals[n];
    const Ideal& rel = BY.result->charts[n].relations;
    if (S.is_unit()) {
      out.per_chart.emplace_back();
      out.twist.push_back(0);
      continue;
    }
    out.per_chart.push_back(conormal_presentation(S, rel));
    out.rank = std::max(out.rank, out.per_chart.back().rank);
    // total = e^k * strict
    const Polynomial& e = BY.exceptional.gens[n];
    unsigned k = 0;
    Ideal acc = S;
    while (!e.is_constant() && k < 16) {
      Ideal next = ideal_sum(rel, ideal_product(principal(e), acc));
      if (!next.contains(total.ideals[n])) break;
      acc = next;
      ++k;
    }
    out.twist.push_back(k);
  }
  return out;
}

}  // namespace blowup_calc
