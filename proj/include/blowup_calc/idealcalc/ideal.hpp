#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "groebner.hpp"

namespace blowup_calc {

class Ideal {
 public:
  Ideal() : cache_(std::make_shared<Cache>()) {}
  explicit Ideal(Ring r) : ring_(std::move(r)), cache_(std::make_shared<Cache>()) {}
  Ideal(Ring r, std::vector<Polynomial> gens) : ring_(std::move(r)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      require_same_ring(ring_, g.ring(), "ideal");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(const Ring& r) { return Ideal(r, {Polynomial::constant(r, 1)}); }
  static Ideal zero(const Ring& r) { return Ideal(r); }

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  // reduced basis in the ring's default order, computed at most once per value;
  // copies share the memo
  const std::vector<Polynomial>& gb() const {
    std::call_once(cache_->once, [this] { cache_->basis = groebner_basis(gens_); });
    return cache_->basis;
  }

  bool contains(const Polynomial& f) const {
    require_same_ring(ring_, f.ring(), "contains");
    if (f.is_zero()) return true;
    return normal_form(f, gb()).is_zero();
  }
  bool contains(const Ideal& J) const {
    for (auto& g : J.generators())
      if (!contains(g)) return false;
    return true;
  }
  bool is_unit() const {
    const auto& b = gb();
    return b.size() == 1 && b[0].is_constant();
  }
  bool is_zero() const { return gens_.empty(); }

  Polynomial reduce(const Polynomial& f) const { return normal_form(f, gb()); }

  // canonical serialization: reduced basis strings sorted lexicographically
  std::vector<std::string> canonical() const {
    std::vector<std::string> out;
    for (auto& g : gb()) out.push_back(g.str());
    std::sort(out.begin(), out.end());
    return out;
  }
  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (auto& g : canonical()) {
      if (!first) s += ", ";
      first = false;
      s += g;
    }
    return s + ")";
  }

  Ideal in_ring(const Ring& target) const { return Ideal(target, blowup_calc::in_ring(gens_, target)); }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> basis;
  };
  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline bool ideal_equal(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_equal");
  return I.contains(J) && J.contains(I);
}

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_sum");
  auto g = I.generators();
  for (auto& h : J.generators()) g.push_back(h);
  return Ideal(I.ring(), std::move(g));
}

inline Ideal ideal_sum(const Ideal& I, const std::vector<Polynomial>& fs) {
  return ideal_sum(I, Ideal(I.ring(), fs));
}

inline Ideal ideal_product(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_product");
  std::vector<Polynomial> g;
  for (auto& a : I.generators())
    for (auto& b : J.generators()) g.push_back(a * b);
  return Ideal(I.ring(), std::move(g));
}

inline Ideal principal(const Polynomial& f) { return Ideal(f.ring(), {f}); }

// ideal in the ring without the listed variables, generated by I ∩ that subring.
// The result lives in I's ring; generators avoid the eliminated variables.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars) {
  const Ring& R = I.ring();
  if (vars.empty()) return I;
  std::vector<std::size_t> perm;
  std::vector<bool> elim(R->nvars(), false);
  for (auto& v : vars) {
    auto i = R->index_of(v);
    if (!i) throw Error(ErrorKind::unresolved_name, "cannot eliminate unknown variable " + v);
    if (!elim[*i]) perm.push_back(*i);
    elim[*i] = true;
  }
  std::size_t k = perm.size();
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (!elim[i]) perm.push_back(i);
  Ring E = make_ring(R->vars(), MonomialOrder::block_order(k, perm));
  auto basis = groebner_basis(blowup_calc::in_ring(I.generators(), E));
  std::vector<Polynomial> keep;
  for (auto& g : basis) {
    bool free = true;
    for (std::size_t i = 0; i < R->nvars() && free; ++i)
      if (elim[i] && g.involves(i)) free = false;
    if (free) keep.push_back(g.in_ring(R));
  }
  return Ideal(R, std::move(keep));
}

// eliminate extra variables of a larger ring, landing in the smaller ring
inline Ideal eliminate_into(const Ideal& I, const Ring& target) {
  std::vector<std::string> extra;
  for (auto& v : I.ring()->vars())
    if (!target->has(v)) extra.push_back(v);
  Ideal e = eliminate(I, extra);
  return Ideal(target, blowup_calc::in_ring(e.generators(), target));
}

inline Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_intersection");
  const Ring& R = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal::zero(R);
  std::string t = fresh_name(*R, "t");
  Ring Rt = extend_ring(R, {t});
  Polynomial tv = Polynomial::variable(Rt, R->nvars());
  Polynomial one_minus_t = Polynomial::constant(Rt, 1) - tv;
  std::vector<Polynomial> g;
  for (auto& a : I.generators()) g.push_back(tv * a.in_ring(Rt));
  for (auto& b : J.generators()) g.push_back(one_minus_t * b.in_ring(Rt));
  return eliminate_into(Ideal(Rt, std::move(g)), R);
}

inline Ideal ideal_quotient(const Ideal& I, const Polynomial& f) {
  require_same_ring(I.ring(), f.ring(), "ideal_quotient");
  if (f.is_zero()) throw Error(ErrorKind::invalid_input, "quotient by the zero polynomial");
  if (f.is_constant()) return I;
  Ideal cap = ideal_intersection(I, principal(f));
  std::vector<Polynomial> g;
  for (auto& h : cap.gb()) {
    auto q = exact_div(h, f);
    if (!q) throw Error(ErrorKind::invalid_input, "intersection element not divisible by f");
    g.push_back(*q);
  }
  return Ideal(I.ring(), std::move(g));
}

// I : J = intersection of I : g over generators g of J
inline Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring(), "ideal_quotient");
  if (J.is_zero()) return Ideal::unit(I.ring());
  std::optional<Ideal> acc;
  for (auto& g : J.gb()) {
    Ideal q = ideal_quotient(I, g);
    acc = acc ? ideal_intersection(*acc, q) : q;
  }
  return *acc;
}

// iterated quotient until stable
inline Ideal saturation(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::invalid_input, "saturation by the zero polynomial");
  Ideal cur = I;
  for (;;) {
    Ideal next = ideal_quotient(cur, f);
    if (cur.contains(next)) return cur;
    cur = Ideal(I.ring(), next.gb());
  }
}

// Rabinowitsch: I : f^inf = (I + <1 - t f>) ∩ R
inline Ideal saturation_rabinowitsch(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::invalid_input, "saturation by the zero polynomial");
  const Ring& R = I.ring();
  std::string t = fresh_name(*R, "t");
  Ring Rt = extend_ring(R, {t});
  auto g = blowup_calc::in_ring(I.generators(), Rt);
  g.push_back(Polynomial::constant(Rt, 1) - Polynomial::variable(Rt, R->nvars()) * f.in_ring(Rt));
  return eliminate_into(Ideal(Rt, std::move(g)), R);
}

inline bool is_nonzerodivisor(const Polynomial& f, const Ideal& I) {
  if (f.is_zero()) throw Error(ErrorKind::invalid_input, "nonzerodivisor test on 0");
  return I.contains(ideal_quotient(I, f));
}

// 1 in I + <1 - t f>, i.e. f is nilpotent modulo I
inline bool in_radical(const Polynomial& f, const Ideal& I) {
  if (f.is_zero()) return true;
  const Ring& R = I.ring();
  Ring Rt = extend_ring(R, {fresh_name(*R, "t")});
  auto g = blowup_calc::in_ring(I.generators(), Rt);
  g.push_back(Polynomial::constant(Rt, 1) - Polynomial::variable(Rt, R->nvars()) * f.in_ring(Rt));
  return Ideal(Rt, std::move(g)).is_unit();
}

}  // namespace blowup_calc
