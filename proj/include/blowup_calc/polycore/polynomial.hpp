#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace blowup_calc {

class PolyRing {
 public:
  PolyRing(std::vector<std::string> vars, MonomialOrder order)
      : vars_(std::move(vars)), order_(std::move(order)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!index_.emplace(vars_[i], i).second)
        throw Error(ErrorKind::invalid_input, "duplicate variable " + vars_[i]);
    }
    if (!order_.perm.empty()) {
      if (order_.perm.size() != vars_.size())
        throw Error(ErrorKind::dimension, "order permutation does not cover the variables");
      std::vector<bool> seen(vars_.size(), false);
      for (auto p : order_.perm) {
        if (p >= vars_.size() || seen[p])
          throw Error(ErrorKind::invalid_input, "order permutation is not a permutation");
        seen[p] = true;
      }
    }
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  int cmp(const Monomial& a, const Monomial& b) const { return compare_raw(order_, a, b); }

  bool same_as(const PolyRing& o) const { return vars_ == o.vars_ && order_ == o.order_; }

 private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
  std::map<std::string, std::size_t> index_;
};

using Ring = std::shared_ptr<const PolyRing>;

inline Ring make_ring(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<const PolyRing>(std::move(vars), std::move(order));
}

inline bool same_ring(const Ring& a, const Ring& b) {
  return a == b || (a && b && a->same_as(*b));
}

inline void require_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (!same_ring(a, b)) throw Error(ErrorKind::ring_mismatch, std::string("operands of ") + where);
}

// fresh variable name not clashing with ring variables: base, base1, base2, ...
inline std::string fresh_name(const PolyRing& r, const std::string& base) {
  if (!r.has(base)) return base;
  for (int i = 1;; ++i) {
    std::string s = base + std::to_string(i);
    if (!r.has(s)) return s;
  }
}

struct Term {
  Monomial m;
  Rational c;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Ring r) : ring_(std::move(r)) {}

  // terms may be unsorted and contain duplicates or zeros
  Polynomial(Ring r, std::vector<Term> terms) : ring_(std::move(r)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(Ring r, const Rational& c) {
    Polynomial p(r);
    if (c != 0) p.terms_.push_back({unit_monomial(r->nvars()), c});
    return p;
  }
  static Polynomial variable(Ring r, std::size_t i) {
    Monomial m = unit_monomial(r->nvars());
    m[i] = 1;
    Polynomial p(r);
    p.terms_.push_back({std::move(m), Rational(1)});
    return p;
  }
  static Polynomial variable(Ring r, const std::string& name) {
    auto i = r->index_of(name);
    if (!i) throw Error(ErrorKind::unresolved_name, "variable " + name);
    return variable(r, *i);
  }
  static Polynomial monomial(Ring r, Monomial m, Rational c = 1) {
    Polynomial p(r);
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  // caller guarantees terms are strictly descending with nonzero coefficients
  static Polynomial from_sorted(Ring r, std::vector<Term> terms) {
    Polynomial p(std::move(r));
    p.terms_ = std::move(terms);
    return p;
  }

  void drop_lead() { terms_.erase(terms_.begin()); }

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && blowup_calc::is_constant(terms_[0].m)); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].c == 1; }
  std::size_t size() const { return terms_.size(); }

  const Monomial& lm() const { return terms_.front().m; }
  const Rational& lc() const { return terms_.front().c; }

  long degree() const {
    long d = -1;
    for (auto& t : terms_) d = std::max(d, total_degree(t.m));
    return d;
  }
  long degree_in(std::size_t v) const {
    long d = -1;
    for (auto& t : terms_) d = std::max<long>(d, t.m[v]);
    return d;
  }
  bool involves(std::size_t v) const {
    for (auto& t : terms_)
      if (t.m[v] != 0) return true;
    return false;
  }

  Polynomial monic() const {
    if (is_zero() || lc() == 1) return *this;
    Rational inv = 1 / lc();
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) p.terms_.push_back({t.m, t.c * inv});
    return p;
  }

  Polynomial operator-() const {
    Polynomial p(*this);
    for (auto& t : p.terms_) t.c = -t.c;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, -1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_, "mul");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].c, a.terms_[0].m);
    if (b.size() == 1) return a.mul_term(b.terms_[0].c, b.terms_[0].m);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (auto& s : a.terms_)
      for (auto& t : b.terms_) out.push_back({mono_mul(s.m, t.m), s.c * t.c});
    return Polynomial(a.ring_, std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Rational& c) { return a.scale(c); }
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a.scale(c); }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const Rational& c) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial p(*this);
    for (auto& t : p.terms_) t.c *= c;
    return p;
  }

  // c * m * this; order is preserved because orders are multiplicative
  Polynomial mul_term(const Rational& c, const Monomial& m) const {
    if (c == 0) return Polynomial(ring_);
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) p.terms_.push_back({mono_mul(t.m, m), t.c * c});
    return p;
  }

  // this - c * m * g, merged in one pass
  Polynomial sub_mul(const Rational& c, const Monomial& m, const Polynomial& g) const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + g.size());
    auto i = terms_.begin();
    auto j = g.terms_.begin();
    const PolyRing& R = *ring_;
    while (i != terms_.end() || j != g.terms_.end()) {
      if (j == g.terms_.end()) {
        r.terms_.push_back(*i++);
        continue;
      }
      Monomial mj = mono_mul(j->m, m);
      if (i == terms_.end()) {
        r.terms_.push_back({std::move(mj), -(c * j->c)});
        ++j;
        continue;
      }
      int k = R.cmp(i->m, mj);
      if (k > 0) {
        r.terms_.push_back(*i++);
      } else if (k < 0) {
        r.terms_.push_back({std::move(mj), -(c * j->c)});
        ++j;
      } else {
        Rational v = i->c - c * j->c;
        if (v != 0) r.terms_.push_back({i->m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;

  // same polynomial viewed in another ring; variables are matched by name
  Polynomial in_ring(const Ring& target) const;

 private:
  void normalize() {
    const PolyRing& R = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& x, const Term& y) { return R.cmp(x.m, y.m) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
      if (out.back().c == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, int sign) {
    require_same_ring(a.ring_, b.ring_, sign > 0 ? "add" : "sub");
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    const PolyRing& R = *a.ring_;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int k;
      if (i == a.terms_.end())
        k = -1;
      else if (j == b.terms_.end())
        k = 1;
      else
        k = R.cmp(i->m, j->m);
      if (k > 0) {
        r.terms_.push_back(*i++);
      } else if (k < 0) {
        r.terms_.push_back({j->m, sign > 0 ? j->c : Rational(-j->c)});
        ++j;
      } else {
        Rational v = sign > 0 ? Rational(i->c + j->c) : Rational(i->c - j->c);
        if (v != 0) r.terms_.push_back({i->m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Ring ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_str(const PolyRing& r, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += r.vars()[i];
    if (m[i] != 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

inline std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    bool neg = t.c < 0;
    Rational a = abs(t.c);
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string ms = monomial_str(*ring_, t.m);
    if (ms.empty())
      s += a.get_str();
    else if (a == 1)
      s += ms;
    else
      s += a.get_str() + "*" + ms;
  }
  return s;
}

inline Polynomial Polynomial::in_ring(const Ring& target) const {
  if (ring_ == target) return *this;
  std::vector<std::size_t> map(ring_->nvars(), SIZE_MAX);
  for (std::size_t i = 0; i < ring_->nvars(); ++i) {
    auto j = target->index_of(ring_->vars()[i]);
    if (j) map[i] = *j;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    Monomial m = unit_monomial(target->nvars());
    for (std::size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i] == 0) continue;
      if (map[i] == SIZE_MAX)
        throw Error(ErrorKind::ring_mismatch, "variable " + ring_->vars()[i] + " missing in target ring");
      m[map[i]] = t.m[i];
    }
    out.push_back({std::move(m), t.c});
  }
  return Polynomial(target, std::move(out));
}

inline std::vector<Polynomial> in_ring(const std::vector<Polynomial>& fs, const Ring& target) {
  std::vector<Polynomial> out;
  out.reserve(fs.size());
  for (auto& f : fs) out.push_back(f.in_ring(target));
  return out;
}

// ring with the same variables and a different default order
// partial derivative with respect to variable v
inline Polynomial derivative(const Polynomial& f, std::size_t v) {
  std::vector<Term> out;
  for (auto& t : f.terms()) {
    if (t.m[v] == 0) continue;
    Monomial m = t.m;
    Rational c = t.c * static_cast<long>(m[v]);
    --m[v];
    out.push_back({std::move(m), std::move(c)});
  }
  return Polynomial(f.ring(), std::move(out));
}

inline Ring with_order(const Ring& r, MonomialOrder o) {
  if (r->order() == o) return r;
  return make_ring(r->vars(), std::move(o));
}

// ring with extra variables appended
inline Ring extend_ring(const Ring& r, const std::vector<std::string>& extra) {
  auto vars = r->vars();
  for (auto& v : extra) vars.push_back(v);
  MonomialOrder o = r->order();
  if (!o.perm.empty())
    for (std::size_t i = r->nvars(); i < vars.size(); ++i) o.perm.push_back(i);
  return make_ring(std::move(vars), std::move(o));
}

}  // namespace blowup_calc
