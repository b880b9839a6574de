#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "../errors.hpp"

namespace blowup_calc {

using Monomial = boost::container::small_vector<std::int32_t, 10>;

inline Monomial unit_monomial(std::size_t n) { return Monomial(n, 0); }

inline long total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0L);
}

inline bool is_constant(const Monomial& m) {
  for (auto e : m)
    if (e != 0) return false;
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// a divides b
inline bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// b / a, caller guarantees divisibility
inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

enum class OrderKind { lex, grevlex, block };

enum class Ordering { less = -1, equal = 0, greater = 1 };

// perm[k] is the variable that has the k-th highest precedence; empty = identity.
// block(k): grevlex on the first k precedence slots, ties broken by grevlex on the rest.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t block = 0;
  std::vector<std::size_t> perm;

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && block == o.block && perm == o.perm;
  }

  static MonomialOrder lex() { return {OrderKind::lex, 0, {}}; }
  static MonomialOrder grevlex() { return {OrderKind::grevlex, 0, {}}; }
  static MonomialOrder block_order(std::size_t k, std::vector<std::size_t> perm = {}) {
    return {OrderKind::block, k, std::move(perm)};
  }
};

namespace detail {

inline std::size_t slot(const MonomialOrder& o, std::size_t k) {
  return o.perm.empty() ? k : o.perm[k];
}

inline int grevlex_range(const MonomialOrder& o, const Monomial& a, const Monomial& b,
                         std::size_t lo, std::size_t hi) {
  long da = 0, db = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    da += a[slot(o, k)];
    db += b[slot(o, k)];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = hi; k-- > lo;) {
    auto v = slot(o, k);
    if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
  }
  return 0;
}

}  // namespace detail

inline int compare_raw(const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  const std::size_t n = a.size();
  switch (o.kind) {
    case OrderKind::lex:
      for (std::size_t k = 0; k < n; ++k) {
        auto v = detail::slot(o, k);
        if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
      }
      return 0;
    case OrderKind::grevlex:
      return detail::grevlex_range(o, a, b, 0, n);
    case OrderKind::block: {
      std::size_t k = std::min(o.block, n);
      int c = detail::grevlex_range(o, a, b, 0, k);
      if (c != 0) return c;
      return detail::grevlex_range(o, a, b, k, n);
    }
  }
  return 0;
}

inline Ordering compare(const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::dimension, "monomials of length " + std::to_string(a.size()) +
                                          " and " + std::to_string(b.size()));
  if (!o.perm.empty() && o.perm.size() != a.size())
    throw Error(ErrorKind::dimension, "order permutation does not match monomial length");
  return static_cast<Ordering>(compare_raw(o, a, b));
}

}  // namespace blowup_calc
