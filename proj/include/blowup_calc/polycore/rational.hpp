#pragma once

#include <gmpxx.h>

#include <string>

namespace blowup_calc {

// mpq_class keeps values canonical (lowest terms, positive denominator, 0 = 0/1)
// as long as every constructor path goes through canonicalize().
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_one(const Rational& q) { return q == 1; }

}  // namespace blowup_calc
