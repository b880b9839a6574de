#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace blowup_calc {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*     division only by nonzero constants
// factor := atom ['^' integer]
// atom   := integer | name | '(' expr ')'
class PolyParser {
 public:
  PolyParser(Ring ring, std::string_view text, std::size_t base_offset = 0)
      : ring_(std::move(ring)), s_(text), base_(base_offset) {}

  Polynomial parse_all() {
    Polynomial p = expr();
    skip();
    if (i_ != s_.size()) fail(std::string("unexpected '") + s_[i_] + "'");
    return p;
  }

  Polynomial expr() {
    skip();
    bool neg = false;
    if (peek('+') || peek('-')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    Polynomial p = term();
    if (neg) p = -p;
    for (;;) {
      skip();
      if (peek('+')) {
        ++i_;
        p = p + term();
      } else if (peek('-')) {
        ++i_;
        p = p - term();
      } else {
        return p;
      }
    }
  }

  std::size_t pos() const { return i_; }

 private:
  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      skip();
      if (peek('*')) {
        ++i_;
        p = p * factor();
      } else if (peek('/')) {
        ++i_;
        std::size_t at = i_;
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail_at(at, "division by a non-constant or zero");
        p = p.scale(1 / d.lc());
      } else {
        return p;
      }
    }
  }

  Polynomial factor() {
    Polynomial a = atom();
    skip();
    if (peek('^')) {
      ++i_;
      skip();
      std::size_t at = i_;
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        fail("expected exponent");
      unsigned long e = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        e = e * 10 + static_cast<unsigned long>(s_[i_] - '0');
        if (e > 10000) fail_at(at, "exponent too large");
        ++i_;
      }
      a = a.pow(static_cast<unsigned>(e));
    }
    return a;
  }

  Polynomial atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Polynomial p = expr();
      skip();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      mpz_class z(std::string(s_.substr(b, i_ - b)));
      return Polynomial::constant(ring_, Rational(z));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(b, i_ - b));
      auto idx = ring_->index_of(name);
      if (!idx) throw Error(ErrorKind::unresolved_name, "variable '" + name + "' at offset " + std::to_string(base_ + b));
      return Polynomial::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }
  [[noreturn]] void fail(const std::string& msg) { fail_at(i_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) { throw SyntaxError(base_ + at, msg); }

  Ring ring_;
  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

inline Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  return PolyParser(ring, text).parse_all();
}

inline std::vector<Polynomial> parse_polynomials(const Ring& ring, std::initializer_list<std::string_view> texts) {
  std::vector<Polynomial> out;
  for (auto t : texts) out.push_back(parse_polynomial(ring, t));
  return out;
}

}  // namespace blowup_calc
