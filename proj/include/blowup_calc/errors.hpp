#pragma once

#include <stdexcept>
#include <string>

namespace blowup_calc {

enum class ErrorKind {
  dimension,
  ring_mismatch,
  invalid_input,
  not_a_subdivisor,
  unsupported_complement,
  coverage,
  invalid_diagram,
  syntax,
  unresolved_name,
  invalid_lattice,
  unregistered,
  unsupported_base,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::dimension: return "dimension error";
    case ErrorKind::ring_mismatch: return "ring error";
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::not_a_subdivisor: return "not a subdivisor";
    case ErrorKind::unsupported_complement: return "unsupported complement";
    case ErrorKind::coverage: return "coverage error";
    case ErrorKind::invalid_diagram: return "invalid diagram";
    case ErrorKind::syntax: return "syntax error";
    case ErrorKind::unresolved_name: return "unresolved name";
    case ErrorKind::invalid_lattice: return "invalid lattice";
    case ErrorKind::unregistered: return "unregistered check";
    case ErrorKind::unsupported_base: return "unsupported base";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// position is a 0-based byte offset into the parsed text
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& what)
      : Error(ErrorKind::syntax, what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace blowup_calc
