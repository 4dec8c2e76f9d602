#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace folab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  RingMismatch(std::size_t a, std::size_t b)
      : Error("ring dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// A Groebner computation ran past its pair or degree cap. Never a wrong answer.
class BudgetExceeded : public Error {
 public:
  enum class Kind { pairs, degree };
  BudgetExceeded(Kind kind, std::size_t limit)
      : Error(std::string("budget exceeded: ") + (kind == Kind::pairs ? "S-pair cap " : "degree cap ") +
              std::to_string(limit)),
        kind_(kind),
        limit_(limit) {}
  Kind kind() const noexcept { return kind_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  Kind kind_;
  std::size_t limit_;
};

/// Raised when a computation leaves the class of inputs it can decide.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// Rejection of an input object, carrying a stable machine-readable code.
class ValidationError : public Error {
 public:
  ValidationError(std::string code, const std::string& detail)
      : Error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}
  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

/// Per-call caps on Groebner work.
struct Budget {
  std::size_t max_pairs = 200000;
  std::uint32_t max_degree = 64;
};

}  // namespace folab
