#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "folab/errors.hpp"

namespace folab {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector x_0^{a_0} ... x_n^{a_n} with cached total degree.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw Error("too many variables (max " + std::to_string(kMaxVars) + ")");
  }

  Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  static Monomial from_exponents(std::span<const unsigned> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }

  /// x_i in a ring with nvars variables.
  static Monomial variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.set(i, 1);
    return m;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::uint32_t degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, unsigned e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<std::uint16_t>(e);
  }

  bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const noexcept {
    Monomial r = *this;
    for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(exps_[i] + o.exps_[i]);
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  /// Exact quotient; the caller guarantees o divides *this.
  Monomial operator/(const Monomial& o) const noexcept {
    Monomial r = *this;
    for (std::size_t i = 0; i < nvars_; ++i) r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - o.exps_[i]);
    r.degree_ = degree_ - o.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.set(i, std::max(a.exps_[i], b.exps_[i]));
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) noexcept {
    Monomial r(a.nvars_);
    for (std::size_t i = 0; i < a.nvars_; ++i) r.set(i, std::min(a.exps_[i], b.exps_[i]));
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) h = h * 1000003u ^ exps_[i];
    return h;
  }

  /// Lexicographic comparison of raw exponent arrays; only for use as a map key.
  friend bool raw_less(const Monomial& a, const Monomial& b) noexcept { return a.exps_ < b.exps_; }

  std::string to_string(std::span<const std::string> names) const {
    if (degree_ == 0) return "1";
    std::string s;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exps_[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += names.empty() ? "x" + std::to_string(i) : names[i];
      if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
    }
    return s;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

enum class OrderKind { degrevlex, lex, elimination };

/// Monomial order. `elimination` is a block order: the first `block` variables
/// are compared first (degrevlex within the block), then the rest by degrevlex.
struct TermOrder {
  OrderKind kind = OrderKind::degrevlex;
  std::size_t block = 0;

  static TermOrder degrevlex() { return {}; }
  static TermOrder lex() { return {OrderKind::lex, 0}; }
  static TermOrder elimination(std::size_t k) { return {OrderKind::elimination, k}; }

  /// Returns >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (kind) {
      case OrderKind::lex:
        for (std::size_t i = 0; i < a.nvars(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case OrderKind::elimination: {
        int c = degrevlex_range(a, b, 0, block);
        if (c != 0) return c;
        return degrevlex_range(a, b, block, a.nvars());
      }
      case OrderKind::degrevlex:
      default:
        return degrevlex_range(a, b, 0, a.nvars());
    }
  }

  bool greater(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) > 0; }

  friend bool operator==(const TermOrder& a, const TermOrder& b) noexcept {
    return a.kind == b.kind && (a.kind != OrderKind::elimination || a.block == b.block);
  }

  std::string name() const {
    switch (kind) {
      case OrderKind::lex: return "lex";
      case OrderKind::elimination: return "elimination(" + std::to_string(block) + ")";
      default: return "degrevlex";
    }
  }

 private:
  static int degrevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) noexcept {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
};

/// All monomials of total degree d in nvars variables, sorted descending in `order`.
inline std::vector<Monomial> graded_basis(std::size_t nvars, unsigned d, TermOrder order = {}) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<unsigned> exps(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      exps[i] = left;
      out.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      exps[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.greater(a, b); });
  return out;
}

}  // namespace folab
