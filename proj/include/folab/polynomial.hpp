#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folab/monomial.hpp"
#include "folab/rational.hpp"

namespace folab {

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial over Q in nvars variables. Terms are kept sorted
/// descending in the polynomial's term order, with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars, TermOrder order = {}) : nvars_(nvars), order_(order) {}

  static Polynomial constant(std::size_t nvars, const Rational& c, TermOrder order = {}) {
    Polynomial p(nvars, order);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i, TermOrder order = {}) {
    Polynomial p(nvars, order);
    p.terms_.push_back({Monomial::variable(nvars, i), Rational(1)});
    return p;
  }

  static Polynomial monomial(const Monomial& m, const Rational& c = 1, TermOrder order = {}) {
    Polynomial p(m.nvars(), order);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from arbitrary terms: sorts, combines like terms, drops zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms, TermOrder order = {}) {
    Polynomial p(nvars, order);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermOrder& order() const noexcept { return order_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  /// Degree shared by every term, or nullopt for inhomogeneous polynomials.
  /// The zero polynomial has no degree.
  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = terms_.front().mono.degree();
    for (const auto& t : terms_)
      if (t.mono.degree() != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.degree());
    return d;
  }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  /// Same polynomial re-sorted under another order.
  Polynomial with_order(TermOrder order) const {
    Polynomial p = *this;
    p.order_ = order;
    p.sort_terms();
    return p;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = add_scaled(o, Rational(1), Monomial(nvars_)); }
  Polynomial& operator-=(const Polynomial& o) { return *this = add_scaled(o, Rational(-1), Monomial(nvars_)); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.add_scaled(b, 1, Monomial(a.nvars_)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.add_scaled(b, -1, Monomial(a.nvars_)); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_, a.order_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.with_order(a.order_).mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(a.nvars_, std::move(out), a.order_);
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) { return p.mul_term(Monomial(p.nvars_), c); }
  friend Polynomial operator*(const Polynomial& p, const Rational& c) { return p.mul_term(Monomial(p.nvars_), c); }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// c * m * this. Order is preserved because monomial orders respect multiplication.
  Polynomial mul_term(const Monomial& m, const Rational& c) const {
    Polynomial p(nvars_, order_);
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    return p;
  }

  /// this + c * m * o, by a sorted merge.
  Polynomial add_scaled(const Polynomial& o, const Rational& c, const Monomial& m) const {
    check_ring(o);
    if (o.order_ != order_) return add_scaled(o.with_order(order_), c, m);
    Polynomial r(nvars_, order_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial mj = o.terms_[j].mono * m;
      if (i == terms_.size()) {
        r.terms_.push_back({mj, o.terms_[j++].coeff * c});
        continue;
      }
      int cmp = order_.compare(terms_[i].mono, mj);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({mj, o.terms_[j++].coeff * c});
      } else {
        Rational s = terms_[i].coeff + o.terms_[j].coeff * c;
        if (s != 0) r.terms_.push_back({mj, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// Partial derivative with respect to x_i.
  Polynomial derivative(std::size_t i) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.mono[i];
      if (e == 0) continue;
      Monomial m = t.mono;
      m.set(i, e - 1);
      out.push_back({m, t.coeff * e});
    }
    return from_terms(nvars_, std::move(out), order_);
  }

  /// Scales so that the leading coefficient is 1.
  Polynomial monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / leading_coeff();
    return mul_term(Monomial(nvars_), inv);
  }

  /// Scales to coprime integer coefficients with a positive leading coefficient.
  Polynomial primitive() const {
    if (is_zero()) return *this;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& t : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    if (leading_coeff() < 0) scale = -scale;
    if (scale == 1) return *this;
    return mul_term(Monomial(nvars_), scale);
  }

  /// Substitutes x_i -> images[i]; images live in the target ring.
  Polynomial substitute(std::span<const Polynomial> images) const {
    if (images.size() != nvars_) throw RingMismatch(images.size(), nvars_);
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    TermOrder order = images.empty() ? order_ : images[0].order();
    Polynomial result(target, order);
    for (const auto& t : terms_) {
      Polynomial prod = constant(target, t.coeff, order);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < t.mono[i]; ++k) prod = prod * images[i];
      result += prod;
    }
    return result;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw RingMismatch(point.size(), nvars_);
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  /// Re-embeds into a ring with `target` variables, sending x_i to x_{index_map[i]}.
  Polynomial embed(std::size_t target, std::span<const std::size_t> index_map, TermOrder order) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target);
      for (std::size_t i = 0; i < nvars_; ++i) m.set(index_map[i], t.mono[i]);
      out.push_back({m, t.coeff});
    }
    return from_terms(target, std::move(out), order);
  }

  /// Divides by the monomial content gcd of all terms; returns (content, cofactor).
  std::pair<Monomial, Polynomial> split_monomial_content() const {
    if (is_zero()) return {Monomial(nvars_), *this};
    Monomial g = terms_.front().mono;
    for (const auto& t : terms_) g = gcd(g, t.mono);
    Polynomial q(nvars_, order_);
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) q.terms_.push_back({t.mono / g, t.coeff});
    return {g, q};
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    if (a.order_ != b.order_) return a == b.with_order(a.order_);
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  /// Canonical text form, e.g. "x0^2*x1 - 3/2*x2".
  std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      if (first) {
        if (c < 0) {
          s += "-";
          c = -c;
        }
      } else {
        s += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      first = false;
      if (t.mono.is_one()) {
        s += c.get_str();
      } else {
        if (c != 1) s += c.get_str() + "*";
        s += t.mono.to_string(names);
      }
    }
    return s;
  }

 private:
  void check_ring(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw RingMismatch(nvars_, o.nvars_);
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return order_.greater(a.mono, b.mono); });
  }

  void normalize() {
    sort_terms();
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coeff += t.coeff;
      } else {
        if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
  }

  std::size_t nvars_ = 0;
  TermOrder order_{};
  std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial r = Polynomial::constant(p.nvars(), 1, p.order());
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

/// Default variable names x0..x{n-1}.
inline std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace folab
