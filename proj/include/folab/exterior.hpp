#pragma once

#include <bit>
#include <map>
#include <string>
#include <vector>

#include "folab/groebner.hpp"

namespace folab {

/// Polynomial p-form on the affine space with coordinates x_0..x_{N-1}.
/// Basis elements dx_I are indexed by bit masks; the stored order is always
/// the increasing one, so antisymmetry is built in.
class PForm {
 public:
  using Mask = std::uint32_t;

  PForm() = default;
  PForm(std::size_t nvars, unsigned p) : nvars_(nvars), p_(p) {}

  /// f * dx_{i_1} ^ ... ^ dx_{i_p} for arbitrary (possibly unsorted) indices.
  static PForm basis(std::size_t nvars, const std::vector<std::size_t>& indices, const Polynomial& f) {
    PForm r(nvars, static_cast<unsigned>(indices.size()));
    Mask m = 0;
    int sign = 1;
    for (std::size_t a = 0; a < indices.size(); ++a) {
      if (indices[a] >= nvars) throw Error("PForm::basis: index out of range");
      if (m >> indices[a] & 1u) return r;
      // number of already placed indices greater than this one
      sign *= (std::popcount(m >> indices[a]) % 2) ? -1 : 1;
      m |= 1u << indices[a];
    }
    r.add_term(m, sign > 0 ? f : -f);
    return r;
  }

  static PForm one_form(const std::vector<Polynomial>& coefficients) {
    PForm r(coefficients.size(), 1);
    for (std::size_t i = 0; i < coefficients.size(); ++i) r.add_term(Mask{1} << i, coefficients[i]);
    return r;
  }

  static PForm zero_form(const Polynomial& f) {
    PForm r(f.nvars(), 0);
    r.add_term(0, f);
    return r;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return p_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Mask, Polynomial>& terms() const noexcept { return terms_; }

  Polynomial coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Polynomial(nvars_) : it->second;
  }
  Polynomial coefficient(const std::vector<std::size_t>& sorted_indices) const {
    Mask m = 0;
    for (auto i : sorted_indices) m |= Mask{1} << i;
    return coefficient(m);
  }

  /// Common total degree of the coefficients, if homogeneous.
  std::optional<unsigned> coefficient_degree() const {
    std::optional<unsigned> d;
    for (const auto& [m, f] : terms_) {
      auto fd = f.homogeneous_degree();
      if (!fd || (d && *d != *fd)) return std::nullopt;
      d = fd;
    }
    return d;
  }

  void add_term(Mask m, const Polynomial& f) {
    if (f.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PForm& operator+=(const PForm& o) {
    if (o.is_zero()) return *this;
    check(o);
    for (const auto& [m, f] : o.terms_) add_term(m, f);
    return *this;
  }
  PForm& operator-=(const PForm& o) {
    if (o.is_zero()) return *this;
    check(o);
    for (const auto& [m, f] : o.terms_) add_term(m, -f);
    return *this;
  }
  friend PForm operator+(PForm a, const PForm& b) { return a += b; }
  friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
  PForm operator-() const {
    PForm r(nvars_, p_);
    for (const auto& [m, f] : terms_) r.terms_.emplace(m, -f);
    return r;
  }
  friend PForm operator*(const Polynomial& g, const PForm& a) {
    PForm r(a.nvars_, a.p_);
    if (g.is_zero()) return r;
    for (const auto& [m, f] : a.terms_) r.add_term(m, g * f);
    return r;
  }
  friend PForm operator*(const Rational& c, const PForm& a) { return Polynomial::constant(a.nvars_, c) * a; }
  friend bool operator==(const PForm& a, const PForm& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_ && (a.p_ == b.p_ || a.terms_.empty());
  }

  std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::vector<std::string> nm(names.begin(), names.end());
    if (nm.empty()) nm = default_names(nvars_);
    std::string s;
    for (const auto& [m, f] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + f.to_string(nm) + ")";
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m >> i & 1u) s += (s.back() == ')' ? "*" : "^") + std::string("d") + nm[i];
    }
    return s;
  }

 private:
  void check(const PForm& o) {
    if (o.nvars_ != nvars_) throw RingMismatch(nvars_, o.nvars_);
    if (terms_.empty()) {
      p_ = o.p_;  // the zero form has every degree
      return;
    }
    if (o.p_ != p_) throw Error("PForm: adding forms of different degree");
  }

  std::size_t nvars_ = 0;
  unsigned p_ = 0;
  std::map<Mask, Polynomial> terms_;
};

namespace detail {

/// Sign of dx_I ^ dx_J relative to dx_{I u J}; 0 if they overlap.
inline int wedge_sign(PForm::Mask a, PForm::Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (PForm::Mask bb = b; bb; bb &= bb - 1) {
    unsigned j = static_cast<unsigned>(std::countr_zero(bb));
    swaps += std::popcount(a >> (j + 1));  // elements of I above j must pass it
  }
  return swaps % 2 ? -1 : 1;
}

}  // namespace detail

inline PForm wedge(const PForm& a, const PForm& b) {
  if (a.nvars() != b.nvars()) throw RingMismatch(a.nvars(), b.nvars());
  PForm r(a.nvars(), a.degree() + b.degree());
  for (const auto& [ma, fa] : a.terms())
    for (const auto& [mb, fb] : b.terms()) {
      int s = detail::wedge_sign(ma, mb);
      if (s == 0) continue;
      Polynomial prod = fa * fb;
      r.add_term(ma | mb, s > 0 ? prod : -prod);
    }
  return r;
}

inline PForm exterior_derivative(const PForm& a) {
  PForm r(a.nvars(), a.degree() + 1);
  for (const auto& [m, f] : a.terms())
    for (std::size_t j = 0; j < a.nvars(); ++j) {
      if (m >> j & 1u) continue;
      Polynomial df = f.derivative(j);
      if (df.is_zero()) continue;
      int s = std::popcount(m & ((PForm::Mask{1} << j) - 1)) % 2 ? -1 : 1;
      r.add_term(m | (PForm::Mask{1} << j), s > 0 ? df : -df);
    }
  return r;
}

struct VectorField {
  std::vector<Polynomial> coefficients;

  std::size_t nvars() const { return coefficients.size(); }

  static VectorField radial(std::size_t nvars) {
    VectorField v;
    for (std::size_t i = 0; i < nvars; ++i) v.coefficients.push_back(Polynomial::variable(nvars, i));
    return v;
  }
  static VectorField partial(std::size_t nvars, std::size_t i) {
    VectorField v{std::vector<Polynomial>(nvars, Polynomial(nvars))};
    v.coefficients[i] = Polynomial::constant(nvars, 1);
    return v;
  }
  bool is_zero() const {
    for (const auto& c : coefficients)
      if (!c.is_zero()) return false;
    return true;
  }
};

/// Interior product i_X a.
inline PForm contract(const VectorField& x, const PForm& a) {
  if (x.nvars() != a.nvars()) throw RingMismatch(a.nvars(), x.nvars());
  if (a.degree() == 0) return PForm(a.nvars(), 0);
  PForm r(a.nvars(), a.degree() - 1);
  for (const auto& [m, f] : a.terms())
    for (std::size_t j = 0; j < a.nvars(); ++j) {
      if (!(m >> j & 1u) || x.coefficients[j].is_zero()) continue;
      int s = std::popcount(m & ((PForm::Mask{1} << j) - 1)) % 2 ? -1 : 1;
      Polynomial c = x.coefficients[j] * f;
      r.add_term(m & ~(PForm::Mask{1} << j), s > 0 ? c : -c);
    }
  return r;
}

/// Lie derivative along the radial field, by Cartan's formula.
inline PForm lie_radial(const PForm& a) {
  VectorField r = VectorField::radial(a.nvars());
  PForm out = contract(r, exterior_derivative(a));
  if (a.degree() > 0) out += exterior_derivative(contract(r, a));
  return out;
}

inline Ideal coefficient_ideal(const PForm& a) {
  std::vector<Polynomial> gens;
  for (const auto& [m, f] : a.terms()) gens.push_back(f);
  return Ideal(a.nvars(), std::move(gens));
}

}  // namespace folab
