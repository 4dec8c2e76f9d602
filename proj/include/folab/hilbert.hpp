#pragma once

#include <algorithm>
#include <vector>

#include "folab/graded.hpp"
#include "folab/groebner.hpp"

namespace folab {

/// Integer polynomial in T, coefficients ascending.
using TPoly = std::vector<Integer>;

namespace detail {

inline void trim(TPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline TPoly tpoly_add(TPoly a, const TPoly& b, long shift = 0) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  trim(a);
  return a;
}

/// Minimal generators of a monomial ideal.
inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

/// Numerator N(T) of the Hilbert series N(T)/(1-T)^n of S/M for a monomial ideal M.
inline TPoly hilbert_numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  // Pairwise coprime generators: product of (1 - T^deg).
  std::size_t nv = gens[0].nvars();
  std::vector<unsigned> uses(nv, 0);
  for (const auto& g : gens)
    for (std::size_t i = 0; i < nv; ++i)
      if (g[i]) ++uses[i];
  auto pivot = std::max_element(uses.begin(), uses.end());
  if (*pivot <= 1) {
    TPoly r{1};
    for (const auto& g : gens) {
      TPoly f(g.degree() + 1, 0);
      f[0] = 1;
      f[g.degree()] -= 1;
      trim(f);
      r = tpoly_mul(r, f);
    }
    return r;
  }
  // N(M) = N(M + x) + T * N(M : x)
  std::size_t x = static_cast<std::size_t>(pivot - uses.begin());
  Monomial xv = Monomial::variable(nv, x);
  std::vector<Monomial> plus{xv}, colon;
  for (const auto& g : gens) {
    if (!g[x]) plus.push_back(g);
    Monomial c = g;
    if (c[x]) c.set(x, c[x] - 1);
    colon.push_back(c);
  }
  return tpoly_add(hilbert_numerator(std::move(plus)), hilbert_numerator(std::move(colon)), 1);
}

inline Rational binomial_poly_eval(long top, long k) {
  if (k < 0 || top < k) return 0;
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
  return Rational(c);
}

}  // namespace detail

/// Hilbert series data of S/I.
struct HilbertData {
  std::size_t nvars = 0;
  TPoly numerator;          ///< N(T) with HS = N(T)/(1-T)^nvars
  TPoly reduced_numerator;  ///< Q(T) with HS = Q(T)/(1-T)^krull_dim
  long krull_dim = 0;
  Integer degree = 0;
  std::vector<Rational> hilbert_polynomial;  ///< coefficients in d, ascending

  /// Dimension of Proj(S/I); -1 for the empty scheme.
  long proj_dim() const { return krull_dim - 1; }

  /// dim_Q (S/I)_d.
  Integer hilbert_function(long d) const {
    Integer s = 0;
    for (std::size_t i = 0; i < numerator.size(); ++i) {
      long k = d - static_cast<long>(i);
      if (k < 0) break;
      s += numerator[i] * monomial_count(nvars, k);
    }
    return s;
  }

  Rational hilbert_polynomial_at(long d) const {
    Rational s = 0, p = 1;
    for (const auto& c : hilbert_polynomial) {
      s += c * p;
      p *= d;
    }
    return s;
  }
};

/// Hilbert data of S/I from the leading-term ideal of the reduced Groebner basis.
inline HilbertData hilbert_data(const Ideal& ideal) {
  HilbertData h;
  h.nvars = ideal.nvars();
  std::vector<Monomial> lts;
  for (const auto& g : ideal.groebner_basis()) lts.push_back(g.leading_monomial());
  h.numerator = ideal.is_zero() ? TPoly{1} : detail::hilbert_numerator(lts);
  if (h.numerator.empty()) return h;  // unit ideal: S/I = 0
  // Divide by (1-T) while it vanishes at T = 1.
  TPoly q = h.numerator;
  long k = 0;
  auto at_one = [](const TPoly& p) {
    Integer s = 0;
    for (const auto& c : p) s += c;
    return s;
  };
  while (!q.empty() && at_one(q) == 0) {
    // synthetic division by (1 - T): q = (1-T) r, r_i = sum_{j<=i} q_j
    TPoly r(q.size() - 1, 0);
    Integer acc = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      acc += q[i];
      r[i] = acc;
    }
    q = std::move(r);
    ++k;
  }
  h.reduced_numerator = q;
  h.krull_dim = static_cast<long>(h.nvars) - k;
  h.degree = at_one(q);
  // Hilbert polynomial: sum_i q_i * C(d - i + D - 1, D - 1), expanded in powers of d.
  const long D = h.krull_dim;
  std::vector<Rational> poly(std::max<long>(D, 1), 0);
  if (D == 0) return h;  // zero polynomial for a finite-length module
  Integer fact = 1;
  for (long j = 1; j < D; ++j) fact *= j;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    // prod_{j=1}^{D-1} (d - i + j)
    std::vector<Rational> term{1};
    for (long j = 1; j < D; ++j) {
      Rational c = Rational(j) - static_cast<long>(i);
      std::vector<Rational> next(term.size() + 1, 0);
      for (std::size_t a = 0; a < term.size(); ++a) {
        next[a] += term[a] * c;
        next[a + 1] += term[a];
      }
      term = std::move(next);
    }
    for (std::size_t a = 0; a < term.size() && a < poly.size(); ++a) poly[a] += Rational(q[i]) * term[a] / Rational(fact);
  }
  h.hilbert_polynomial = std::move(poly);
  return h;
}

/// dim_Q I_d from the Hilbert function.
inline std::size_t ideal_dimension(const Ideal& ideal, long d, const HilbertData& h) {
  Integer v = Integer(static_cast<unsigned long>(monomial_count(ideal.nvars(), d))) - h.hilbert_function(d);
  return v.get_ui();
}

inline std::size_t ideal_dimension(const Ideal& ideal, long d) { return ideal_dimension(ideal, d, hilbert_data(ideal)); }

}  // namespace folab
