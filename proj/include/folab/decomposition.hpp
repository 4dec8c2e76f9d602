#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "folab/hilbert.hpp"
#include "folab/ideal_ops.hpp"

namespace folab {

/// q = sum_k d_k * l_k^2 over Q (Lagrange reduction of a quadratic form).
struct QuadricDiagonal {
  std::vector<Rational> weights;
  std::vector<Polynomial> forms;
  std::size_t rank() const { return weights.size(); }
};

inline QuadricDiagonal diagonalize_quadric(const Polynomial& quadric) {
  if (quadric.homogeneous_degree() != 2u) throw Error("diagonalize_quadric: not a quadric");
  const std::size_t n = quadric.nvars();
  QuadricDiagonal out;
  Polynomial q = quadric.with_order({});
  auto coeff_of = [&](std::size_t i, std::size_t j) {
    Monomial m(n);
    m.set(i, m[i] + 1);
    m.set(j, m[j] + 1);
    return q.coefficient(m);
  };
  while (!q.is_zero()) {
    bool done = false;
    for (std::size_t i = 0; i < n && !done; ++i) {
      Rational a = coeff_of(i, i);
      if (a == 0) continue;
      Polynomial l = q.derivative(i) * Rational(1 / (2 * a));
      out.weights.push_back(a);
      out.forms.push_back(l);
      q = q - a * l * l;
      done = true;
    }
    if (done) continue;
    for (std::size_t i = 0; i < n && !done; ++i)
      for (std::size_t j = i + 1; j < n && !done; ++j) {
        Rational b = coeff_of(i, j);
        if (b == 0) continue;
        Polynomial l1 = q.derivative(i), l2 = q.derivative(j);
        Rational w = 1 / (4 * b);
        out.weights.push_back(w);
        out.forms.push_back(l1 + l2);
        out.weights.push_back(-w);
        out.forms.push_back(l1 - l2);
        q = q - (l1 * l2) * Rational(1 / b);
        done = true;
      }
  }
  return out;
}

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer a = r.get_num(), b = r.get_den();
  Integer sa, sb;
  mpz_sqrt(sa.get_mpz_t(), a.get_mpz_t());
  mpz_sqrt(sb.get_mpz_t(), b.get_mpz_t());
  if (sa * sa != a || sb * sb != b) return std::nullopt;
  return Rational(sa, sb);
}

/// A linear factor of a quadric over Q, if it has one.
inline std::optional<Polynomial> quadric_linear_factor(const Polynomial& q) {
  auto diag = diagonalize_quadric(q);
  if (diag.rank() == 1) return diag.forms[0].primitive();
  if (diag.rank() == 2) {
    auto s = rational_sqrt(-diag.weights[1] / diag.weights[0]);
    if (!s) return std::nullopt;
    return (diag.forms[0] - *s * diag.forms[1]).primitive();
  }
  return std::nullopt;
}

/// True when a quadric is irreducible over Q.
inline bool quadric_irreducible(const Polynomial& q) {
  auto diag = diagonalize_quadric(q);
  return diag.rank() >= 3 || (diag.rank() == 2 && !quadric_linear_factor(q));
}


namespace detail {

using ModPoly = std::vector<std::uint64_t>;  // ascending coefficients mod p

inline void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t mp_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline ModPoly mp_mod(ModPoly a, const ModPoly& m, std::uint64_t p) {
  mp_trim(a);
  std::uint64_t inv = mp_pow(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    std::uint64_t c = a.back() * inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    mp_trim(a);
  }
  return a;
}

inline ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mp_mod(std::move(r), m, p);
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    a = mp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

/// Rabin's test over F_p for h of degree n >= 1 (p small enough for 64-bit products).
inline bool irreducible_mod_p(const ModPoly& h, std::uint64_t p) {
  const std::size_t n = h.size() - 1;
  if (n == 1) return true;
  auto frob = [&](const ModPoly& a) {  // a^p mod h
    ModPoly r{1}, b = a;
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) r = mp_mulmod(r, b, h, p);
      b = mp_mulmod(b, b, h, p);
    }
    return r;
  };
  std::vector<ModPoly> powers{ModPoly{0, 1}};  // x^(p^k) mod h, k = 0..n
  for (std::size_t k = 1; k <= n; ++k) powers.push_back(frob(powers.back()));
  auto minus_x = [&](ModPoly a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    mp_trim(a);
    return a;
  };
  if (!minus_x(powers[n]).empty()) return false;
  for (std::size_t q = 2; q <= n; ++q) {
    if (n % q) continue;
    bool prime = true;
    for (std::size_t r = 2; r * r <= q; ++r)
      if (q % r == 0) prime = false;
    if (!prime) continue;
    if (mp_gcd(minus_x(powers[n / q]), h, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// One-sided irreducibility certificate for a homogeneous g restricted to the
/// linear space cut out by `linear`: restrict to random lines in that space and
/// look for a restriction that stays irreducible modulo a small prime.
/// false means "not certified", not "reducible".
inline bool certify_irreducible(const Polynomial& g, const std::vector<Polynomial>& linear = {},
                                unsigned attempts = 24) {
  const std::size_t n = g.nvars();
  auto deg = g.homogeneous_degree();
  if (!deg || *deg == 0) return false;
  if (*deg == 1) return true;
  QMatrix lin(linear.size(), n);
  for (std::size_t r = 0; r < linear.size(); ++r)
    for (const auto& t : linear[r].terms())
      for (std::size_t i = 0; i < n; ++i)
        if (t.mono[i]) lin(r, i) = t.coeff;
  auto kernel = linear.empty() ? std::vector<std::vector<Rational>>{} : rref_and_kernel(lin).kernel;
  if (linear.empty())
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> e(n, 0);
      e[i] = 1;
      kernel.push_back(e);
    }
  if (kernel.size() < 2) return false;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-7, 7);
  static constexpr std::uint64_t primes[] = {10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079};
  for (unsigned a = 0; a < attempts; ++a) {
    std::vector<Polynomial> images;
    std::vector<Rational> pa(n, 0), pb(n, 0);
    for (const auto& k : kernel) {
      int ca = coef(rng), cb = coef(rng);
      for (std::size_t i = 0; i < n; ++i) {
        pa[i] += ca * k[i];
        pb[i] += cb * k[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> t;
      if (pa[i] != 0) t.push_back({Monomial(1), pa[i]});
      if (pb[i] != 0) t.push_back({Monomial{1}, pb[i]});
      images.push_back(Polynomial::from_terms(1, std::move(t)));
    }
    Polynomial h = g.substitute(images);
    if (h.total_degree() != *deg) continue;
    std::vector<Rational> c(*deg + 1, 0);
    for (const auto& t : h.terms()) c[t.mono[0]] = t.coeff;
    Integer den = 1;
    for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    for (std::uint64_t p : primes) {
      detail::ModPoly m;
      for (const auto& v : c) {
        Rational zq = v * den;
        Integer z = zq.get_num();
        Integer r = z % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        m.push_back(r.get_ui());
      }
      if (m.back() == 0) continue;
      if (detail::irreducible_mod_p(m, p)) return true;
    }
  }
  return false;
}

namespace detail {

/// Proper factors of g that can be found cheaply: variables in its monomial
/// content, the cofactor, and a linear factor of a quadric cofactor.
inline std::vector<Polynomial> cheap_factors(const Polynomial& g) {
  std::vector<Polynomial> out;
  auto [content, cof] = g.split_monomial_content();
  const std::size_t n = g.nvars();
  if (!content.is_one()) {
    for (std::size_t i = 0; i < n; ++i)
      if (content[i]) out.push_back(Polynomial::variable(n, i, g.order()));
    if (!cof.is_constant()) out.push_back(cof.monic());
  }
  if (cof.homogeneous_degree() == 2u) {
    if (auto l = quadric_linear_factor(cof)) {
      Polynomial f = l->with_order(g.order()).monic();
      if (!(f == g.monic())) out.push_back(f);
    }
  }
  return out;
}

enum class LeafKind { prime, composite, unknown };

/// Certified primality for ideals generated by linear forms plus at most one
/// further polynomial that is irreducible on their common zero set.
inline LeafKind classify_leaf(const Ideal& j) {
  std::vector<Polynomial> nonlinear, linear;
  for (const auto& g : j.groebner_basis()) (g.total_degree() > 1 ? nonlinear : linear).push_back(g);
  if (nonlinear.empty()) return LeafKind::prime;
  if (nonlinear.size() != 1) return LeafKind::unknown;
  const Polynomial& g = nonlinear[0];
  if (linear.empty() && g.total_degree() == 2) return quadric_irreducible(g) ? LeafKind::prime : LeafKind::composite;
  return certify_irreducible(g, linear) ? LeafKind::prime : LeafKind::unknown;
}

inline void prime_components(const Ideal& ideal, std::vector<Ideal>& out, unsigned depth) {
  if (depth > 64) throw Indeterminate("minimal_primes: splitting depth exceeded");
  Ideal j = irrelevant_saturation(ideal);
  if (j.is_unit()) return;
  auto kind = classify_leaf(j);
  if (kind == LeafKind::prime) {
    out.push_back(j.canonical());
    return;
  }
  for (const auto& g : j.groebner_basis()) {
    for (const auto& p : cheap_factors(g)) {
      if (j.contains(p)) continue;
      prime_components(j.plus(p), out, depth + 1);
      prime_components(saturation(j, p), out, depth + 1);
      return;
    }
  }
  throw Indeterminate("minimal_primes: component outside the certified class");
}

}  // namespace detail

/// Minimal primes of the scheme Proj(S/I): recursive splitting along factors of
/// Groebner basis elements, with certified leaves. Throws Indeterminate when a
/// leaf cannot be certified prime.
inline std::vector<Ideal> minimal_primes(const Ideal& ideal) {
  std::vector<Ideal> found;
  detail::prime_components(ideal, found, 0);
  std::vector<Ideal> minimal;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool drop = false;
    for (std::size_t k = 0; k < found.size() && !drop; ++k) {
      if (k == i) continue;
      bool contains = found[i].contains(found[k]);
      if (contains && !(found[k].contains(found[i]))) drop = true;           // strictly bigger
      else if (contains && k < i) drop = true;                                // duplicate
    }
    if (!drop) minimal.push_back(found[i]);
  }
  auto key = [](const Ideal& p) {
    std::string s;
    for (const auto& g : p.groebner_basis()) s += g.to_string() + ";";
    return std::make_pair(p.groebner_basis().size(), s);
  };
  std::sort(minimal.begin(), minimal.end(), [&](const Ideal& a, const Ideal& b) { return key(a) < key(b); });
  return minimal;
}

/// Multiplicity of the component P of Proj(S/I): degree of the P-primary part of
/// sat(I), obtained by saturating away the other minimal primes, over deg P.
inline long component_multiplicity(const Ideal& ideal, const Ideal& prime, const std::vector<Ideal>& all_primes) {
  Ideal q = irrelevant_saturation(ideal);
  for (const auto& other : all_primes) {
    if (other == prime) continue;
    q = saturation(q, other);
  }
  auto hq = hilbert_data(q), hp = hilbert_data(prime);
  if (hq.krull_dim != hp.krull_dim) throw Indeterminate("component_multiplicity: dimension mismatch");
  if (hp.degree == 0 || hq.degree % hp.degree != 0) throw Indeterminate("component_multiplicity: non-integral ratio");
  Integer m = hq.degree / hp.degree;
  return m.get_si();
}

inline long component_multiplicity(const Ideal& ideal, const Ideal& prime) {
  return component_multiplicity(ideal, prime, minimal_primes(ideal));
}

}  // namespace folab
