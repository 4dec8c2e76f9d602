#pragma once

#include <numeric>
#include <vector>

#include "folab/groebner.hpp"

namespace folab {

namespace detail {

inline std::vector<std::size_t> shifted_indices(std::size_t n, std::size_t k) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), k);
  return map;
}

/// Drops the first k variables from a polynomial known not to involve them.
inline Polynomial drop_leading_vars(const Polynomial& p, std::size_t k, std::size_t n, TermOrder order) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, t.mono[i + k]);
    out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(n, std::move(out), order);
}

}  // namespace detail

/// Lifts p from n variables to n+k variables, occupying indices k..k+n-1.
inline Polynomial lift(const Polynomial& p, std::size_t k, TermOrder order) {
  auto map = detail::shifted_indices(p.nvars(), k);
  return p.embed(p.nvars() + k, map, order);
}

/// Eliminates the first k variables of an ideal given in n+k variables,
/// returning the elimination ideal in the remaining n variables.
inline Ideal eliminate_leading(const std::vector<Polynomial>& gens, std::size_t k, std::size_t n, TermOrder result_order,
                               const Budget& budget) {
  TermOrder elim = TermOrder::elimination(k);
  std::vector<Polynomial> lifted;
  for (const auto& g : gens) lifted.push_back(g.with_order(elim));
  auto gb = buchberger(lifted, n + k, elim, budget);
  std::vector<Polynomial> kept;
  for (const auto& g : gb) {
    bool free = true;
    for (const auto& t : g.terms()) {
      for (std::size_t i = 0; i < k && free; ++i)
        if (t.mono[i] != 0) free = false;
      if (!free) break;
    }
    if (free) kept.push_back(detail::drop_leading_vars(g, k, n, result_order));
  }
  return Ideal(n, std::move(kept), result_order, budget);
}

/// I ∩ J by eliminating t from t*I + (1-t)*J.
inline Ideal intersection(const Ideal& a, const Ideal& b) {
  if (a.nvars() != b.nvars()) throw RingMismatch(a.nvars(), b.nvars());
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return Ideal(n, {}, a.order(), a.budget());
  if (a.is_unit()) return Ideal(n, b.generators(), a.order(), a.budget());
  if (b.is_unit()) return a;
  TermOrder elim = TermOrder::elimination(1);
  Polynomial t = Polynomial::variable(n + 1, 0, elim);
  Polynomial one_minus_t = Polynomial::constant(n + 1, 1, elim) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.groebner_basis()) gens.push_back(t * lift(f, 1, elim));
  for (const auto& g : b.groebner_basis()) gens.push_back(one_minus_t * lift(g, 1, elim));
  return eliminate_leading(gens, 1, n, a.order(), a.budget());
}

/// Exact quotient h / g; throws if g does not divide h.
inline Polynomial exact_divide(const Polynomial& h, const Polynomial& g) {
  if (g.is_zero()) throw Error("division by zero polynomial");
  Polynomial rem = h.with_order(g.order());
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    if (!g.leading_monomial().divides(lt.mono)) throw Error("exact_divide: not divisible");
    Monomial m = lt.mono / g.leading_monomial();
    Rational c = lt.coeff / g.leading_coeff();
    quot.push_back({m, c});
    rem = rem.add_scaled(g, -c, m);
  }
  return Polynomial::from_terms(g.nvars(), std::move(quot), g.order());
}

/// (I : g) = (I ∩ (g)) / g.
inline Ideal quotient(const Ideal& ideal, const Polynomial& g) {
  const std::size_t n = ideal.nvars();
  if (g.is_zero()) return Ideal::unit(n, ideal.order(), ideal.budget());
  if (ideal.contains(g)) return Ideal::unit(n, ideal.order(), ideal.budget());
  Ideal cap = intersection(ideal, Ideal(n, {g}, ideal.order(), ideal.budget()));
  std::vector<Polynomial> gens;
  for (const auto& h : cap.groebner_basis()) gens.push_back(exact_divide(h, g.with_order(ideal.order())));
  return Ideal(n, std::move(gens), ideal.order(), ideal.budget());
}

/// (I : J) = ∩_j (I : g_j). Satisfies (I:J)*J ⊆ I and I ⊆ (I:J).
inline Ideal quotient(const Ideal& ideal, const Ideal& by) {
  const std::size_t n = ideal.nvars();
  if (by.is_zero()) return Ideal::unit(n, ideal.order(), ideal.budget());
  if (by.is_unit()) return ideal;
  std::optional<Ideal> acc;
  for (const auto& g : by.generators()) {
    Ideal q = quotient(ideal, g);
    acc = acc ? intersection(*acc, q) : q;
    if (*acc == ideal) break;  // cannot shrink further: I ⊆ (I:g) for every g
  }
  return acc->canonical();
}

/// (I : J^∞): iterates the quotient until two consecutive ideals agree.
inline Ideal saturation(const Ideal& ideal, const Ideal& by) {
  Ideal cur = ideal.canonical();
  for (std::uint32_t k = 0;; ++k) {
    if (k > ideal.budget().max_degree) throw BudgetExceeded(BudgetExceeded::Kind::degree, ideal.budget().max_degree);
    Ideal next = quotient(cur, by);
    if (next == cur) return cur;
    cur = next.canonical();
  }
}

inline Ideal saturation(const Ideal& ideal, const Polynomial& f) {
  return saturation(ideal, Ideal(ideal.nvars(), {f}, ideal.order(), ideal.budget()));
}

/// Saturation with respect to the irrelevant ideal (x_0, ..., x_n).
inline Ideal irrelevant_saturation(const Ideal& ideal) {
  return saturation(ideal, Ideal::irrelevant(ideal.nvars(), ideal.order(), ideal.budget()));
}

inline bool is_saturated(const Ideal& ideal) { return irrelevant_saturation(ideal) == ideal; }

/// f ∈ √I  iff  1 ∈ I + (1 - t f) in Q[t, x].
inline bool radical_membership(const Polynomial& f, const Ideal& ideal) {
  const std::size_t n = ideal.nvars();
  if (f.is_zero()) return true;
  if (ideal.contains(f)) return true;
  TermOrder order = TermOrder::degrevlex();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.groebner_basis()) gens.push_back(lift(g, 1, order));
  Polynomial t = Polynomial::variable(n + 1, 0, order);
  gens.push_back(Polynomial::constant(n + 1, 1, order) - t * lift(f, 1, order));
  auto gb = buchberger(gens, n + 1, order, ideal.budget());
  return gb.size() == 1 && gb[0].is_constant();
}

/// √I ⊆ √J, tested on generators.
inline bool radical_contained(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators())
    if (!radical_membership(g, b)) return false;
  return true;
}

inline bool radical_equal(const Ideal& a, const Ideal& b) { return radical_contained(a, b) && radical_contained(b, a); }

/// Least common multiple of two polynomials, as the generator of (f) ∩ (g).
inline Polynomial polynomial_lcm(const Polynomial& f, const Polynomial& g, const Budget& budget = {}) {
  Ideal cap = intersection(Ideal(f.nvars(), {f}, {}, budget), Ideal(g.nvars(), {g}, {}, budget));
  const auto& gb = cap.groebner_basis();
  if (gb.size() != 1) throw Error("polynomial_lcm: intersection is not principal");
  return gb[0];
}

/// Greatest common divisor, normalized monic. gcd(f, 0) = f.
inline Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g, const Budget& budget = {}) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return Polynomial::constant(f.nvars(), 1, f.order());
  Polynomial l = polynomial_lcm(f, g, budget);
  return exact_divide(f * g, l).monic();
}

}  // namespace folab
