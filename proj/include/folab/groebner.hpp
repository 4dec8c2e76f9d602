#pragma once

#include <algorithm>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "folab/errors.hpp"
#include "folab/polynomial.hpp"

namespace folab {

namespace detail {

/// Divides integer content out of a term list (coefficients are integers).
inline void remove_content(std::vector<Term>& a, std::vector<Term>& b) {
  Integer g = 0;
  for (const auto* v : {&a, &b})
    for (const auto& t : *v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      if (g == 1) return;
    }
  if (g == 0 || g == 1) return;
  for (auto* v : {&a, &b})
    for (auto& t : *v) t.coeff /= g;
}

inline const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& basis) {
  for (const auto* g : basis)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

/// Subtracts b*m*g from work[head..], assuming the leading terms cancel.
inline std::vector<Term> cancel_leading(std::vector<Term>& work, std::size_t head, const Polynomial& g,
                                        const Rational& b, const Monomial& m, const TermOrder& order) {
  std::vector<Term> next;
  next.reserve(work.size() - head + g.size());
  std::size_t i = head + 1, j = 1;
  const auto& gt = g.terms();
  while (i < work.size() || j < gt.size()) {
    if (j == gt.size()) {
      next.push_back(std::move(work[i++]));
      continue;
    }
    Monomial mj = gt[j].mono * m;
    if (i == work.size()) {
      next.push_back({mj, -b * gt[j].coeff});
      ++j;
      continue;
    }
    int c = order.compare(work[i].mono, mj);
    if (c > 0) {
      next.push_back(std::move(work[i++]));
    } else if (c < 0) {
      next.push_back({mj, -b * gt[j].coeff});
      ++j;
    } else {
      Rational s = work[i].coeff - b * gt[j].coeff;
      if (s != 0) next.push_back({mj, std::move(s)});
      ++i;
      ++j;
    }
  }
  return next;
}

/// Exact remainder of f on division by `basis` (any leading coefficients).
inline Polynomial reduce_rational(const Polynomial& f, const std::vector<const Polynomial*>& basis) {
  std::vector<Term> work(f.terms().begin(), f.terms().end());
  std::vector<Term> rem;
  std::size_t head = 0;
  while (head < work.size()) {
    const Polynomial* g = find_reducer(work[head].mono, basis);
    if (!g) {
      rem.push_back(work[head++]);
      continue;
    }
    Rational b = work[head].coeff / g->leading_coeff();
    Monomial m = work[head].mono / g->leading_monomial();
    work = cancel_leading(work, head, *g, b, m, f.order());
    head = 0;
  }
  return Polynomial::from_terms(f.nvars(), std::move(rem), f.order());
}

/// Fraction-free full reduction with content removal after every step.
/// Inputs and basis elements must have integer coefficients; the result is primitive.
inline Polynomial reduce_fraction_free(const Polynomial& f, const std::vector<const Polynomial*>& basis) {
  std::vector<Term> work(f.terms().begin(), f.terms().end());
  std::vector<Term> rem;
  const TermOrder& order = f.order();
  std::size_t head = 0;
  while (head < work.size()) {
    const Term lt = work[head];
    const Polynomial* g = find_reducer(lt.mono, basis);
    if (!g) {
      rem.push_back(lt);
      ++head;
      continue;
    }
    Integer a = g->leading_coeff().get_num();
    Integer b = lt.coeff.get_num();
    Integer d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= d;
    b /= d;
    if (a != 1) {
      for (std::size_t k = head; k < work.size(); ++k) work[k].coeff *= a;
      for (auto& t : rem) t.coeff *= a;
    }
    Monomial m = lt.mono / g->leading_monomial();
    work = cancel_leading(work, head, *g, Rational(b), m, order);
    head = 0;
    remove_content(work, rem);
  }
  return Polynomial::from_terms(f.nvars(), std::move(rem), order).primitive();
}

inline Polynomial spoly_fraction_free(const Polynomial& f, const Polynomial& g) {
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  Integer a = g.leading_coeff().get_num(), b = f.leading_coeff().get_num(), d;
  mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  a /= d;
  b /= d;
  Polynomial left = f.mul_term(l / f.leading_monomial(), Rational(a));
  return left.add_scaled(g, Rational(-b), l / g.leading_monomial());
}

}  // namespace detail

/// Reduced Groebner basis by Buchberger's algorithm with the Gebauer-Moeller
/// installation of the product and chain criteria. Pair selection follows the
/// normal strategy: lowest lcm degree first, ties by the order on the lcm.
/// The result is auto-reduced, monic, and sorted descending by leading monomial.
inline std::vector<Polynomial> buchberger(const std::vector<Polynomial>& generators, std::size_t nvars,
                                          TermOrder order, const Budget& budget = {}) {
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Polynomial> polys;
  std::vector<std::size_t> active;
  std::vector<Pair> pairs;

  auto unit_basis = [&] { return std::vector<Polynomial>{Polynomial::constant(nvars, 1, order)}; };

  auto active_ptrs = [&] {
    std::vector<const Polynomial*> out;
    out.reserve(active.size());
    for (auto k : active) out.push_back(&polys[k]);
    return out;
  };

  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].leading_monomial();
    std::vector<Pair> c, d;
    for (auto g : active) c.push_back({g, h, lcm(polys[g].leading_monomial(), lh)});
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = polys[p.i].leading_monomial().coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (c[q].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> next;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(lcm(polys[p.i].leading_monomial(), lh) == p.lcm) &&
                  !(lcm(polys[p.j].leading_monomial(), lh) == p.lcm);
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& p : d)
      if (!polys[p.i].leading_monomial().coprime(lh)) next.push_back(std::move(p));
    pairs = std::move(next);
    std::vector<std::size_t> kept;
    for (auto g : active)
      if (!lh.divides(polys[g].leading_monomial())) kept.push_back(g);
    kept.push_back(h);
    active = std::move(kept);
  };

  // Returns false when the basis became the unit ideal.
  auto add = [&](Polynomial h) {
    if (h.is_zero()) return true;
    if (h.is_constant()) return false;
    polys.push_back(std::move(h));
    update(polys.size() - 1);
    return true;
  };

  for (const auto& f : generators) {
    if (f.nvars() != nvars) throw RingMismatch(nvars, f.nvars());
    if (f.is_zero()) continue;
    Polynomial p = f.with_order(order).primitive();
    auto h = detail::reduce_fraction_free(p, active_ptrs());
    if (!add(std::move(h))) return unit_basis();
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(a.j, a.i) < std::make_pair(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    if (++processed > budget.max_pairs) throw BudgetExceeded(BudgetExceeded::Kind::pairs, budget.max_pairs);
    if (p.lcm.degree() > budget.max_degree) throw BudgetExceeded(BudgetExceeded::Kind::degree, budget.max_degree);
    Polynomial s = detail::spoly_fraction_free(polys[p.i], polys[p.j]);
    auto h = detail::reduce_fraction_free(s, active_ptrs());
    if (!add(std::move(h))) return unit_basis();
  }

  // Minimal basis, then inter-reduction.
  std::vector<Polynomial> minimal;
  for (auto k : active) {
    bool redundant = false;
    for (auto l : active) {
      if (l == k) continue;
      const auto& ml = polys[l].leading_monomial();
      const auto& mk = polys[k].leading_monomial();
      if (ml.divides(mk) && (!(ml == mk) || l < k)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(polys[k]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const Polynomial*> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(&minimal[l]);
    Polynomial head = Polynomial::monomial(minimal[k].leading_monomial(), minimal[k].leading_coeff(), order);
    std::vector<Term> tail(minimal[k].terms().begin() + 1, minimal[k].terms().end());
    Polynomial t = Polynomial::from_terms(nvars, std::move(tail), order);
    Polynomial g = head + detail::reduce_rational(t, others);
    reduced.push_back(g.monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.greater(a.leading_monomial(), b.leading_monomial());
  });
  return reduced;
}

/// Remainder of f on division by a Groebner basis.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
  std::vector<const Polynomial*> ptrs;
  for (const auto& g : basis) ptrs.push_back(&g);
  if (basis.empty()) return f;
  return detail::reduce_rational(f.with_order(basis.front().order()), ptrs);
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
inline bool is_groebner_basis(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].leading_monomial().coprime(basis[j].leading_monomial())) continue;
      Polynomial s = detail::spoly_fraction_free(basis[i].primitive(), basis[j].primitive());
      if (!normal_form(s, basis).is_zero()) return false;
    }
  return true;
}

/// Homogeneous (or general) ideal of Q[x_0..x_{n-1}] with a lazily computed,
/// thread-safe cached reduced Groebner basis. Copies share the cache.
class Ideal {
 public:
  Ideal() : Ideal(0, {}) {}

  Ideal(std::size_t nvars, std::vector<Polynomial> generators, TermOrder order = {}, Budget budget = {})
      : nvars_(nvars), order_(order), budget_(budget), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      if (g.nvars() != nvars) throw RingMismatch(nvars, g.nvars());
      if (!g.is_zero()) generators_.push_back(g.with_order(order));
    }
  }

  static Ideal unit(std::size_t nvars, TermOrder order = {}, Budget budget = {}) {
    return Ideal(nvars, {Polynomial::constant(nvars, 1, order)}, order, budget);
  }

  /// The irrelevant ideal (x_0, ..., x_{n-1}).
  static Ideal irrelevant(std::size_t nvars, TermOrder order = {}, Budget budget = {}) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < nvars; ++i) gens.push_back(Polynomial::variable(nvars, i, order));
    return Ideal(nvars, std::move(gens), order, budget);
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermOrder& order() const noexcept { return order_; }
  const Budget& budget() const noexcept { return budget_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }

  /// Same generators, new budget; the cache is not shared.
  Ideal with_budget(Budget b) const { return Ideal(nvars_, generators_, order_, b); }

  const std::vector<Polynomial>& groebner_basis() const {
    std::call_once(cache_->once, [&] { cache_->gb = buchberger(generators_, nvars_, order_, budget_); });
    return cache_->gb;
  }

  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const {
    const auto& gb = groebner_basis();
    return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
  }

  Polynomial normal_form(const Polynomial& f) const {
    if (is_zero()) return f.with_order(order_);
    return folab::normal_form(f.with_order(order_), groebner_basis());
  }

  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  bool contains(const Ideal& other) const {
    for (const auto& g : other.generators_)
      if (!contains(g)) return false;
    return true;
  }

  /// Ideal equality via reduced Groebner bases.
  friend bool operator==(const Ideal& a, const Ideal& b) {
    if (a.nvars_ != b.nvars_) return false;
    if (a.order_ != b.order_) return a.contains(b) && b.contains(a);
    return a.groebner_basis() == b.groebner_basis();
  }

  friend Ideal operator+(const Ideal& a, const Ideal& b) {
    if (a.nvars_ != b.nvars_) throw RingMismatch(a.nvars_, b.nvars_);
    auto gens = a.generators_;
    gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
    return Ideal(a.nvars_, std::move(gens), a.order_, a.budget_);
  }

  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    if (a.nvars_ != b.nvars_) throw RingMismatch(a.nvars_, b.nvars_);
    std::vector<Polynomial> gens;
    for (const auto& f : a.generators_)
      for (const auto& g : b.generators_) gens.push_back(f * g);
    return Ideal(a.nvars_, std::move(gens), a.order_, a.budget_);
  }

  /// I + (f)
  Ideal plus(const Polynomial& f) const {
    auto gens = generators_;
    gens.push_back(f);
    return Ideal(nvars_, std::move(gens), order_, budget_);
  }

  /// Ideal generated by the reduced Groebner basis (canonical generators).
  Ideal canonical() const { return Ideal(nvars_, groebner_basis(), order_, budget_); }

  bool is_homogeneous() const {
    for (const auto& g : generators_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

  unsigned max_generator_degree() const {
    unsigned d = 0;
    for (const auto& g : generators_) d = std::max(d, g.total_degree());
    return d;
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Polynomial> gb;
  };

  std::size_t nvars_ = 0;
  TermOrder order_{};
  Budget budget_{};
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace folab
