#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "folab/groebner.hpp"

namespace folab {

/// Graded free module F = ⊕ S(-degrees[i]); basis element i has degree degrees[i].
struct FreeModule {
  std::vector<int> degrees;
  std::size_t rank() const noexcept { return degrees.size(); }
  friend bool operator==(const FreeModule&, const FreeModule&) = default;
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // [row][col]

inline PolyMatrix zero_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
  return PolyMatrix(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
}

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars) {
  std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  PolyMatrix r = zero_matrix(a.size(), cols, nvars);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline bool is_zero_matrix(const PolyMatrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

/// Homogeneous map source -> target; column j is the image of source basis j.
struct ModuleMap {
  std::size_t nvars = 0;
  FreeModule source, target;
  PolyMatrix matrix;

  std::size_t rows() const { return target.rank(); }
  std::size_t cols() const { return source.rank(); }

  /// Every entry (i,j) is zero or homogeneous of degree source[j] - target[i].
  bool is_homogeneous() const {
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) {
        const auto& e = matrix[i][j];
        if (e.is_zero()) continue;
        auto d = e.homogeneous_degree();
        if (!d || static_cast<int>(*d) != source.degrees[j] - target.degrees[i]) return false;
      }
    return true;
  }
};

/// Element of a free module: terms (component, monomial, coefficient).
struct ModTerm {
  std::uint32_t comp;
  Monomial mono;
  Rational coeff;
};

/// Monomial orders on free modules: position-over-term, term-over-position
/// (degree first, using the basis degrees) and Schreyer-induced orders.
class ModuleOrder {
 public:
  enum class Kind { pot, top, schreyer };

  static ModuleOrder pot(std::vector<int> degrees) { return ModuleOrder(Kind::pot, std::move(degrees)); }
  static ModuleOrder top(std::vector<int> degrees) { return ModuleOrder(Kind::top, std::move(degrees)); }

  /// a*e_i > b*e_j iff a*lead[i] > b*lead[j] in the base order, ties broken by
  /// the chain of indices from the first level up, smaller index first.
  static ModuleOrder schreyer(std::vector<Monomial> lead, std::vector<std::vector<std::uint32_t>> chain,
                              std::vector<int> degrees) {
    ModuleOrder o(Kind::schreyer, std::move(degrees));
    o.lead_ = std::make_shared<std::vector<Monomial>>(std::move(lead));
    o.chain_ = std::make_shared<std::vector<std::vector<std::uint32_t>>>(std::move(chain));
    return o;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const Monomial& lead(std::size_t i) const { return (*lead_)[i]; }
  const std::vector<std::uint32_t>& chain(std::size_t i) const { return (*chain_)[i]; }

  int compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b) const {
    switch (kind_) {
      case Kind::pot: {
        if (ca != cb) return ca < cb ? 1 : -1;
        return base_.compare(a, b);
      }
      case Kind::top: {
        long da = static_cast<long>(a.degree()) + degrees_[ca], db = static_cast<long>(b.degree()) + degrees_[cb];
        if (da != db) return da > db ? 1 : -1;
        int c = base_.compare(a, b);
        if (c != 0) return c;
        if (ca != cb) return ca < cb ? 1 : -1;
        return 0;
      }
      case Kind::schreyer:
      default: {
        int c = base_.compare(a * (*lead_)[ca], b * (*lead_)[cb]);
        if (c != 0) return c;
        const auto& x = (*chain_)[ca];
        const auto& y = (*chain_)[cb];
        for (std::size_t k = 0; k < x.size() && k < y.size(); ++k)
          if (x[k] != y[k]) return x[k] < y[k] ? 1 : -1;
        return 0;
      }
    }
  }

  int compare(const ModTerm& a, const ModTerm& b) const { return compare(a.comp, a.mono, b.comp, b.mono); }

 private:
  ModuleOrder(Kind k, std::vector<int> degrees) : kind_(k), degrees_(std::move(degrees)) {}
  Kind kind_;
  std::vector<int> degrees_;
  TermOrder base_{};
  std::shared_ptr<std::vector<Monomial>> lead_;
  std::shared_ptr<std::vector<std::vector<std::uint32_t>>> chain_;
};

/// Sparse module element with terms sorted descending in its module order.
class ModVec {
 public:
  ModVec() = default;
  explicit ModVec(std::size_t nvars) : nvars_(nvars) {}

  static ModVec from_terms(std::size_t nvars, std::vector<ModTerm> terms, const ModuleOrder& order) {
    ModVec v(nvars);
    std::sort(terms.begin(), terms.end(), [&](const ModTerm& a, const ModTerm& b) { return order.compare(a, b) > 0; });
    for (auto& t : terms) {
      if (!v.terms_.empty() && v.terms_.back().comp == t.comp && v.terms_.back().mono == t.mono) {
        v.terms_.back().coeff += t.coeff;
        if (v.terms_.back().coeff == 0) v.terms_.pop_back();
      } else if (t.coeff != 0) {
        v.terms_.push_back(std::move(t));
      }
    }
    return v;
  }

  /// Column vector -> module element.
  static ModVec from_column(const std::vector<Polynomial>& col, const ModuleOrder& order, std::uint32_t offset = 0) {
    std::size_t nv = 0;
    std::vector<ModTerm> terms;
    for (std::size_t i = 0; i < col.size(); ++i) {
      nv = col[i].nvars();
      for (const auto& t : col[i].terms()) terms.push_back({static_cast<std::uint32_t>(i + offset), t.mono, t.coeff});
    }
    return from_terms(nv, std::move(terms), order);
  }

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<ModTerm>& terms() const noexcept { return terms_; }
  const ModTerm& leading() const { return terms_.front(); }

  /// this + c * m * o (o sorted in the same order).
  ModVec add_scaled(const ModVec& o, const Rational& c, const Monomial& m, const ModuleOrder& order) const {
    if (c == 0) return *this;
    ModVec r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      ModTerm tj{o.terms_[j].comp, o.terms_[j].mono * m, o.terms_[j].coeff * c};
      if (i == terms_.size()) {
        r.terms_.push_back(std::move(tj));
        ++j;
        continue;
      }
      int cmp = order.compare(terms_[i], tj);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back(std::move(tj));
        ++j;
      } else {
        Rational s = terms_[i].coeff + tj.coeff;
        if (s != 0) r.terms_.push_back({tj.comp, tj.mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  ModVec scaled(const Rational& c) const {
    ModVec r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Component polynomials, for a module of the given rank.
  std::vector<Polynomial> column(std::size_t rank) const {
    std::vector<std::vector<Term>> parts(rank);
    for (const auto& t : terms_) parts[t.comp].push_back({t.mono, t.coeff});
    std::vector<Polynomial> out;
    for (auto& p : parts) out.push_back(Polynomial::from_terms(nvars_, std::move(p)));
    return out;
  }

  void resort(const ModuleOrder& order) { *this = from_terms(nvars_, std::move(terms_), order); }

 private:
  std::size_t nvars_ = 0;
  std::vector<ModTerm> terms_;
};

/// A quotient term q = coeff * mono * g_index from a division.
struct QuotientTerm {
  std::size_t index;
  Monomial mono;
  Rational coeff;
};

/// Division with remainder in a free module; returns remainder and quotient terms.
inline ModVec module_reduce(ModVec f, const std::vector<ModVec>& basis, const ModuleOrder& order,
                            std::vector<QuotientTerm>* quotients = nullptr, bool full = true) {
  std::vector<ModTerm> rem;
  while (!f.is_zero()) {
    const ModTerm& lt = f.leading();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const ModTerm& g = basis[k].leading();
      if (g.comp != lt.comp || !g.mono.divides(lt.mono)) continue;
      Monomial m = lt.mono / g.mono;
      Rational c = lt.coeff / g.coeff;
      if (quotients) quotients->push_back({k, m, c});
      f = f.add_scaled(basis[k], -c, m, order);
      reduced = true;
      break;
    }
    if (reduced) continue;
    if (!full) break;
    rem.push_back(lt);
    std::vector<ModTerm> tail(f.terms().begin() + 1, f.terms().end());
    f = ModVec::from_terms(f.nvars(), std::move(tail), order);
  }
  if (!full) return f;
  std::vector<ModTerm> all = std::move(rem);
  return ModVec::from_terms(f.nvars(), std::move(all), order);
}

/// Groebner basis of a submodule (not reduced), Buchberger with the chain criterion.
inline std::vector<ModVec> module_groebner(const std::vector<ModVec>& gens, const ModuleOrder& order,
                                           const Budget& budget = {}) {
  std::vector<ModVec> basis;
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  auto add = [&](ModVec h) {
    if (h.is_zero()) return;
    Rational inv = 1 / h.leading().coeff;
    h = h.scaled(inv);
    std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i)
      if (basis[i].leading().comp == h.leading().comp)
        pairs.push_back({i, k, lcm(basis[i].leading().mono, h.leading().mono)});
    basis.push_back(std::move(h));
  };
  for (const auto& g : gens) add(module_reduce(g, basis, order));
  std::size_t processed = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      const auto& ca = basis[a.i].leading().comp;
      const auto& cb = basis[b.i].leading().comp;
      int c = order.compare(ca, a.lcm, cb, b.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(a.j, a.i) < std::make_pair(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    if (++processed > budget.max_pairs) throw BudgetExceeded(BudgetExceeded::Kind::pairs, budget.max_pairs);
    if (p.lcm.degree() > budget.max_degree) throw BudgetExceeded(BudgetExceeded::Kind::degree, budget.max_degree);
    // Chain criterion: skip if some k has lead dividing lcm with both pairs already treated.
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      const auto& lk = basis[k].leading();
      if (lk.comp != basis[p.i].leading().comp || !lk.mono.divides(p.lcm)) continue;
      auto pending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        for (const auto& q : pairs)
          if (q.i == a && q.j == b) return true;
        return false;
      };
      if (!pending(p.i, k) && !pending(p.j, k)) skip = true;
    }
    if (skip) continue;
    const auto& a = basis[p.i];
    const auto& b = basis[p.j];
    ModVec s = ModVec(a.nvars()).add_scaled(a, 1, p.lcm / a.leading().mono, order);
    s = s.add_scaled(b, -1, p.lcm / b.leading().mono, order);
    add(module_reduce(s, basis, order));
  }
  return basis;
}

/// Generators of the kernel of M: F1 -> F0, by the elimination route: a Groebner
/// basis of {(col_j, e_j)} in F0 ⊕ F1 under position-over-term with F0 first;
/// the elements with zero F0 part generate the syzygies.
inline ModuleMap syzygies(const ModuleMap& m, const Budget& budget = {}) {
  const std::size_t r0 = m.rows(), r1 = m.cols(), nv = m.nvars;
  std::vector<int> degrees = m.target.degrees;
  degrees.insert(degrees.end(), m.source.degrees.begin(), m.source.degrees.end());
  ModuleOrder order = ModuleOrder::pot(degrees);
  std::vector<ModVec> gens;
  for (std::size_t j = 0; j < r1; ++j) {
    std::vector<Polynomial> col(r0 + r1, Polynomial(nv));
    for (std::size_t i = 0; i < r0; ++i) col[i] = m.matrix[i][j];
    col[r0 + j] = Polynomial::constant(nv, 1);
    gens.push_back(ModVec::from_column(col, order));
  }
  auto gb = module_groebner(gens, order, budget);
  ModuleMap out;
  out.nvars = nv;
  out.target = m.source;
  std::vector<std::vector<Polynomial>> cols;
  for (const auto& g : gb) {
    if (g.leading().comp < r0) continue;
    auto col = g.column(r0 + r1);
    std::vector<Polynomial> syz(col.begin() + static_cast<long>(r0), col.end());
    // degree of the syzygy = degree of any nonzero term + its basis degree
    const auto& lt = g.leading();
    out.source.degrees.push_back(static_cast<int>(lt.mono.degree()) + degrees[lt.comp]);
    cols.push_back(std::move(syz));
  }
  out.matrix = zero_matrix(r1, cols.size(), nv);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < r1; ++i) out.matrix[i][j] = cols[j][i];
  return out;
}

}  // namespace folab
