#pragma once

#include <unordered_map>
#include <vector>

#include "folab/groebner.hpp"
#include "folab/linalg.hpp"

namespace folab {

/// Index of the monomial basis of S_d, in descending term order, so that the
/// smallest column of a coefficient vector is its leading monomial.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t nvars, unsigned d, TermOrder order = {}) : basis_(graded_basis(nvars, d, order)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<std::uint32_t>(i));
  }

  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::uint32_t operator()(const Monomial& m) const { return index_.at(m); }

  /// Coefficient vector of a homogeneous polynomial of this degree, scaled by m.
  SparseVector vectorize(const Polynomial& p, const Monomial& m) const {
    SparseVector v;
    v.reserve(p.size());
    for (const auto& t : p.terms()) v.emplace_back((*this)(t.mono * m), t.coeff);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  SparseVector vectorize(const Polynomial& p) const { return vectorize(p, Monomial(p.nvars())); }

 private:
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

/// Number of monomials of degree d in nvars variables (zero for d < 0).
inline std::size_t monomial_count(std::size_t nvars, long d) {
  if (d < 0) return 0;
  if (nvars == 0) return d == 0 ? 1 : 0;
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d) + nvars - 1, nvars - 1);
  return c.get_ui();
}

/// Span of I_d = { m*g : g a generator, deg m = d - deg g }, by linear algebra only.
inline SparseEchelon graded_piece(const std::vector<Polynomial>& gens, std::size_t nvars, unsigned d,
                                  const MonomialIndex& index) {
  SparseEchelon e;
  for (const auto& g : gens) {
    auto gd = g.homogeneous_degree();
    if (!gd || *gd > d) continue;
    for (const auto& m : graded_basis(nvars, d - *gd)) e.insert(index.vectorize(g, m));
  }
  return e;
}

/// Degreewise membership oracle, independent of Groebner bases.
inline bool graded_membership(const Polynomial& f, const std::vector<Polynomial>& gens) {
  if (f.is_zero()) return true;
  auto d = f.homogeneous_degree();
  if (!d) throw Error("graded_membership: inhomogeneous probe");
  MonomialIndex index(f.nvars(), *d);
  return graded_piece(gens, f.nvars(), *d, index).contains(index.vectorize(f.with_order({})));
}

struct MinimalGenerators {
  std::vector<Polynomial> generators;
  /// (degree, count), ascending by degree.
  std::vector<std::pair<unsigned, std::size_t>> histogram;
  std::size_t total() const {
    std::size_t s = 0;
    for (auto& [d, c] : histogram) s += c;
    return s;
  }
};

/// Graded Nakayama: a degree-d generator is minimal iff it is not in (m*I)_d,
/// which is spanned by multiples of the lower-degree generators.
inline MinimalGenerators minimal_generators(const Ideal& ideal) {
  if (!ideal.is_homogeneous()) throw Error("minimal_generators: inhomogeneous ideal");
  MinimalGenerators out;
  if (ideal.is_zero()) return out;
  std::vector<Polynomial> gens = ideal.groebner_basis();
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Polynomial& a, const Polynomial& b) { return a.total_degree() < b.total_degree(); });
  const std::size_t n = ideal.nvars();
  std::vector<Polynomial> chosen;
  std::size_t k = 0;
  while (k < gens.size()) {
    unsigned d = gens[k].total_degree();
    MonomialIndex index(n, d);
    SparseEchelon lower = graded_piece(chosen, n, d, index);
    std::size_t count = 0;
    for (; k < gens.size() && gens[k].total_degree() == d; ++k) {
      if (lower.insert(index.vectorize(gens[k].with_order({})))) {
        chosen.push_back(gens[k]);
        out.generators.push_back(gens[k]);
        ++count;
      }
    }
    if (count) out.histogram.emplace_back(d, count);
  }
  return out;
}

}  // namespace folab
