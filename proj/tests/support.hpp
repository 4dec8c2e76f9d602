#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "folab/folab.hpp"

namespace folab::testing {

inline Polynomial P(const std::string& s, std::size_t nvars = 4) { return parse_polynomial(s, nvars); }

inline Ideal I(std::initializer_list<const char*> gens, std::size_t nvars = 4) {
  std::vector<Polynomial> g;
  for (const char* s : gens) g.push_back(P(s, nvars));
  return Ideal(nvars, std::move(g));
}

/// Random homogeneous polynomial of degree d with small integer coefficients.
inline Polynomial random_homogeneous(std::mt19937& rng, std::size_t nvars, unsigned d, int range = 3,
                                     double density = 0.5) {
  std::uniform_int_distribution<int> coef(-range, range);
  std::bernoulli_distribution keep(density);
  std::vector<Term> terms;
  for (const auto& m : graded_basis(nvars, d))
    if (keep(rng)) terms.push_back({m, Rational(coef(rng))});
  return Polynomial::from_terms(nvars, std::move(terms));
}

inline Polynomial random_nonzero_homogeneous(std::mt19937& rng, std::size_t nvars, unsigned d, int range = 3,
                                             double density = 0.5) {
  for (;;) {
    auto p = random_homogeneous(rng, nvars, d, range, density);
    if (!p.is_zero()) return p;
  }
}

/// Independent oracle: f in the ideal generated by gens, by linear algebra on graded pieces.
inline bool oracle_member(const Polynomial& f, const std::vector<Polynomial>& gens) {
  return graded_membership(f, gens);
}

/// Oracle for dim (S/I)_d directly from generators.
inline std::size_t oracle_quotient_dim(const std::vector<Polynomial>& gens, std::size_t nvars, unsigned d) {
  MonomialIndex index(nvars, d);
  return index.size() - graded_piece(gens, nvars, d, index).rank();
}

/// Every degree-d element of J, checked on a basis of J_d, lies in I (oracle).
inline bool oracle_contains_up_to(const Ideal& big, const Ideal& small, unsigned dmax) {
  for (const auto& g : small.generators())
    if (g.total_degree() <= dmax && !oracle_member(g, big.generators())) return false;
  return true;
}


/// Graded Betti number b_{i,j} of S/I as dim Tor_i(S/I, Q)_j, computed from the
/// Koszul complex on the variables tensored with S/I. No resolution involved.
inline std::size_t oracle_betti(const std::vector<Polynomial>& gens, std::size_t nv, int i, int j) {
  const int N = static_cast<int>(nv);
  if (i < 0 || i > N || j < i) return 0;
  std::vector<std::vector<unsigned>> subsets[17];
  for (unsigned mask = 0; mask < (1u << nv); ++mask) {
    std::vector<unsigned> s;
    for (unsigned b = 0; b < nv; ++b)
      if (mask >> b & 1) s.push_back(b);
    subsets[s.size()].push_back(s);
  }
  auto subset_index = [&](int k, const std::vector<unsigned>& s) {
    auto& v = subsets[k];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  // rank of the Koszul differential K_k ⊗ (S/I)_{j-k} -> K_{k-1} ⊗ (S/I)_{j-k+1}
  auto rank_q = [&](int k) -> std::size_t {
    if (k <= 0 || k > N || j - k < 0) return 0;
    MonomialIndex tgt(nv, static_cast<unsigned>(j - k + 1));
    const std::size_t block = tgt.size();
    SparseEchelon e;
    {
      SparseEchelon ip = graded_piece(gens, nv, static_cast<unsigned>(j - k + 1), tgt);
      for (std::size_t s = 0; s < subsets[k - 1].size(); ++s)
        for (auto [pivot, row] : ip.rows()) {
          for (auto& entry : row) entry.first += static_cast<std::uint32_t>(s * block);
          e.insert(row);
        }
    }
    std::size_t before = e.rank();
    for (const auto& s : subsets[k])
      for (const auto& u : graded_basis(nv, static_cast<unsigned>(j - k))) {
        SparseVector v;
        for (std::size_t p = 0; p < s.size(); ++p) {
          auto rest = s;
          rest.erase(rest.begin() + static_cast<long>(p));
          std::size_t slot = subset_index(k - 1, rest);
          Monomial m = u * Monomial::variable(nv, s[p]);
          v.emplace_back(static_cast<std::uint32_t>(slot * block + tgt(m)), Rational(p % 2 ? -1 : 1));
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        e.insert(v);
      }
    return e.rank() - before;
  };
  std::size_t dim = subsets[i].size() * oracle_quotient_dim(gens, nv, static_cast<unsigned>(j - i));
  return dim - rank_q(i) - rank_q(i + 1);
}

}  // namespace folab::testing
