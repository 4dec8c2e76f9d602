#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "folab/graded.hpp"
#include "folab/hilbert.hpp"
#include "folab/ideal_ops.hpp"
#include "folab/modules.hpp"

namespace folab {

/// Graded Betti numbers b_{i,j}: rank of the degree-j part of F_i.
struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> entries;

  std::size_t at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
  std::size_t total(int i) const {
    std::size_t s = 0;
    for (const auto& [k, v] : entries)
      if (k.first == i) s += v;
    return s;
  }
  int projective_dimension() const {
    int pd = 0;
    for (const auto& [k, v] : entries)
      if (v) pd = std::max(pd, k.first);
    return pd;
  }
  std::vector<std::size_t> totals() const {
    std::vector<std::size_t> t(static_cast<std::size_t>(projective_dimension()) + 1, 0);
    for (const auto& [k, v] : entries) t[static_cast<std::size_t>(k.first)] += v;
    return t;
  }
  /// Histogram of degrees in F_i, ascending.
  std::vector<std::pair<int, std::size_t>> row(int i) const {
    std::vector<std::pair<int, std::size_t>> r;
    for (const auto& [k, v] : entries)
      if (k.first == i && v) r.emplace_back(k.second, v);
    return r;
  }
  /// Compact text "1 | 3:2 | 2:3", one block per homological degree with degree:count.
  std::string to_string() const {
    std::string s;
    for (int i = 0; i <= projective_dimension(); ++i) {
      if (i) s += " | ";
      bool first = true;
      for (auto [d, c] : row(i)) {
        s += (first ? "" : ",") + std::to_string(d) + ":" + std::to_string(c);
        first = false;
      }
    }
    return s;
  }
  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// Graded free resolution F_0 <- F_1 <- ... of S/I; maps[k-1] : F_k -> F_{k-1}.
struct Resolution {
  std::size_t nvars = 0;
  std::vector<FreeModule> modules;
  std::vector<ModuleMap> maps;
  bool minimal = false;

  int length() const { return static_cast<int>(modules.size()) - 1; }

  BettiTable betti() const {
    BettiTable b;
    for (std::size_t i = 0; i < modules.size(); ++i)
      for (int d : modules[i].degrees) ++b.entries[{static_cast<int>(i), d}];
    return b;
  }

  bool compositions_vanish() const {
    for (std::size_t k = 1; k < maps.size(); ++k)
      if (!is_zero_matrix(multiply(maps[k - 1].matrix, maps[k].matrix, nvars))) return false;
    return true;
  }
};

/// Non-minimal resolution of S/I by Schreyer's algorithm: the syzygies of a
/// Groebner basis come from its S-pair reductions and form a Groebner basis for
/// the induced order. Elements are ordered so that the frame stops after at
/// most nvars steps.
inline Resolution schreyer_resolution(const Ideal& ideal) {
  const std::size_t nv = ideal.nvars();
  if (!ideal.is_homogeneous()) throw Error("schreyer_resolution: inhomogeneous ideal");
  Resolution res;
  res.nvars = nv;
  res.modules.push_back({{0}});
  if (ideal.is_zero()) return res;

  std::vector<Polynomial> gb = ideal.groebner_basis();
  TermOrder lex = TermOrder::lex();
  std::stable_sort(gb.begin(), gb.end(), [&](const Polynomial& a, const Polynomial& b) {
    return lex.greater(a.leading_monomial(), b.leading_monomial());
  });

  ModuleOrder prev_order = ModuleOrder::pot({0});
  std::vector<ModVec> elems;
  FreeModule f1;
  ModuleMap phi1;
  phi1.nvars = nv;
  phi1.target = res.modules[0];
  phi1.matrix = zero_matrix(1, gb.size(), nv);
  std::vector<Monomial> lead;
  std::vector<std::vector<std::uint32_t>> chain;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    elems.push_back(ModVec::from_column({gb[i]}, prev_order));
    f1.degrees.push_back(static_cast<int>(gb[i].total_degree()));
    phi1.matrix[0][i] = gb[i];
    lead.push_back(gb[i].leading_monomial());
    chain.push_back({static_cast<std::uint32_t>(i)});
  }
  phi1.source = f1;
  res.modules.push_back(f1);
  res.maps.push_back(phi1);

  for (std::size_t level = 1;; ++level) {
    if (level > nv + 1) throw Error("schreyer_resolution: frame did not terminate");
    const FreeModule& fk = res.modules.back();
    ModuleOrder order = ModuleOrder::schreyer(lead, chain, fk.degrees);
    // Minimal pair monomials m_ij per element i.
    std::vector<ModVec> syz;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const ModTerm& li = elems[i].leading();
      std::vector<std::pair<Monomial, std::size_t>> cand;
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        const ModTerm& lj = elems[j].leading();
        if (lj.comp != li.comp) continue;
        cand.emplace_back(lcm(li.mono, lj.mono) / li.mono, j);
      }
      for (std::size_t a = 0; a < cand.size(); ++a) {
        bool keep = true;
        for (std::size_t b = 0; b < cand.size() && keep; ++b) {
          if (a == b) continue;
          if (cand[b].first.divides(cand[a].first) && (!(cand[b].first == cand[a].first) || b < a)) keep = false;
        }
        if (!keep) continue;
        std::size_t j = cand[a].second;
        const ModTerm& lj = elems[j].leading();
        Monomial mij = cand[a].first;
        Monomial mji = (mij * li.mono) / lj.mono;
        Rational ci = li.coeff, cj = lj.coeff;
        ModVec s = ModVec(nv).add_scaled(elems[i], cj, mij, prev_order);
        s = s.add_scaled(elems[j], -ci, mji, prev_order);
        std::vector<QuotientTerm> quot;
        ModVec rem = module_reduce(s, elems, prev_order, &quot);
        if (!rem.is_zero()) throw Error("schreyer_resolution: S-pair did not reduce to zero");
        std::vector<ModTerm> terms{{static_cast<std::uint32_t>(i), mij, cj}, {static_cast<std::uint32_t>(j), mji, -ci}};
        for (const auto& q : quot) terms.push_back({static_cast<std::uint32_t>(q.index), q.mono, -q.coeff});
        ModVec sigma = ModVec::from_terms(nv, std::move(terms), order);
        if (sigma.leading().comp != i || !(sigma.leading().mono == mij))
          throw Error("schreyer_resolution: unexpected leading term");
        syz.push_back(sigma.scaled(1 / sigma.leading().coeff));
      }
    }
    if (syz.empty()) break;
    std::stable_sort(syz.begin(), syz.end(), [&](const ModVec& a, const ModVec& b) {
      if (a.leading().comp != b.leading().comp) return a.leading().comp < b.leading().comp;
      return lex.greater(a.leading().mono, b.leading().mono);
    });
    FreeModule next;
    std::vector<Monomial> next_lead;
    std::vector<std::vector<std::uint32_t>> next_chain;
    ModuleMap phi;
    phi.nvars = nv;
    phi.target = fk;
    phi.matrix = zero_matrix(fk.rank(), syz.size(), nv);
    for (std::size_t t = 0; t < syz.size(); ++t) {
      const ModTerm& lt = syz[t].leading();
      next.degrees.push_back(static_cast<int>(lt.mono.degree()) + fk.degrees[lt.comp]);
      next_lead.push_back(lt.mono * lead[lt.comp]);
      auto c = chain[lt.comp];
      c.push_back(static_cast<std::uint32_t>(t));
      next_chain.push_back(std::move(c));
      auto col = syz[t].column(fk.rank());
      for (std::size_t r = 0; r < fk.rank(); ++r) phi.matrix[r][t] = col[r];
    }
    phi.source = next;
    res.modules.push_back(next);
    res.maps.push_back(phi);
    elems = std::move(syz);
    prev_order = order;
    lead = std::move(next_lead);
    chain = std::move(next_chain);
  }
  return res;
}

/// Removes trivial summands S(-a) -> S(-a) by Gaussian cancellation of unit entries.
inline Resolution minimize(Resolution res) {
  const std::size_t nv = res.nvars;
  for (std::size_t k = 1; k < res.modules.size(); ++k) {
    for (;;) {
      ModuleMap& phi = res.maps[k - 1];
      std::size_t ra = phi.rows(), cb = phi.cols();
      bool found = false;
      std::size_t a = 0, b = 0;
      for (std::size_t i = 0; i < ra && !found; ++i)
        for (std::size_t j = 0; j < cb && !found; ++j)
          if (!phi.matrix[i][j].is_zero() && phi.matrix[i][j].is_constant()) {
            a = i;
            b = j;
            found = true;
          }
      if (!found) break;
      Rational cinv = 1 / phi.matrix[a][b].leading_coeff();
      PolyMatrix next = zero_matrix(ra - 1, cb - 1, nv);
      for (std::size_t i = 0, ni = 0; i < ra; ++i) {
        if (i == a) continue;
        for (std::size_t j = 0, nj = 0; j < cb; ++j) {
          if (j == b) continue;
          Polynomial v = phi.matrix[i][j];
          if (!phi.matrix[i][b].is_zero() && !phi.matrix[a][j].is_zero())
            v -= phi.matrix[i][b] * phi.matrix[a][j] * cinv;
          next[ni][nj++] = std::move(v);
        }
        ++ni;
      }
      phi.matrix = std::move(next);
      res.modules[k].degrees.erase(res.modules[k].degrees.begin() + static_cast<long>(b));
      res.modules[k - 1].degrees.erase(res.modules[k - 1].degrees.begin() + static_cast<long>(a));
      phi.source = res.modules[k];
      phi.target = res.modules[k - 1];
      if (k < res.maps.size()) {
        ModuleMap& psi = res.maps[k];
        psi.matrix.erase(psi.matrix.begin() + static_cast<long>(b));
        psi.target = res.modules[k];
      }
      if (k >= 2) {
        ModuleMap& chi = res.maps[k - 2];
        for (auto& row : chi.matrix) row.erase(row.begin() + static_cast<long>(a));
        chi.source = res.modules[k - 1];
      }
    }
  }
  while (res.modules.size() > 1 && res.modules.back().rank() == 0) {
    res.modules.pop_back();
    res.maps.pop_back();
  }
  res.minimal = true;
  return res;
}

/// Minimal graded free resolution of S/I.
inline Resolution minimal_free_resolution(const Ideal& ideal) {
  Resolution r = minimize(schreyer_resolution(ideal));
  if (r.length() > static_cast<int>(ideal.nvars())) throw Error("resolution longer than the number of variables");
  return r;
}

namespace detail {

/// Rank in degree delta of the dual map Hom(F_i, S(-N)) -> Hom(F_{i+1}, S(-N))
/// induced by phi : F_{i+1} -> F_i.
inline std::size_t dual_rank(const ModuleMap& phi, int delta, std::size_t nv,
                             std::map<int, MonomialIndex>& cache) {
  const int N = static_cast<int>(nv);
  auto index = [&](int d) -> const MonomialIndex& {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, MonomialIndex(nv, static_cast<unsigned>(d))).first;
    return it->second;
  };
  // Column offsets of the target Hom(F_{i+1}).
  std::vector<std::uint32_t> offset(phi.cols() + 1, 0);
  for (std::size_t c = 0; c < phi.cols(); ++c) {
    int d = delta - N + phi.source.degrees[c];
    offset[c + 1] = offset[c] + static_cast<std::uint32_t>(d < 0 ? 0 : index(d).size());
  }
  SparseEchelon e;
  for (std::size_t r = 0; r < phi.rows(); ++r) {
    int d = delta - N + phi.target.degrees[r];
    if (d < 0) continue;
    for (const auto& u : index(d).basis()) {
      SparseVector v;
      for (std::size_t c = 0; c < phi.cols(); ++c) {
        const auto& entry = phi.matrix[r][c];
        if (entry.is_zero()) continue;
        int dc = delta - N + phi.source.degrees[c];
        const MonomialIndex& ix = index(dc);
        for (const auto& t : entry.terms()) v.emplace_back(offset[c] + ix(t.mono * u), t.coeff);
      }
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      e.insert(std::move(v));
    }
  }
  return e.rank();
}

}  // namespace detail

/// dim_Q Ext^i_S(S/I, S(-N))_delta, N = nvars, from the dualized resolution.
inline std::size_t ext_dimension(const Resolution& res, int i, int delta) {
  const std::size_t nv = res.nvars;
  const int N = static_cast<int>(nv);
  if (i < 0 || i > res.length()) return 0;
  std::map<int, MonomialIndex> cache;
  std::size_t dim = 0;
  for (int a : res.modules[static_cast<std::size_t>(i)].degrees) dim += monomial_count(nv, delta - N + a);
  std::size_t out_rank = i < res.length() ? detail::dual_rank(res.maps[static_cast<std::size_t>(i)], delta, nv, cache) : 0;
  std::size_t in_rank = i > 0 ? detail::dual_rank(res.maps[static_cast<std::size_t>(i - 1)], delta, nv, cache) : 0;
  return dim - out_rank - in_rank;
}

/// Dimensions of a graded module over a window of degrees.
struct CohomologyWindow {
  std::string sheaf;
  int index = 0;
  int lo = 0, hi = 0;
  std::map<int, std::size_t> values;
  bool all_zero() const {
    for (const auto& [d, v] : values)
      if (v) return false;
    return true;
  }
};

/// Ext^i(S/I, S(-N)) on degrees [lo, hi].
inline CohomologyWindow graded_ext(const Resolution& res, int i, int lo, int hi) {
  CohomologyWindow w{"Ext", i, lo, hi, {}};
  for (int d = lo; d <= hi; ++d) w.values[d] = ext_dimension(res, i, d);
  return w;
}

enum class SheafKind { ideal, structure };

/// h^i of the ideal sheaf of I (or of O_Z for Z = Proj(S/I)) at twists
/// [lo, hi], by local duality: H^j_m(S/I)_d is dual to Ext^{N-j}(S/I, S(-N))_{-d}.
inline CohomologyWindow sheaf_cohomology_window(const Ideal& ideal, const Resolution& res, int i, int lo, int hi,
                                                SheafKind kind = SheafKind::ideal) {
  const int N = static_cast<int>(ideal.nvars());
  const int n = N - 1;
  CohomologyWindow w{kind == SheafKind::ideal ? "ideal" : "structure", i, lo, hi, {}};
  HilbertData h = hilbert_data(ideal);
  for (int d = lo; d <= hi; ++d) {
    long v = 0;
    if (i < 0 || i > n) {
      v = 0;
    } else if (kind == SheafKind::ideal) {
      if (i == 0) {
        long idim = d < 0 ? 0 : static_cast<long>(ideal_dimension(ideal, d, h));
        v = idim + static_cast<long>(ext_dimension(res, N, -d));
      } else if (i < n) {
        v = static_cast<long>(ext_dimension(res, N - i, -d));
      } else {
        v = static_cast<long>(ext_dimension(res, 1, -d)) + static_cast<long>(monomial_count(ideal.nvars(), -d - N));
      }
    } else {
      if (i == 0) {
        long q = d < 0 ? 0 : h.hilbert_function(d).get_si();
        v = q - static_cast<long>(ext_dimension(res, N, -d)) + static_cast<long>(ext_dimension(res, N - 1, -d));
      } else {
        v = static_cast<long>(ext_dimension(res, N - 1 - i, -d));
      }
    }
    w.values[d] = static_cast<std::size_t>(v);
  }
  return w;
}

inline CohomologyWindow sheaf_cohomology_window(const Ideal& ideal, int i, int lo, int hi,
                                                SheafKind kind = SheafKind::ideal) {
  return sheaf_cohomology_window(ideal, minimal_free_resolution(ideal), i, lo, hi, kind);
}

struct ACMVerdict {
  bool acm = false;
  int pd = 0;
  int codim = 0;
  BettiTable betti;
  CohomologyWindow h1;  ///< ideal-sheaf h^1 on the requested window
};

/// aCM iff pd(S/sat I) = codim, with the h^1 window of the ideal sheaf as evidence.
inline ACMVerdict is_aCM(const Ideal& ideal, int lo, int hi) {
  Ideal sat = irrelevant_saturation(ideal);
  if (sat.is_unit()) throw ValidationError("empty-scheme", "Proj(S/I) is empty");
  Resolution res = minimal_free_resolution(sat);
  HilbertData h = hilbert_data(sat);
  ACMVerdict v;
  v.betti = res.betti();
  v.pd = res.length();
  v.codim = static_cast<int>(sat.nvars()) - static_cast<int>(h.krull_dim);
  v.acm = v.pd == v.codim;
  v.h1 = sheaf_cohomology_window(sat, res, 1, lo, hi);
  return v;
}

struct HilbertBurchResult {
  bool accepted = false;
  std::string reason;  ///< empty, "not-aCM" or "wrong-shape"
  std::vector<Polynomial> generators;
  PolyMatrix relations;               ///< 4 x 3 relation matrix
  std::vector<int> relation_degrees;  ///< degree of each relation column over the generators
  BettiTable betti;
};

/// Accepts a saturated codim-2 aCM ideal in P^3 with 4 generators of one
/// degree and 3 relations; rejects with the actual Betti shape otherwise.
inline HilbertBurchResult hilbert_burch_presentation(const Ideal& ideal) {
  HilbertBurchResult r;
  Ideal sat = irrelevant_saturation(ideal);
  Resolution res = minimal_free_resolution(sat);
  r.betti = res.betti();
  HilbertData h = hilbert_data(sat);
  int codim = static_cast<int>(sat.nvars()) - static_cast<int>(h.krull_dim);
  if (sat.nvars() != 4 || codim != 2 || res.length() != 2) {
    r.reason = "not-aCM";
    return r;
  }
  const auto& f1 = res.modules[1].degrees;
  const auto& f2 = res.modules[2].degrees;
  bool one_degree = std::all_of(f1.begin(), f1.end(), [&](int d) { return d == f1[0]; });
  if (f1.size() != 4 || f2.size() != 3 || !one_degree) {
    r.reason = "wrong-shape";
    return r;
  }
  r.accepted = true;
  r.generators = res.maps[0].matrix[0];
  r.relations = res.maps[1].matrix;
  for (int d : f2) r.relation_degrees.push_back(d - f1[0]);
  std::sort(r.relation_degrees.begin(), r.relation_degrees.end());
  return r;
}

namespace detail {

inline Polynomial determinant(const PolyMatrix& m, std::size_t nv) {
  const std::size_t k = m.size();
  if (k == 0) return Polynomial::constant(nv, 1);
  if (k == 1) return m[0][0];
  Polynomial det(nv);
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Polynomial t = m[0][c] * determinant(minor, nv);
    if (c % 2) det -= t;
    else det += t;
  }
  return det;
}

}  // namespace detail

/// Ideal of k x k minors of a matrix; Indeterminate when there are too many.
inline Ideal minors_ideal(const PolyMatrix& m, std::size_t k, std::size_t nv, std::size_t cap = 4000) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  if (k == 0) return Ideal::unit(nv);
  if (k > rows || k > cols) return Ideal(nv, {});
  std::vector<Polynomial> gens;
  std::size_t count = 0;
  std::vector<std::size_t> rsel, csel;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rsel.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t r = start; r < rows; ++r) {
      rsel.push_back(r);
      pick_rows(r + 1);
      rsel.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (csel.size() == k) {
      if (++count > cap) throw Indeterminate("minors_ideal: too many minors");
      PolyMatrix sub(k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub[a].push_back(m[rsel[a]][csel[b]]);
      auto d = detail::determinant(sub, nv);
      if (!d.is_zero()) gens.push_back(d);
      return;
    }
    for (std::size_t c = start; c < cols; ++c) {
      csel.push_back(c);
      pick_cols(c + 1);
      csel.pop_back();
    }
  };
  pick_rows(0);
  return Ideal(nv, std::move(gens));
}

/// For a saturated ideal in P^3 whose scheme has dimension 1: true when the
/// scheme is a curve without isolated or embedded points, i.e. Ext^3(S/I, S)
/// has finite length (its Fitting ideal is irrelevant-primary or the unit ideal).
inline bool is_pure_curve(const Ideal& sat, const Resolution& res) {
  if (sat.nvars() != 4) throw Error("is_pure_curve: only implemented in P^3");
  if (hilbert_data(sat).proj_dim() != 1) return false;
  if (res.length() <= 2) return true;
  const ModuleMap& phi3 = res.maps[2];
  Ideal fitt = minors_ideal(phi3.matrix, phi3.cols(), sat.nvars());
  if (fitt.is_zero()) return false;
  return irrelevant_saturation(fitt).is_unit();
}

}  // namespace folab
