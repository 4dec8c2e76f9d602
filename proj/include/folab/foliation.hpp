#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folab/decomposition.hpp"
#include "folab/exterior.hpp"
#include "folab/graded.hpp"
#include "folab/hilbert.hpp"
#include "folab/ideal_ops.hpp"
#include "folab/resolution.hpp"

namespace folab {

enum class Tri { no, yes, indeterminate, not_evaluated };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::indeterminate: return "indeterminate";
    default: return "not-evaluated";
  }
}

inline Tri tri(bool b) { return b ? Tri::yes : Tri::no; }

/// A twisted 1-form on P^n: omega = sum A_i dx_i with deg A_i = e - 1 and i_R omega = 0.
struct ProjectiveForm {
  std::size_t n = 0;
  unsigned e = 0;
  PForm omega;
  std::vector<std::string> names;

  std::size_t nvars() const { return n + 1; }
  int degree() const { return static_cast<int>(e) - 2; }
  std::vector<Polynomial> coefficients() const {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < nvars(); ++i) c.push_back(omega.coefficient(PForm::Mask{1} << i));
    return c;
  }
  PForm d_omega() const { return exterior_derivative(omega); }
};

/// Certifies the ProjectiveForm invariants or throws ValidationError.
inline ProjectiveForm validate(std::size_t n, unsigned e, const std::vector<Polynomial>& coefficients,
                               std::vector<std::string> names = {}) {
  if (n < 3) throw ValidationError("ambient-dimension", "n must be at least 3, got " + std::to_string(n));
  if (coefficients.size() != n + 1)
    throw ValidationError("coefficient-count", "expected " + std::to_string(n + 1) + " coefficients");
  if (names.empty()) names = default_names(n + 1);
  if (e < 1) throw ValidationError("degree-mismatch", "twist e must be positive");
  bool all_zero = true;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const auto& c = coefficients[i];
    if (c.nvars() != n + 1) throw RingMismatch(n + 1, c.nvars());
    if (c.is_zero()) continue;
    all_zero = false;
    auto d = c.homogeneous_degree();
    if (!d || *d != e - 1)
      throw ValidationError("degree-mismatch", "coefficient of d" + names[i] + " is not homogeneous of degree " +
                                                   std::to_string(e - 1));
  }
  if (all_zero) throw ValidationError("zero-form", "all coefficients vanish");
  Polynomial euler(n + 1);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    euler += Polynomial::variable(n + 1, i) * coefficients[i];
  if (!euler.is_zero()) throw ValidationError("euler-violation", "i_R w = " + euler.to_string(names));
  Polynomial g(n + 1);
  for (const auto& c : coefficients) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : polynomial_gcd(g, c);
    if (g.is_constant()) break;
  }
  if (!g.is_constant()) throw ValidationError("codim-1-singular-locus", "common divisor " + g.to_string(names));
  ProjectiveForm f{n, e, PForm::one_form(coefficients), std::move(names)};
  HilbertData h = hilbert_data(Ideal(n + 1, coefficients));
  if (h.proj_dim() > static_cast<long>(n) - 2)
    throw ValidationError("codim-1-singular-locus", "singular locus has codimension below 2");
  return f;
}

inline bool is_integrable(const ProjectiveForm& f) { return wedge(f.omega, f.d_omega()).is_zero(); }

inline Ideal ideal_J(const ProjectiveForm& f, const Budget& budget = {}) {
  return Ideal(f.nvars(), f.coefficients(), {}, budget);
}

namespace detail {

/// Coordinates of homogeneous p-forms of a fixed coefficient degree: slot of
/// the basis element times the size of S_d plus the monomial index.
class FormIndex {
 public:
  FormIndex(std::size_t nvars, unsigned p, unsigned d) : index_(nvars, d) {
    for (PForm::Mask m = 0; m < (PForm::Mask{1} << nvars); ++m)
      if (static_cast<unsigned>(std::popcount(m)) == p) slot_.emplace(m, static_cast<std::uint32_t>(slot_.size()));
  }
  std::size_t size() const { return slot_.size() * index_.size(); }
  SparseVector vectorize(const PForm& a, std::uint32_t offset = 0) const {
    SparseVector v;
    for (const auto& [m, f] : a.terms())
      for (const auto& t : f.terms())
        v.emplace_back(offset + slot_.at(m) * static_cast<std::uint32_t>(index_.size()) + index_(t.mono), t.coeff);
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return v;
  }

 private:
  MonomialIndex index_;
  std::map<PForm::Mask, std::uint32_t> slot_;
};

/// Echelon of { w ^ (x^a dx_j) : deg x^a = m - 1 } in 2-forms of coefficient degree m + e - 2.
inline SparseEchelon wedge_span(const ProjectiveForm& f, unsigned m, const FormIndex& target) {
  SparseEchelon w;
  if (m == 0) return w;
  const std::size_t nv = f.nvars();
  for (const auto& u : graded_basis(nv, m - 1))
    for (std::size_t j = 0; j < nv; ++j)
      w.insert(target.vectorize(wedge(f.omega, PForm::basis(nv, {j}, Polynomial::monomial(u)))));
  return w;
}

}  // namespace detail

/// I(w) up to degree dmax, degree by degree.
struct UnfoldingIdeal {
  unsigned dmax = 0;
  Ideal ideal;
  std::vector<Polynomial> generators;      ///< minimal generators, ascending degree
  std::map<unsigned, std::size_t> dims;    ///< dim I_m for m <= dmax
  std::map<unsigned, std::size_t> fresh;   ///< new minimal generators in degree m
  bool tail_stable = false;                ///< no new generators in the last two degrees
  bool is_zero() const { return generators.empty(); }
};

/// Solves h dw = w ^ eta for h in S_m, m = 0..dmax. The span of w ^ eta goes
/// into an echelon first; rows u*dw carry a tag column per monomial u, so rows
/// whose pivot falls in the tag block are exactly the solutions h.
inline UnfoldingIdeal ideal_I(const ProjectiveForm& f, unsigned dmax, const Budget& budget = {}) {
  const std::size_t nv = f.nvars();
  UnfoldingIdeal out;
  out.dmax = dmax;
  PForm dw = f.d_omega();
  std::vector<Polynomial> gens;
  for (unsigned m = 0; m <= dmax; ++m) {
    if (m + f.e > budget.max_degree + 2) throw BudgetExceeded(BudgetExceeded::Kind::degree, budget.max_degree);
    MonomialIndex hidx(nv, m);
    std::vector<Polynomial> sols;
    if (m + f.e >= 2) {
      detail::FormIndex target(nv, 2, m + f.e - 2);
      SparseEchelon e = detail::wedge_span(f, m, target);
      const auto tag0 = static_cast<std::uint32_t>(target.size());
      const auto& basis = hidx.basis();
      for (std::size_t k = 0; k < basis.size(); ++k) {
        SparseVector v = target.vectorize(Polynomial::monomial(basis[k]) * dw);
        v.emplace_back(tag0 + static_cast<std::uint32_t>(k), Rational(1));
        e.insert(std::move(v));
      }
      for (const auto& [pivot, row] : e.rows()) {
        if (pivot < tag0) continue;
        std::vector<Term> terms;
        for (const auto& [c, val] : row) terms.push_back({basis[c - tag0], val});
        sols.push_back(Polynomial::from_terms(nv, std::move(terms)));
      }
    }
    out.dims[m] = sols.size();
    SparseEchelon have = graded_piece(gens, nv, m, hidx);
    std::size_t count = 0;
    for (const auto& h : sols)
      if (have.insert(hidx.vectorize(h))) {
        gens.push_back(h.monic());
        ++count;
      }
    out.fresh[m] = count;
  }
  out.generators = gens;
  out.ideal = Ideal(nv, gens, {}, budget);
  out.tail_stable = dmax >= 2 && out.fresh[dmax] == 0 && out.fresh[dmax - 1] == 0;
  return out;
}

/// Degreewise dimensions of the unfolding equation h dw = w ^ (eta - dh).
struct UnfoldingDimension {
  std::size_t solutions = 0;   ///< all pairs (h, eta)
  std::size_t trivial = 0;     ///< pairs (0, g w)
  std::size_t quotient = 0;    ///< solutions - trivial
  std::size_t projection = 0;  ///< dimension of the h-projection
};

inline std::map<int, UnfoldingDimension> unfolding_dimensions(const ProjectiveForm& f, int lo, int hi) {
  const std::size_t nv = f.nvars();
  std::map<int, UnfoldingDimension> out;
  PForm dw = f.d_omega();
  for (int m = std::max(lo, 0); m <= hi; ++m) {
    UnfoldingDimension u;
    std::size_t hcount = monomial_count(nv, m), ecount = nv * monomial_count(nv, m - 1);
    if (m + static_cast<int>(f.e) < 2) {
      u.solutions = hcount + ecount;
    } else {
      detail::FormIndex target(nv, 2, static_cast<unsigned>(m) + f.e - 2);
      SparseEchelon all = detail::wedge_span(f, static_cast<unsigned>(m), target);
      std::size_t wrank = all.rank();
      for (const auto& b : graded_basis(nv, static_cast<unsigned>(m))) {
        Polynomial h = Polynomial::monomial(b);
        all.insert(target.vectorize(h * dw + wedge(f.omega, exterior_derivative(PForm::zero_form(h)))));
      }
      u.solutions = hcount + ecount - all.rank();
      u.projection = u.solutions - (ecount - wrank);
    }
    u.trivial = monomial_count(nv, m - static_cast<long>(f.e));
    u.quotient = u.solutions - u.trivial;
    out[m] = u;
  }
  return out;
}

inline Ideal ideal_K(const ProjectiveForm& f, const Budget& budget = {}) {
  Ideal dw = coefficient_ideal(f.d_omega()).with_budget(budget);
  return quotient(ideal_J(f, budget), dw);
}

inline Ideal ideal_L(const ProjectiveForm& f, const Ideal& K) { return saturation(ideal_J(f, K.budget()), K); }

/// Generators of {X : i_X dw = 0}, from the syzygies of the matrix of X -> i_X dw.
inline std::vector<VectorField> D_omega(const ProjectiveForm& f, const Budget& budget = {}) {
  const std::size_t nv = f.nvars();
  PForm dw = f.d_omega();
  ModuleMap m;
  m.nvars = nv;
  int k = static_cast<int>(f.e) - 2;
  m.source.degrees.assign(nv, k);
  m.target.degrees.assign(nv, 0);
  m.matrix = zero_matrix(nv, nv, nv);
  for (std::size_t j = 0; j < nv; ++j) {
    PForm c = contract(VectorField::partial(nv, j), dw);
    for (std::size_t r = 0; r < nv; ++r) m.matrix[r][j] = c.coefficient(PForm::Mask{1} << r);
  }
  ModuleMap syz = syzygies(m, budget);
  std::vector<VectorField> out;
  for (std::size_t c = 0; c < syz.cols(); ++c) {
    VectorField x;
    for (std::size_t r = 0; r < nv; ++r) x.coefficients.push_back(syz.matrix[r][c]);
    if (!contract(x, f.omega).is_zero()) throw Error("D_omega: generator not tangent to w");
    out.push_back(std::move(x));
  }
  return out;
}

struct ComponentInfo {
  Ideal prime;
  long multiplicity = 1;
  bool kupka = false;
  long degree = 0;
  long dim = 0;
};

struct SchemeSummary {
  Ideal ideal;  ///< saturated
  long dim = -1;
  Integer degree = 0;
  bool components_known = false;
  std::string indeterminate_reason;
  std::vector<ComponentInfo> components;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< meeting pairs
  Tri reduced = Tri::indeterminate;
  Tri connected = Tri::indeterminate;
};

/// Saturate, decompose, and attach multiplicities, Kupka flags (relative to the
/// coefficient ideal of dw) and the intersection graph.
inline SchemeSummary scheme_summary(const Ideal& ideal, const Ideal& dw_ideal, bool decompose = true) {
  SchemeSummary s;
  s.ideal = irrelevant_saturation(ideal);
  HilbertData h = hilbert_data(s.ideal);
  s.dim = h.proj_dim();
  s.degree = h.degree;
  if (s.ideal.is_unit()) {
    s.components_known = true;
    s.reduced = Tri::yes;
    s.connected = Tri::yes;
    return s;
  }
  if (!decompose) {
    s.indeterminate_reason = "decomposition disabled";
    return s;
  }
  std::vector<Ideal> primes;
  try {
    primes = minimal_primes(s.ideal);
  } catch (const Indeterminate& ex) {
    s.indeterminate_reason = ex.what();
    return s;
  }
  try {
    for (const auto& p : primes) {
      ComponentInfo c;
      c.prime = p;
      HilbertData hp = hilbert_data(p);
      c.degree = hp.degree.get_si();
      c.dim = hp.proj_dim();
      c.multiplicity = component_multiplicity(s.ideal, p, primes);
      c.kupka = !p.contains(dw_ideal);
      s.components.push_back(std::move(c));
    }
  } catch (const Indeterminate& ex) {
    s.components.clear();
    s.indeterminate_reason = ex.what();
    return s;
  }
  s.components_known = true;
  Ideal radical = primes.front();
  for (std::size_t i = 1; i < primes.size(); ++i) radical = intersection(radical, primes[i]);
  s.reduced = tri(radical == s.ideal);
  const std::size_t k = primes.size();
  std::vector<std::size_t> parent(k);
  for (std::size_t i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (!irrelevant_saturation(primes[i] + primes[j]).is_unit()) {
        s.edges.emplace_back(i, j);
        parent[find(i)] = find(j);
      }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < k; ++i) roots += find(i) == i;
  s.connected = tri(roots <= 1);
  return s;
}

struct ChernPair {
  long c1 = 0, c2 = 0;
  friend bool operator==(const ChernPair&, const ChernPair&) = default;
};

/// Sing(w) as a scheme: sat(J), with the purity test used for local freeness on P^3.
struct SingularCurve {
  Ideal sat;
  Resolution resolution;
  HilbertData hilbert;
  bool pure = false;
};

inline SingularCurve singular_curve(const ProjectiveForm& f, const Budget& budget = {}) {
  if (f.n != 3) throw ValidationError("not-p3", "Chern classes and splitting are computed on P^3 only");
  SingularCurve c;
  c.sat = irrelevant_saturation(ideal_J(f, budget));
  c.resolution = minimal_free_resolution(c.sat);
  c.hilbert = hilbert_data(c.sat);
  c.pure = is_pure_curve(c.sat, c.resolution);
  return c;
}

inline ChernPair chern_classes(const ProjectiveForm& f, const SingularCurve& sing) {
  if (!sing.pure) throw ValidationError("not-pure-codim-2", "Sing(w) is not a curve without isolated or embedded points");
  long d = f.degree();
  return {2 - d, d * d + 2 - sing.hilbert.degree.get_si()};
}

inline ChernPair chern_classes(const ProjectiveForm& f) { return chern_classes(f, singular_curve(f)); }

struct SplittingVerdict {
  std::string kind;  ///< splits, locally-free-but-undecided, not-locally-free
  std::optional<std::pair<long, long>> type;
  std::string type_string;
  std::optional<ACMVerdict> acm;
};

inline std::string split_type_string(long a, long b) {
  auto one = [](long t) { return t == 0 ? std::string("O") : "O(" + std::to_string(t) + ")"; };
  auto key = [](long t) { return std::make_pair(t < 0 ? -t : t, -t); };
  if (key(b) < key(a)) std::swap(a, b);
  return one(a) + "+" + one(b);
}

inline SplittingVerdict splitting_verdict(const ProjectiveForm& f, const SingularCurve& sing, int lo, int hi) {
  SplittingVerdict v;
  if (!sing.pure) {
    v.kind = "not-locally-free";
    return v;
  }
  ChernPair c = chern_classes(f, sing);
  v.acm = is_aCM(sing.sat, lo, hi);
  if (!v.acm->acm) {
    v.kind = "locally-free-but-undecided";
    return v;
  }
  // a + b = c1, ab = c2, a, b <= 1
  long disc = c.c1 * c.c1 - 4 * c.c2;
  long r = disc < 0 ? -1 : static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
  if (disc < 0 || r * r != disc || (c.c1 + r) % 2 != 0)
    throw ValidationError("inconsistent-chern", "no integer split type for (" + std::to_string(c.c1) + "," +
                                                    std::to_string(c.c2) + ")");
  long a = (c.c1 + r) / 2, b = (c.c1 - r) / 2;
  if (a > 1 || b > 1)
    throw ValidationError("inconsistent-chern", "split type (" + std::to_string(a) + "," + std::to_string(b) +
                                                    ") violates a,b <= 1");
  v.kind = "splits";
  v.type = std::make_pair(a, b);
  v.type_string = split_type_string(a, b);
  return v;
}

struct CIVerdict {
  Tri value = Tri::not_evaluated;
  long codim = 0;
  std::vector<std::pair<unsigned, std::size_t>> histogram;
};

inline CIVerdict complete_intersection_verdict(const Ideal& K) {
  CIVerdict v;
  Ideal sat = irrelevant_saturation(K);
  HilbertData h = hilbert_data(sat);
  v.codim = static_cast<long>(sat.nvars()) - h.krull_dim;
  v.histogram = minimal_generators(sat).histogram;
  if (v.codim != 2) return v;
  v.value = tri(minimal_generators(sat).total() == 2);
  return v;
}

/// w = r f dg - s g df for coprime f, g of degrees r, s.
inline ProjectiveForm rational_foliation(const Polynomial& f, const Polynomial& g, unsigned r, unsigned s) {
  const std::size_t nv = f.nvars();
  if (f.homogeneous_degree() != r || g.homogeneous_degree() != s)
    throw ValidationError("degree-mismatch", "f and g must be homogeneous of degrees r and s");
  if (!polynomial_gcd(f, g).is_constant()) throw ValidationError("common-factor", "f and g share a factor");
  PForm w = Rational(r) * wedge(PForm::zero_form(f), exterior_derivative(PForm::zero_form(g))) -
            Rational(s) * wedge(PForm::zero_form(g), exterior_derivative(PForm::zero_form(f)));
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < nv; ++i) c.push_back(w.coefficient(PForm::Mask{1} << i));
  ProjectiveForm out = validate(nv - 1, r + s, c);
  if (!is_integrable(out)) throw Error("rational_foliation: not integrable");
  return out;
}

/// Extends a form on P^{n-1} to P^n by inserting a variable at `position` with zero coefficient.
inline ProjectiveForm pullback_linear(const std::vector<Polynomial>& coefficients, unsigned e, std::size_t position) {
  const std::size_t nv = coefficients.size() + 1;
  if (position >= nv) throw Error("pullback_linear: bad position");
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i + 1 < nv; ++i) map.push_back(i < position ? i : i + 1);
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < nv; ++i) {
    if (i == position) c.emplace_back(nv);
    else c.push_back(coefficients[i < position ? i : i - 1].embed(nv, map, {}));
  }
  return validate(nv - 1, e, c);
}

struct CurveFoliation {
  ProjectiveForm form;
  bool integrable = false;
};

/// w = sum f_i(y) dy_i in the coordinates y_i = l_i(x), for four generators with sum l_i f_i = 0.
inline CurveFoliation foliation_from_acm_curve(const std::vector<Polynomial>& generators,
                                               const std::vector<Polynomial>& relation) {
  if (generators.size() != 4)
    throw ValidationError("wrong-generator-count", "expected 4 generators, got " + std::to_string(generators.size()));
  if (relation.size() != 4) throw ValidationError("wrong-generator-count", "relation needs 4 linear forms");
  const std::size_t nv = 4;
  std::optional<unsigned> deg;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    auto d = g.homogeneous_degree();
    if (!d || (deg && *deg != *d)) throw ValidationError("degree-mismatch", "generators must share one degree");
    deg = d;
  }
  if (!deg) throw ValidationError("zero-form", "all generators vanish");
  Polynomial sum(nv);
  for (std::size_t i = 0; i < 4; ++i) sum += relation[i] * generators[i];
  if (!sum.is_zero()) throw ValidationError("relation-not-satisfied", "sum l_i f_i = " + sum.to_string());
  QMatrix a(nv, nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!relation[i].is_zero() && relation[i].homogeneous_degree() != 1u)
      throw ValidationError("non-invertible-coordinates", "relation entries must be linear forms");
    for (std::size_t j = 0; j < nv; ++j) a(i, j) = relation[i].coefficient(Monomial::variable(nv, j));
  }
  // inverse of a by row reduction of [a | I]
  QMatrix aug(nv, 2 * nv);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nv; ++j) aug(i, j) = a(i, j);
    aug(i, nv + i) = 1;
  }
  auto rr = rref_and_kernel(aug);
  if (rr.rank < nv || rr.pivots[nv - 1] >= nv) throw ValidationError("non-invertible-coordinates", "l is singular");
  std::vector<Polynomial> x_of_y;  // x_j = sum_k inv(j,k) y_k
  for (std::size_t j = 0; j < nv; ++j) {
    Polynomial p(nv);
    for (std::size_t k = 0; k < nv; ++k) p += rr.rref(j, nv + k) * Polynomial::variable(nv, k);
    x_of_y.push_back(p);
  }
  std::vector<Polynomial> c;
  for (const auto& g : generators) c.push_back(g.substitute(x_of_y));
  CurveFoliation out{validate(3, *deg + 1, c), false};
  out.integrable = is_integrable(out.form);
  return out;
}

// ---------------------------------------------------------------------------

struct AnalysisConfig {
  unsigned dmax = 0;  ///< 0: 2e + 2
  std::optional<int> window_lo, window_hi;  ///< default [-2e, 2e]
  Budget budget{};
  bool budget_degree_set = false;  ///< false: degree cap 4e
  bool decompose = true;

  unsigned effective_dmax(unsigned e) const { return dmax ? dmax : 2 * e + 2; }
  int lo(unsigned e) const { return window_lo.value_or(-2 * static_cast<int>(e)); }
  int hi(unsigned e) const { return window_hi.value_or(2 * static_cast<int>(e)); }
  Budget effective_budget(unsigned e) const {
    Budget b = budget;
    if (!budget_degree_set) b.max_degree = 4 * e;
    return b;
  }
};

struct TheoremCheck {
  std::string name;
  std::string status;  ///< holds, violated, not-evaluated
  std::string detail;
};

struct Hypotheses {
  Tri J_radical = Tri::indeterminate;        ///< sat(J) reduced (used for verdicts)
  Tri J_radical_ideal = Tri::indeterminate;  ///< J itself radical
  Tri KL_disjoint = Tri::indeterminate;
  Tri in_U = Tri::indeterminate;
};

struct FoliationReport {
  ProjectiveForm form;
  unsigned dmax = 0;
  int window_lo = 0, window_hi = 0;
  Budget budget;
  bool integrable = false;
  Ideal J, K, L;
  UnfoldingIdeal I;
  bool I_stabilized = false;
  SchemeSummary sing, kupka, non_kupka;
  Hypotheses hyp;
  std::optional<ACMVerdict> K_acm;
  std::optional<SplittingVerdict> split;
  std::optional<ChernPair> chern;
  std::string chern_error;
  bool sing_pure = false;
  Tri K_connected = Tri::indeterminate;
  CIVerdict K_ci;
  Tri compact_kupka = Tri::indeterminate;
  std::optional<CohomologyWindow> I_h1;
  std::map<int, UnfoldingDimension> unfolding;
  std::vector<VectorField> d_omega_generators;
  std::vector<TheoremCheck> theorems;
  std::vector<std::string> alarms;

  /// Verdicts that could not be decided; empty when the report is complete.
  std::vector<std::string> indeterminate() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& what, const SchemeSummary& s) {
      if (!s.components_known) out.push_back(what + ": " + s.indeterminate_reason);
    };
    add("sing", sing);
    add("kupka", kupka);
    add("non_kupka", non_kupka);
    if (hyp.J_radical == Tri::indeterminate) out.push_back("J_radical");
    if (hyp.KL_disjoint == Tri::indeterminate) out.push_back("KL_disjoint");
    if (K_connected == Tri::indeterminate) out.push_back("K_connected");
    if (K_ci.value == Tri::indeterminate) out.push_back("K_ci");
    if (split && split->kind == "locally-free-but-undecided") out.push_back("split");
    return out;
  }
  bool has_indeterminate() const { return !indeterminate().empty(); }
};

namespace detail {

inline void check(FoliationReport& r, const std::string& name, Tri applies, bool ok, const std::string& detail) {
  TheoremCheck t{name, "not-evaluated", detail};
  if (applies == Tri::yes) {
    t.status = ok ? "holds" : "violated";
    if (!ok) r.alarms.push_back(name + ": " + detail);
  }
  r.theorems.push_back(std::move(t));
}

inline Tri both(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::indeterminate;
}

}  // namespace detail

/// Runs every analysis and checks the implications that apply.
inline FoliationReport theorem_suite(const ProjectiveForm& f, const AnalysisConfig& cfg = {}) {
  FoliationReport r;
  r.form = f;
  r.dmax = cfg.effective_dmax(f.e);
  r.window_lo = cfg.lo(f.e);
  r.window_hi = cfg.hi(f.e);
  r.budget = cfg.effective_budget(f.e);
  const Budget& b = r.budget;

  r.integrable = is_integrable(f);
  Ideal dw = coefficient_ideal(f.d_omega()).with_budget(b);
  r.J = ideal_J(f, b);
  r.K = quotient(r.J, dw);
  r.L = saturation(r.J, r.K);
  r.I = ideal_I(f, r.dmax, b);

  r.sing = scheme_summary(r.J, dw, cfg.decompose);
  r.kupka = scheme_summary(r.K, dw, cfg.decompose);
  r.non_kupka = scheme_summary(r.L, dw, cfg.decompose);
  r.K_connected = r.kupka.connected;

  // hypotheses
  r.hyp.J_radical = r.sing.reduced;
  if (r.sing.reduced == Tri::indeterminate) r.hyp.J_radical_ideal = Tri::indeterminate;
  else r.hyp.J_radical_ideal = tri(r.sing.reduced == Tri::yes && r.J == r.sing.ideal);
  r.hyp.KL_disjoint = tri(irrelevant_saturation(r.K + r.L).is_unit());
  r.hyp.in_U = r.I.is_zero() ? Tri::no : tri(radical_equal(r.I.ideal, r.K));
  r.I_stabilized = r.I.tail_stable && r.hyp.in_U == Tri::yes;

  // P^3 verdicts
  if (f.n == 3) {
    SingularCurve sc = singular_curve(f, b);
    r.sing_pure = sc.pure;
    try {
      r.chern = chern_classes(f, sc);
    } catch (const ValidationError& ex) {
      r.chern_error = ex.code();
    }
    try {
      r.split = splitting_verdict(f, sc, r.window_lo, r.window_hi);
    } catch (const ValidationError& ex) {
      r.split = SplittingVerdict{ex.code(), std::nullopt, "", std::nullopt};
      r.alarms.push_back(std::string("splitting: ") + ex.what());
    }
  }
  if (!r.kupka.ideal.is_unit()) r.K_acm = is_aCM(r.K, r.window_lo, r.window_hi);
  r.K_ci = complete_intersection_verdict(r.K);
  r.compact_kupka = tri(irrelevant_saturation(r.J + dw).is_unit());
  r.unfolding = unfolding_dimensions(f, 0, static_cast<int>(r.dmax));
  r.d_omega_generators = D_omega(f, b);

  // I-dependent checks
  bool J_in_I = r.I.ideal.contains(r.J);
  detail::check(r, "teo5", Tri::yes, r.integrable == J_in_I && (r.integrable || r.I.is_zero()),
                std::string("integrable=") + (r.integrable ? "true" : "false") + " J_in_I=" + (J_in_I ? "true" : "false") +
                    " I_zero=" + (r.I.is_zero() ? "true" : "false"));
  Tri integ = tri(r.integrable && !r.I.is_zero());
  bool I_saturated = !r.I.is_zero() && irrelevant_saturation(r.I.ideal) == r.I.ideal;
  detail::check(r, "propI", integ, I_saturated, "I equals its irrelevant saturation");
  if (integ == Tri::yes) r.I_h1 = sheaf_cohomology_window(r.I.ideal, 1, r.window_lo, r.window_hi);
  detail::check(r, "teoI", integ, r.I_h1 && r.I_h1->all_zero(),
                "h1 of the ideal sheaf of I on [" + std::to_string(r.window_lo) + "," + std::to_string(r.window_hi) + "]");

  // everything below concerns foliations; a non-integrable form only gets teo5
  Tri main_hyp = detail::both(tri(r.integrable), detail::both(r.hyp.J_radical, r.hyp.KL_disjoint));
  if (main_hyp == Tri::indeterminate) main_hyp = Tri::not_evaluated;
  // technical1: I = K degreewise up to dmax
  bool i_eq_k = true;
  if (main_hyp == Tri::yes) {
    HilbertData hk = hilbert_data(r.K);
    for (const auto& [m, dim] : r.I.dims)
      if (dim != ideal_dimension(r.K, m, hk)) i_eq_k = false;
    for (const auto& g : r.I.generators)
      if (!r.K.contains(g)) i_eq_k = false;
  }
  detail::check(r, "technical1", main_hyp, i_eq_k, "I_m = K_m for m <= " + std::to_string(r.dmax));
  detail::check(r, "teo1", r.hyp.in_U, r.hyp.in_U == Tri::yes, "radical(I) = radical(K)");
  bool acm_ok = r.K_acm && r.K_acm->acm && r.K_acm->pd == 2 && r.K_acm->h1.all_zero();
  detail::check(r, "main-theorem", main_hyp, acm_ok, "K aCM with pd(S/sat K) = 2 and zero h1 window");
  Tri first = detail::both(main_hyp == Tri::yes ? Tri::yes : Tri::no, tri(r.L.is_unit()));
  if (f.n != 3 || main_hyp != Tri::yes) first = Tri::not_evaluated;
  detail::check(r, "first-application", first, r.split && r.split->kind == "splits", "tangent sheaf splits");
  Tri second = r.hyp.in_U == Tri::yes && r.K_connected != Tri::indeterminate ? Tri::yes : Tri::not_evaluated;
  detail::check(r, "second-application", second, r.K_connected == Tri::yes, "Kupka scheme connected");
  bool all_kupka = r.kupka.components_known;
  for (const auto& c : r.kupka.components) all_kupka = all_kupka && c.kupka;
  Tri third = Tri::not_evaluated;
  if (main_hyp == Tri::yes && r.L.is_unit() && all_kupka && r.compact_kupka == Tri::yes) third = Tri::yes;
  detail::check(r, "third-application", third, r.K_ci.value == Tri::yes, "K complete intersection");
  return r;
}

}  // namespace folab
