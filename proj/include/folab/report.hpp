#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "folab/foliation.hpp"
#include "folab/form_file.hpp"

namespace folab {

using Json = nlohmann::json;  // std::map storage: keys come out sorted

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_indeterminate = 2, exit_budget = 3, exit_regression = 4 };

/// Turns a parsed file into a validated form; curve files go through the
/// linear-relation construction.
inline ProjectiveForm to_projective(const FormFile& ff) {
  if (ff.is_curve()) {
    CurveFoliation cf = foliation_from_acm_curve(ff.curve, ff.relation);
    cf.form.names = ff.vars;
    return cf.form;
  }
  return validate(ff.n, ff.e, ff.coefficients, ff.vars);
}

namespace detail {

inline std::string poly_str(const Polynomial& p, const std::vector<std::string>& names) { return p.to_string(names); }

inline Json poly_list(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string(names));
  return a;
}

inline std::string ideal_str(const Ideal& i, const std::vector<std::string>& names) {
  std::string s = "<";
  const auto& gb = i.groebner_basis();
  for (std::size_t k = 0; k < gb.size(); ++k) s += (k ? ", " : "") + gb[k].to_string(names);
  return s + ">";
}

inline Json tri_json(Tri t) {
  if (t == Tri::yes) return true;
  if (t == Tri::no) return false;
  return to_string(t);
}

inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Json window_json(const CohomologyWindow& w) {
  Json v = Json::object();
  for (const auto& [d, h] : w.values) v[std::to_string(d)] = h;
  return {{"sheaf", w.sheaf}, {"index", w.index}, {"window", {w.lo, w.hi}}, {"values", v}, {"all_zero", w.all_zero()}};
}

inline Json betti_json(const BettiTable& b) {
  Json out = Json::object();
  for (const auto& [key, n] : b.entries) out[std::to_string(key.first)][std::to_string(key.second)] = n;
  return {{"table", out}, {"text", b.to_string()}, {"projective_dimension", b.projective_dimension()}};
}

inline Json acm_json(const ACMVerdict& a) {
  return {{"acm", a.acm}, {"pd", a.pd}, {"codim", a.codim}, {"betti", betti_json(a.betti)}, {"h1", window_json(a.h1)}};
}

inline Json hilbert_json(const Ideal& ideal) {
  HilbertData h = hilbert_data(ideal);
  Json num = Json::array();
  for (const auto& c : h.reduced_numerator) num.push_back(integer_json(c));
  Json poly = Json::array();
  for (const auto& c : h.hilbert_polynomial) poly.push_back(c.get_str());
  return {{"proj_dim", h.proj_dim()}, {"degree", integer_json(h.degree)}, {"numerator", num},
          {"hilbert_polynomial", poly}};
}

inline Json ideal_json(const Ideal& i, const std::vector<std::string>& names) {
  return {{"generators", poly_list(i.groebner_basis(), names)}, {"unit", i.is_unit()}, {"zero", i.is_zero()},
          {"hilbert", hilbert_json(i)}};
}

inline Json scheme_json(const SchemeSummary& s, const std::vector<std::string>& names) {
  Json comps = Json::object();
  std::vector<std::string> keys;
  std::vector<long> mults;
  for (const auto& c : s.components) {
    keys.push_back(ideal_str(c.prime, names));
    comps[keys.back()] = {{"multiplicity", c.multiplicity}, {"kupka", c.kupka}, {"degree", c.degree}, {"dim", c.dim}};
    mults.push_back(c.multiplicity);
  }
  std::sort(mults.begin(), mults.end());
  Json edges = Json::array();
  for (const auto& [a, b] : s.edges) {
    auto pr = std::minmax(keys[a], keys[b]);
    edges.push_back({pr.first, pr.second});
  }
  std::sort(edges.begin(), edges.end());
  Json out = {{"ideal", ideal_str(s.ideal, names)},
              {"dim", s.dim},
              {"degree", integer_json(s.degree)},
              {"components_known", s.components_known},
              {"components", comps},
              {"component_count", s.components.size()},
              {"multiplicities", mults},
              {"edges", edges},
              {"reduced", tri_json(s.reduced)},
              {"connected", tri_json(s.connected)}};
  if (!s.indeterminate_reason.empty()) out["indeterminate_reason"] = s.indeterminate_reason;
  return out;
}

inline Json unfolding_json(const UnfoldingIdeal& u, const std::vector<std::string>& names) {
  Json dims = Json::object(), fresh = Json::object();
  for (const auto& [m, d] : u.dims) dims[std::to_string(m)] = d;
  for (const auto& [m, d] : u.fresh) fresh[std::to_string(m)] = d;
  return {{"dmax", u.dmax},         {"generators", poly_list(u.generators, names)},
          {"dims", dims},           {"fresh", fresh},
          {"tail_stable", u.tail_stable}, {"zero", u.is_zero()}};
}

inline Json form_json(const ProjectiveForm& f) {
  return {{"n", f.n},
          {"e", f.e},
          {"degree", f.degree()},
          {"vars", f.names},
          {"coefficients", poly_list(f.coefficients(), f.names)},
          {"w", f.omega.to_string(f.names)}};
}

inline Json config_json(unsigned dmax, int lo, int hi, const Budget& b) {
  return {{"dmax", dmax}, {"window", {lo, hi}}, {"budget", {{"pairs", b.max_pairs}, {"degree", b.max_degree}}}};
}

}  // namespace detail

inline Json report_json(const FoliationReport& r) {
  const auto& nm = r.form.names;
  Json j;
  j["schema"] = 1;
  auto ind = r.indeterminate();
  j["status"] = ind.empty() ? "ok" : "indeterminate";
  j["indeterminate"] = ind;
  j["input"] = detail::form_json(r.form);
  j["config"] = detail::config_json(r.dmax, r.window_lo, r.window_hi, r.budget);
  j["integrable"] = r.integrable;
  j["ideals"] = {{"J", detail::ideal_json(r.J, nm)},
                 {"K", detail::ideal_json(r.K, nm)},
                 {"L", detail::ideal_json(r.L, nm)},
                 {"I", detail::unfolding_json(r.I, nm)}};
  j["ideals"]["I"]["stabilized"] = r.I_stabilized;
  j["ideals"]["I"]["label"] = r.I_stabilized ? "certified" : "window-certified";
  j["sing"] = detail::scheme_json(r.sing, nm);
  j["sing"]["pure"] = r.sing_pure;
  j["kupka"] = detail::scheme_json(r.kupka, nm);
  j["non_kupka"] = detail::scheme_json(r.non_kupka, nm);
  j["hypotheses"] = {{"J_radical", detail::tri_json(r.hyp.J_radical)},
                     {"J_radical_ideal", detail::tri_json(r.hyp.J_radical_ideal)},
                     {"KL_disjoint", detail::tri_json(r.hyp.KL_disjoint)},
                     {"in_U", detail::tri_json(r.hyp.in_U)}};
  if (r.chern) j["chern"] = {r.chern->c1, r.chern->c2};
  else j["chern"] = nullptr;
  if (!r.chern_error.empty()) j["chern_error"] = r.chern_error;
  if (r.split) {
    Json s = {{"kind", r.split->kind}, {"type_string", r.split->type_string}};
    s["type"] = r.split->type ? Json{r.split->type->first, r.split->type->second} : Json(nullptr);
    if (r.split->acm) s["sing_acm"] = detail::acm_json(*r.split->acm);
    j["split"] = s;
  } else {
    j["split"] = nullptr;
  }
  j["K_acm"] = r.K_acm ? detail::acm_json(*r.K_acm) : Json(nullptr);
  j["K_connected"] = detail::tri_json(r.K_connected);
  Json hist = Json::object();
  for (const auto& [d, n] : r.K_ci.histogram) hist[std::to_string(d)] = n;
  j["K_ci"] = {{"value", detail::tri_json(r.K_ci.value)}, {"codim", r.K_ci.codim}, {"generator_degrees", hist}};
  j["compact_kupka"] = detail::tri_json(r.compact_kupka);
  j["I_h1"] = r.I_h1 ? detail::window_json(*r.I_h1) : Json(nullptr);
  Json unf = Json::object();
  for (const auto& [m, u] : r.unfolding)
    unf[std::to_string(m)] = {
        {"solutions", u.solutions}, {"trivial", u.trivial}, {"quotient", u.quotient}, {"projection", u.projection}};
  j["unfolding"] = unf;
  Json dom = Json::array();
  for (const auto& x : r.d_omega_generators) dom.push_back(detail::poly_list(x.coefficients, nm));
  j["D_omega"] = dom;
  Json th = Json::object();
  for (const auto& t : r.theorems) th[t.name] = {{"status", t.status}, {"detail", t.detail}};
  j["theorems"] = th;
  j["alarms"] = r.alarms;
  return j;
}

/// J, I, K, L with canonical generators and Hilbert data.
inline Json ideals_json(const ProjectiveForm& f, const AnalysisConfig& cfg = {}) {
  const auto& nm = f.names;
  Budget b = cfg.effective_budget(f.e);
  Json j;
  j["schema"] = 1;
  j["status"] = "ok";
  j["input"] = detail::form_json(f);
  j["config"] = detail::config_json(cfg.effective_dmax(f.e), cfg.lo(f.e), cfg.hi(f.e), b);
  j["integrable"] = is_integrable(f);
  Ideal J = ideal_J(f, b), K = ideal_K(f, b), L = ideal_L(f, K);
  UnfoldingIdeal I = ideal_I(f, cfg.effective_dmax(f.e), b);
  j["J"] = detail::ideal_json(J, nm);
  j["K"] = detail::ideal_json(K, nm);
  j["L"] = detail::ideal_json(L, nm);
  j["I"] = detail::unfolding_json(I, nm);
  if (!I.is_zero()) j["I"]["hilbert"] = detail::hilbert_json(I.ideal);
  return j;
}

/// Cohomology window of the ideal sheaf (or structure sheaf) of J, I, K or L.
inline Json cohomology_json(const ProjectiveForm& f, const std::string& which, int index, SheafKind kind,
                            const AnalysisConfig& cfg = {}) {
  Budget b = cfg.effective_budget(f.e);
  Ideal ideal;
  if (which == "J") ideal = ideal_J(f, b);
  else if (which == "K") ideal = ideal_K(f, b);
  else if (which == "L") ideal = ideal_L(f, ideal_K(f, b));
  else if (which == "I") ideal = ideal_I(f, cfg.effective_dmax(f.e), b).ideal;
  else throw ValidationError("unknown-ideal", "expected one of J, I, K, L, got '" + which + "'");
  if (index < 0 || index > static_cast<int>(f.n))
    throw ValidationError("cohomology-index", "index must lie in [0, " + std::to_string(f.n) + "]");
  Json j;
  j["schema"] = 1;
  j["status"] = "ok";
  j["input"] = detail::form_json(f);
  j["ideal"] = which;
  j["generators"] = detail::poly_list(ideal.groebner_basis(), f.names);
  if (ideal.is_zero()) {
    j["cohomology"] = nullptr;
    j["note"] = "zero ideal";
    return j;
  }
  j["cohomology"] = detail::window_json(sheaf_cohomology_window(ideal, index, cfg.lo(f.e), cfg.hi(f.e), kind));
  return j;
}

inline Json error_json(const std::string& status, const std::string& code, const std::string& detail) {
  return {{"schema", 1}, {"status", status}, {"error", {{"code", code}, {"detail", detail}}}};
}

/// "path = value" lines for every leaf; the same syntax .expect files use.
inline void flatten(const Json& j, const std::string& prefix, std::vector<std::string>& out) {
  bool leaf = !(j.is_object() || j.is_array()) || j.empty();
  bool scalar_array = j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
  if (leaf || scalar_array) {
    out.push_back(prefix + " = " + (j.is_string() ? j.get<std::string>() : j.dump()));
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  }
}

inline std::string to_text(const Json& j) {
  std::vector<std::string> lines;
  flatten(j, "", lines);
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// .expect files

struct Expectation {
  std::size_t line = 0;
  std::string path, value;
};

inline std::vector<Expectation> parse_expect(std::string_view text) {
  std::vector<Expectation> out;
  std::size_t no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(start, end - start));
    ++no;
    start = end + 1;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    raw = trim(raw);
    if (raw.empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("syntax-error", no, 1, "expected 'path = value'");
    out.push_back({no, trim(raw.substr(0, eq)), trim(raw.substr(eq + 1))});
  }
  return out;
}

/// Follows a dotted path; array elements are addressed by index.
inline const Json* lookup(const Json& j, const std::string& path) {
  const Json* cur = &j;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t dot = path.find('.', start);
    if (dot == std::string::npos) dot = path.size();
    std::string key = path.substr(start, dot - start);
    start = dot + 1;
    if (cur->is_object()) {
      auto it = cur->find(key);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) return nullptr;
      std::size_t i = std::stoul(key);
      if (i >= cur->size()) return nullptr;
      cur = &(*cur)[i];
    } else {
      return nullptr;
    }
  }
  return cur;
}

inline bool matches(const Json& actual, const std::string& expected) {
  if (actual.is_string()) return actual.get<std::string>() == expected;
  Json e = Json::parse(expected, nullptr, false);
  if (e.is_discarded()) return false;
  if (actual.is_number() && e.is_number()) return actual.dump() == e.dump();
  return actual == e;
}

/// Mismatch messages; empty when every expectation holds. The pseudo-key
/// "exit" compares against the exit code.
inline std::vector<std::string> check_expectations(const Json& report, int exit_code,
                                                   const std::vector<Expectation>& exp) {
  std::vector<std::string> out;
  for (const auto& e : exp) {
    if (e.path == "exit") {
      if (std::to_string(exit_code) != e.value)
        out.push_back("exit: expected " + e.value + ", got " + std::to_string(exit_code));
      continue;
    }
    const Json* a = lookup(report, e.path);
    if (!a) {
      out.push_back(e.path + ": missing");
      continue;
    }
    if (!matches(*a, e.value))
      out.push_back(e.path + ": expected " + e.value + ", got " + (a->is_string() ? a->get<std::string>() : a->dump()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// commands

struct CommandResult {
  Json json;
  int exit = exit_ok;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("io-error", "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Maps library exceptions onto the exit-code contract.
template <class Fn>
CommandResult run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    return {error_json("invalid-input", e.code(), e.detail()), exit_invalid};
  } catch (const BudgetExceeded& e) {
    Json j = error_json("budget-exceeded", "budget-exceeded", e.what());
    j["error"]["kind"] = e.kind() == BudgetExceeded::Kind::pairs ? "pairs" : "degree";
    j["error"]["limit"] = e.limit();
    return {j, exit_budget};
  } catch (const Indeterminate& e) {
    return {error_json("indeterminate", "indeterminate", e.what()), exit_indeterminate};
  }
}

inline CommandResult analyze_text(std::string_view text, const AnalysisConfig& cfg = {}) {
  return run_guarded([&]() -> CommandResult {
    ProjectiveForm f = to_projective(parse_form(text));
    FoliationReport r = theorem_suite(f, cfg);
    CommandResult out{report_json(r), exit_ok};
    if (r.has_indeterminate()) out.exit = exit_indeterminate;
    return out;
  });
}

inline CommandResult analyze_file(const std::filesystem::path& p, const AnalysisConfig& cfg = {}) {
  return run_guarded([&]() -> CommandResult { return analyze_text(read_file(p), cfg); });
}

struct CorpusEntry {
  std::string name;
  int exit = 0;
  bool passed = false;
  std::vector<std::string> mismatches;
};

/// Analyzes every .fol in `dir` (sorted by name) and diffs against its .expect.
inline std::vector<CorpusEntry> run_corpus(const std::filesystem::path& dir, const AnalysisConfig& cfg = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError("io-error", dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".fol") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : files) {
    CorpusEntry ce;
    ce.name = p.stem().string();
    CommandResult r = analyze_file(p, cfg);
    ce.exit = r.exit;
    fs::path exp = p;
    exp.replace_extension(".expect");
    if (!fs::exists(exp)) {
      ce.mismatches.push_back("missing " + exp.filename().string());
    } else {
      try {
        ce.mismatches = check_expectations(r.json, r.exit, parse_expect(read_file(exp)));
      } catch (const ValidationError& e) {
        ce.mismatches.push_back(exp.filename().string() + ": " + e.what());
      }
    }
    ce.passed = ce.mismatches.empty();
    out.push_back(std::move(ce));
  }
  return out;
}

inline Json corpus_json(const std::vector<CorpusEntry>& entries) {
  Json a = Json::array();
  std::size_t failed = 0;
  for (const auto& e : entries) {
    a.push_back({{"name", e.name}, {"exit", e.exit}, {"passed", e.passed}, {"mismatches", e.mismatches}});
    failed += !e.passed;
  }
  return {{"schema", 1},
          {"status", failed ? "regression" : "ok"},
          {"fixtures", a},
          {"total", entries.size()},
          {"failed", failed}};
}

inline std::string corpus_table(const std::vector<CorpusEntry>& entries) {
  std::size_t w = 8, failed = 0;
  for (const auto& e : entries) w = std::max(w, e.name.size());
  std::string s;
  for (const auto& e : entries) {
    s += e.name + std::string(w - e.name.size() + 2, ' ') + (e.passed ? "PASS" : "FAIL") + "  exit=" +
         std::to_string(e.exit) + "\n";
    for (const auto& m : e.mismatches) s += "    " + m + "\n";
    failed += !e.passed;
  }
  s += std::to_string(entries.size() - failed) + "/" + std::to_string(entries.size()) + " fixtures passed\n";
  return s;
}

/// Applies FOLIATION_LAB_BUDGET_DEG unless a degree cap was given explicitly.
inline void apply_budget_env(AnalysisConfig& cfg) {
  if (cfg.budget_degree_set) return;
  const char* v = std::getenv("FOLIATION_LAB_BUDGET_DEG");
  if (!v || !*v) return;
  char* end = nullptr;
  unsigned long d = std::strtoul(v, &end, 10);
  if (*end || d == 0) throw ValidationError("bad-config", "FOLIATION_LAB_BUDGET_DEG must be a positive integer");
  cfg.budget.max_degree = static_cast<std::uint32_t>(d);
  cfg.budget_degree_set = true;
}

}  // namespace folab
