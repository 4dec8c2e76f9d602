// folab: analyze codimension-one foliations given as .fol files.

#include <iostream>

#include <CLI11.hpp>

#include "folab/report.hpp"

namespace {

struct Options {
  unsigned dmax = 0;
  std::vector<int> window;
  std::size_t budget_pairs = 0;
  unsigned budget_deg = 0;
  bool no_decompose = false;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--dmax", o.dmax, "top degree for the unfolding ideal (default 2e+2)")->check(CLI::PositiveNumber);
  cmd->add_option("--window", o.window, "twist window LO HI for cohomology (default -2e 2e)")->expected(2);
  cmd->add_option("--budget-pairs", o.budget_pairs, "S-pair cap per Groebner computation")->check(CLI::PositiveNumber);
  cmd->add_option("--budget-deg", o.budget_deg, "degree cap per Groebner computation (default 4e)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-decompose", o.no_decompose, "skip primary decomposition");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

folab::AnalysisConfig make_config(const Options& o) {
  folab::AnalysisConfig cfg;
  cfg.dmax = o.dmax;
  if (o.window.size() == 2) {
    if (o.window[0] > o.window[1]) throw folab::ValidationError("bad-config", "window LO must not exceed HI");
    cfg.window_lo = o.window[0];
    cfg.window_hi = o.window[1];
  }
  if (o.budget_pairs) cfg.budget.max_pairs = o.budget_pairs;
  if (o.budget_deg) {
    cfg.budget.max_degree = o.budget_deg;
    cfg.budget_degree_set = true;
  }
  cfg.decompose = !o.no_decompose;
  folab::apply_budget_env(cfg);
  return cfg;
}

int emit(const folab::CommandResult& r, const std::string& format) {
  if (format == "text") std::cout << folab::to_text(r.json);
  else std::cout << r.json.dump(2) << "\n";
  return r.exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideals, verdicts and invariants of codimension-one foliations on projective space"};
  app.require_subcommand(1);
  Options o;
  std::string file, which = "J", sheaf = "ideal";
  int index = 1;

  auto* analyze = app.add_subcommand("analyze", "full report with theorem checks");
  analyze->add_option("file", file, ".fol input")->required();
  add_common(analyze, o);

  auto* ideals = app.add_subcommand("ideals", "generators of J, I, K, L with Hilbert data");
  ideals->add_option("file", file, ".fol input")->required();
  add_common(ideals, o);

  auto* corpus = app.add_subcommand("corpus", "run every .fol in a directory against its .expect");
  corpus->add_option("dir", file, "fixture directory")->required();
  add_common(corpus, o);

  auto* coh = app.add_subcommand("cohomology", "h^i window of the sheaf of J, I, K or L");
  coh->add_option("file", file, ".fol input")->required();
  coh->add_option("--ideal", which, "which ideal")->check(CLI::IsMember({"J", "I", "K", "L"}));
  coh->add_option("--i", index, "cohomological index")->required();
  coh->add_option("--sheaf", sheaf, "ideal sheaf or structure sheaf")->check(CLI::IsMember({"ideal", "structure"}));
  add_common(coh, o);

  CLI11_PARSE(app, argc, argv);

  folab::CommandResult config_error;
  folab::AnalysisConfig cfg;
  config_error = folab::run_guarded([&]() -> folab::CommandResult {
    cfg = make_config(o);
    return {};
  });
  if (config_error.exit) return emit(config_error, o.format);

  if (*analyze) return emit(folab::analyze_file(file, cfg), o.format);

  if (*ideals)
    return emit(folab::run_guarded([&]() -> folab::CommandResult {
                  auto f = folab::to_projective(folab::parse_form(folab::read_file(file)));
                  return {folab::ideals_json(f, cfg), folab::exit_ok};
                }),
                o.format);

  if (*coh)
    return emit(folab::run_guarded([&]() -> folab::CommandResult {
                  auto f = folab::to_projective(folab::parse_form(folab::read_file(file)));
                  auto kind = sheaf == "ideal" ? folab::SheafKind::ideal : folab::SheafKind::structure;
                  return {folab::cohomology_json(f, which, index, kind, cfg), folab::exit_ok};
                }),
                o.format);

  // corpus
  std::vector<folab::CorpusEntry> entries;
  auto guarded = folab::run_guarded([&]() -> folab::CommandResult {
    entries = folab::run_corpus(file, cfg);
    return {};
  });
  if (guarded.exit) return emit(guarded, o.format);
  bool failed = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return !e.passed; });
  if (o.format == "json") std::cout << folab::corpus_json(entries).dump(2) << "\n";
  else std::cout << folab::corpus_table(entries);
  return failed ? folab::exit_regression : folab::exit_ok;
}
