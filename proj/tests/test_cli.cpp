#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "folab/report.hpp"
#include "forms.hpp"

using namespace folab;
namespace fs = std::filesystem;

namespace {

const fs::path corpus_dir = FOLAB_CORPUS_DIR;

/// Runs the CLI with stdout captured into a file; returns (exit code, output).
std::pair<int, std::string> run_cli(const std::string& args, const std::string& env = "") {
  fs::path out = fs::temp_directory_path() / ("folab_cli_" + std::to_string(::getpid()) + ".out");
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(FOLAB_CLI) + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::string text = read_file(out);
  fs::remove(out);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("folab_corpus_" + std::to_string(::getpid()) + "_" + std::to_string(rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

std::string error_code(std::string_view text) {
  try {
    parse_form(text);
  } catch (const ValidationError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(FormFile, RoundTripOnCorpus) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(corpus_dir)) {
    if (e.path().extension() != ".fol") continue;
    FormFile a = parse_form(read_file(e.path()));
    std::string printed = print_form(a);
    FormFile b = parse_form(printed);
    EXPECT_EQ(a.coefficients, b.coefficients) << e.path();
    EXPECT_EQ(a.curve, b.curve) << e.path();
    EXPECT_EQ(a.relation, b.relation) << e.path();
    EXPECT_EQ(a.vars, b.vars);
    EXPECT_EQ(print_form(b), printed) << e.path();
    ++n;
  }
  EXPECT_GE(n, 10u);
}

TEST(FormFile, Parameters) {
  FormFile ff = parse_form(read_file(corpus_dir / "omega_t1.fol"));
  auto w = folab::testing::omega_t(1);
  EXPECT_EQ(ff.coefficients, w.coefficients());
  FormFile f0 = parse_form(read_file(corpus_dir / "omega_t0.fol"));
  EXPECT_EQ(f0.coefficients, folab::testing::omega_t(0).coefficients());
  FormFile big = parse_form(read_file(corpus_dir / "omega_big.fol"));
  EXPECT_EQ(big.coefficients, folab::testing::omega_big().coefficients());
}

TEST(FormFile, Errors) {
  EXPECT_EQ(error_code("n=3 e=2\nvars x0 x1 x2 x3\nw = x0*dx1 - x1*dx0 +"), "syntax-error");
  EXPECT_EQ(error_code("n=3 e=2\nvars x0 x1 x2 x3\nw = s*x0*dx1 - x1*dx0"), "unbound-parameter");
  EXPECT_EQ(error_code("n=3 e=2\nvars x0 x1 x2 x3\nw = (x0 + x1^2)*dx1 - x1*dx0"), "inhomogeneous-coefficient");
  try {
    parse_form("n=3 e=2\nvars x0 x1 x2 x3\n\nw = x0*dx1 ? x1*dx0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 12u);
  }
  auto r = analyze_text("n=3 e=2\nvars x0 x1 x2 x3\nw = x0*dx0");
  EXPECT_EQ(r.exit, exit_invalid);
  EXPECT_EQ(r.json["status"], "invalid-input");
  EXPECT_EQ(r.json["error"]["code"], "euler-violation");
}

TEST(Report, DeterministicAndStable) {
  std::string text = read_file(corpus_dir / "omega_prime.fol");
  auto a = analyze_text(text), b = analyze_text(text);
  EXPECT_EQ(a.exit, exit_ok);
  EXPECT_EQ(a.json.dump(), b.json.dump());
  EXPECT_EQ(a.json["schema"], 1);
  // keys of every object come out sorted
  std::string prev;
  for (const auto& [k, v] : a.json.items()) {
    EXPECT_LT(prev, k);
    prev = k;
  }
  EXPECT_EQ(a.json["sing"]["degree"], 6);
  EXPECT_EQ(a.json["chern"], Json({0, 0}));
  EXPECT_EQ(a.json["split"]["type_string"], "O+O");
}

TEST(Report, ContactAndIdeals) {
  auto c = analyze_text(read_file(corpus_dir / "contact.fol"));
  EXPECT_EQ(c.json["integrable"], false);
  EXPECT_EQ(c.json["ideals"]["I"]["zero"], true);
  auto line = to_projective(parse_form(read_file(corpus_dir / "line.fol")));
  Json j = ideals_json(line);
  EXPECT_EQ(j["J"]["generators"], Json({"x0", "x1"}));
  EXPECT_EQ(j["K"]["generators"], Json({"x0", "x1"}));
  EXPECT_EQ(j["L"]["unit"], true);
  EXPECT_EQ(j["J"]["hilbert"]["degree"], 1);
  Json ci = ideals_json(to_projective(parse_form(read_file(corpus_dir / "contact.fol"))));
  EXPECT_EQ(ci["I"]["zero"], true);
  EXPECT_EQ(ci["integrable"], false);
}

TEST(Report, Cohomology) {
  auto line = to_projective(parse_form(read_file(corpus_dir / "line.fol")));
  Json h1 = cohomology_json(line, "K", 1, SheafKind::ideal);
  EXPECT_EQ(h1["cohomology"]["all_zero"], true);
  // h^0(O_line(d)) = d + 1
  Json h0 = cohomology_json(line, "J", 0, SheafKind::structure);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(h0["cohomology"]["values"][std::to_string(d)], d + 1);
  EXPECT_THROW(cohomology_json(line, "Q", 1, SheafKind::ideal), ValidationError);
}

TEST(Expect, LookupAndMatch) {
  Json j = {{"a", {{"b", 3}, {"s", "O+O"}, {"arr", {1, 2}}}}, {"flag", true}, {"nil", nullptr}};
  ASSERT_NE(lookup(j, "a.b"), nullptr);
  EXPECT_TRUE(matches(*lookup(j, "a.b"), "3"));
  EXPECT_FALSE(matches(*lookup(j, "a.b"), "3.5"));
  EXPECT_TRUE(matches(*lookup(j, "a.s"), "O+O"));
  EXPECT_TRUE(matches(*lookup(j, "a.arr"), "[1, 2]"));
  EXPECT_TRUE(matches(*lookup(j, "a.arr.1"), "2"));
  EXPECT_TRUE(matches(*lookup(j, "flag"), "true"));
  EXPECT_TRUE(matches(*lookup(j, "nil"), "null"));
  EXPECT_EQ(lookup(j, "a.c"), nullptr);
  EXPECT_EQ(lookup(j, "a.arr.7"), nullptr);
  auto exp = parse_expect("# comment\nexit = 0\n\na.b = 3   # trailing\na.s = O+O(1)\nmissing.key = 1\n");
  ASSERT_EQ(exp.size(), 4u);
  EXPECT_EQ(exp[1].line, 4u);
  auto mism = check_expectations(j, 0, exp);
  ASSERT_EQ(mism.size(), 2u);
  EXPECT_NE(mism[0].find("a.s"), std::string::npos);
  EXPECT_NE(mism[1].find("missing"), std::string::npos);
  EXPECT_EQ(check_expectations(j, 2, parse_expect("exit = 0")).size(), 1u);
  EXPECT_THROW(parse_expect("no equals sign"), ParseError);
}

TEST(Corpus, ShippedFixturesPass) {
  auto entries = run_corpus(corpus_dir);
  EXPECT_GE(entries.size(), 12u);
  for (const auto& e : entries) EXPECT_TRUE(e.passed) << e.name << ": " << (e.mismatches.empty() ? "" : e.mismatches[0]);
  std::vector<std::string> names;
  for (const auto& e : entries) names.push_back(e.name);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Corpus, RegressionsAndEmptyDir) {
  TempDir empty;
  EXPECT_TRUE(run_corpus(empty.path).empty());
  auto [code0, out0] = run_cli("corpus " + empty.path.string() + " --format text");
  EXPECT_EQ(code0, exit_ok) << out0;

  TempDir bad;
  bad.write("line.fol", read_file(corpus_dir / "line.fol"));
  bad.write("line.expect", "exit = 0\nchern = [2,2]\n");
  auto entries = run_corpus(bad.path);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_FALSE(entries[0].passed);
  auto [code, out] = run_cli("corpus " + bad.path.string() + " --format text");
  EXPECT_EQ(code, exit_regression) << out;
  EXPECT_NE(out.find("chern"), std::string::npos);

  TempDir missing;
  missing.write("line.fol", read_file(corpus_dir / "line.fol"));
  EXPECT_FALSE(run_corpus(missing.path)[0].passed);
}

TEST(Cli, ExitCodes) {
  auto ok = run_cli("analyze " + (corpus_dir / "line.fol").string());
  EXPECT_EQ(ok.first, exit_ok);
  Json j = Json::parse(ok.second);
  EXPECT_EQ(j["chern"], Json({2, 1}));
  EXPECT_EQ(run_cli("analyze " + (corpus_dir / "euler_violation.fol").string()).first, exit_invalid);
  EXPECT_EQ(run_cli("analyze /nonexistent/file.fol").first, exit_invalid);
  EXPECT_EQ(run_cli("analyze " + (corpus_dir / "rational_22.fol").string()).first, exit_indeterminate);
  auto budget = run_cli("analyze " + (corpus_dir / "omega_big.fol").string() + " --budget-pairs 5");
  EXPECT_EQ(budget.first, exit_budget);
  EXPECT_EQ(Json::parse(budget.second)["error"]["kind"], "pairs");
  auto env = run_cli("analyze " + (corpus_dir / "omega_prime.fol").string(), "FOLIATION_LAB_BUDGET_DEG=3");
  EXPECT_EQ(env.first, exit_budget);
  EXPECT_EQ(Json::parse(env.second)["error"]["limit"], 3);
  // an explicit flag takes precedence over the environment
  auto flag = run_cli("analyze " + (corpus_dir / "omega_prime.fol").string() + " --budget-deg 40",
                      "FOLIATION_LAB_BUDGET_DEG=3");
  EXPECT_EQ(flag.first, exit_ok);
  EXPECT_EQ(Json::parse(flag.second)["config"]["budget"]["degree"], 40);
}

TEST(Cli, OptionsAndFormats) {
  auto w = run_cli("analyze " + (corpus_dir / "line.fol").string() + " --window -3 5 --dmax 6");
  Json j = Json::parse(w.second);
  EXPECT_EQ(j["config"]["window"], Json({-3, 5}));
  EXPECT_EQ(j["config"]["dmax"], 6);
  auto text = run_cli("analyze " + (corpus_dir / "line.fol").string() + " --format text");
  EXPECT_NE(text.second.find("split.type_string = O(1)+O(1)\n"), std::string::npos);
  auto ideals = run_cli("ideals " + (corpus_dir / "line.fol").string());
  EXPECT_EQ(Json::parse(ideals.second)["K"]["generators"], Json({"x0", "x1"}));
  auto coh = run_cli("cohomology " + (corpus_dir / "line.fol").string() + " --ideal K --i 1");
  EXPECT_EQ(coh.first, exit_ok);
  EXPECT_EQ(Json::parse(coh.second)["cohomology"]["all_zero"], true);
  auto same1 = run_cli("analyze " + (corpus_dir / "omega_t1.fol").string());
  auto same2 = run_cli("analyze " + (corpus_dir / "omega_t1.fol").string());
  EXPECT_EQ(same1.second, same2.second);
  EXPECT_NE(run_cli("analyze").first, exit_ok);
}
