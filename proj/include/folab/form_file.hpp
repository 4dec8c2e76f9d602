#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "folab/errors.hpp"
#include "folab/polynomial.hpp"

namespace folab {

/// Input error with a 1-based source position. Codes: syntax-error,
/// unbound-parameter, inhomogeneous-coefficient.
class ParseError : public ValidationError {
 public:
  ParseError(std::string code, std::size_t line, std::size_t column, const std::string& msg)
      : ValidationError(std::move(code), "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Parsed .fol file: either a 1-form `w = ...` or curve data
/// (`curve = f0, f1, f2, f3` with `relation = l0, l1, l2, l3`).
struct FormFile {
  std::size_t n = 0;
  unsigned e = 0;
  std::vector<std::string> vars;
  std::vector<std::pair<std::string, Rational>> params;
  std::vector<Polynomial> coefficients;  ///< A_0..A_n of w
  std::vector<Polynomial> curve;
  std::vector<Polynomial> relation;
  bool is_curve() const { return !curve.empty() || !relation.empty(); }
};

namespace detail {

/// Value of a sub-expression: a polynomial plus an optional 1-form part.
struct ExprValue {
  Polynomial scalar;
  std::vector<Polynomial> form;  ///< empty when no differential occurs
};

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t col, const std::vector<std::string>& vars,
             const std::map<std::string, Rational>& params, bool allow_forms)
      : text_(text), line_(line), col0_(col), vars_(vars), params_(params), allow_forms_(allow_forms) {}

  ExprValue parse_all() {
    ExprValue v = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("syntax-error", std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

  /// Comma-separated list of polynomials.
  std::vector<Polynomial> parse_list() {
    std::vector<Polynomial> out;
    for (;;) {
      ExprValue v = expr();
      if (!v.form.empty()) fail("syntax-error", "differential not allowed here");
      out.push_back(v.scalar);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    if (pos_ < text_.size()) fail("syntax-error", std::string("unexpected '") + text_[pos_] + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& code, const std::string& msg) const {
    std::size_t line = line_, col = col0_;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(code, line, col, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t nvars() const { return vars_.size(); }
  ExprValue scalar(Polynomial p) const { return {std::move(p), {}}; }

  ExprValue add(ExprValue a, const ExprValue& b, int sign) {
    Rational s = sign;
    a.scalar = a.scalar.add_scaled(b.scalar, s, Monomial(nvars()));
    if (!b.form.empty()) {
      if (a.form.empty()) a.form.assign(nvars(), Polynomial(nvars()));
      for (std::size_t i = 0; i < nvars(); ++i) a.form[i] = a.form[i].add_scaled(b.form[i], s, Monomial(nvars()));
    }
    if (!a.form.empty() && !a.scalar.is_zero()) fail("syntax-error", "sum mixes a function and a 1-form");
    return a;
  }

  ExprValue mul(const ExprValue& a, const ExprValue& b) {
    if (!a.form.empty() && !b.form.empty()) fail("syntax-error", "product of two 1-forms");
    if (a.form.empty() && b.form.empty()) return scalar(a.scalar * b.scalar);
    const ExprValue& f = a.form.empty() ? b : a;
    const Polynomial& s = a.form.empty() ? a.scalar : b.scalar;
    ExprValue r{Polynomial(nvars()), f.form};
    for (auto& c : r.form) c = c * s;
    return r;
  }

  ExprValue expr() {
    skip_ws();
    ExprValue v = term();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != '+' && c != '-') break;
      ++pos_;
      ExprValue rhs = term();
      v = add(std::move(v), rhs, c == '+' ? 1 : -1);
    }
    return v;
  }

  ExprValue term() {
    ExprValue v = unary();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == '*') {
        ++pos_;
        v = mul(v, unary());
      } else if (c == '/') {
        ++pos_;
        ExprValue d = unary();
        if (!d.form.empty() || !d.scalar.is_constant() || d.scalar.is_zero())
          fail("syntax-error", "division only by nonzero constants");
        v = mul(v, scalar(Polynomial::constant(nvars(), 1 / d.scalar.leading_coeff())));
      } else {
        break;
      }
    }
    return v;
  }

  ExprValue unary() {
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      bool neg = text_[pos_] == '-';
      ++pos_;
      ExprValue v = unary();
      if (!neg) return v;
      return mul(scalar(Polynomial::constant(nvars(), -1)), v);
    }
    return power();
  }

  ExprValue power() {
    ExprValue base = atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("syntax-error", "expected integer exponent");
      if (!base.form.empty()) fail("syntax-error", "power of a 1-form");
      unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      return scalar(pow(base.scalar, k));
    }
    return base;
  }

  ExprValue atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("syntax-error", "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprValue v = expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("syntax-error", "expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer z(std::string(text_.substr(start, pos_ - start)));
      return scalar(Polynomial::constant(nvars(), Rational(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return scalar(Polynomial::variable(nvars(), i));
      if (auto it = params_.find(name); it != params_.end()) return scalar(Polynomial::constant(nvars(), it->second));
      if (name.size() > 1 && name[0] == 'd') {
        std::string base = name.substr(1);
        for (std::size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == base) {
            if (!allow_forms_) {
              pos_ = start;
              fail("syntax-error", "differential not allowed here");
            }
            ExprValue v{Polynomial(nvars()), std::vector<Polynomial>(nvars(), Polynomial(nvars()))};
            v.form[i] = Polynomial::constant(nvars(), 1);
            return v;
          }
      }
      pos_ = start;
      fail("unbound-parameter", "unknown identifier '" + name + "'");
    }
    fail("syntax-error", std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_, col0_;
  const std::vector<std::string>& vars_;
  const std::map<std::string, Rational>& params_;
  bool allow_forms_;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace detail

/// Parses a polynomial expression in the given variables (default x0..x{n-1}).
inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                                   const std::map<std::string, Rational>& params = {}) {
  detail::ExprParser p(text, 1, 1, vars, params, false);
  return p.parse_all().scalar;
}

inline Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  return parse_polynomial(text, default_names(nvars));
}

/// Parses a 1-form expression "sum coeff*dxi" into its n+1 coefficients.
inline std::vector<Polynomial> parse_one_form(std::string_view text, const std::vector<std::string>& vars,
                                              const std::map<std::string, Rational>& params = {}) {
  detail::ExprParser p(text, 1, 1, vars, params, true);
  auto v = p.parse_all();
  if (v.form.empty()) {
    if (!v.scalar.is_zero()) throw ParseError("syntax-error", 1, 1, "expression is not a 1-form");
    v.form.assign(vars.size(), Polynomial(vars.size()));
  }
  return v.form;
}

/// Parses the .fol grammar: header tokens (n=, e=, vars ..., name=rational),
/// then `w = <1-form>` or `curve = ...` / `relation = ...`. '#' starts a comment.
inline FormFile parse_form(std::string_view text) {
  FormFile ff;
  bool have_n = false, have_e = false;
  std::map<std::string, Rational> params;

  // Split into lines keeping 1-based numbers.
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t start = 0, no = 1;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '\n') {
        lines.emplace_back(no++, text.substr(start, i - start));
        start = i + 1;
      }
    }
  }

  enum class Block { none, w, curve, relation };
  struct Pending {
    Block kind;
    std::size_t line, col;
    std::string body;
  };
  std::vector<Pending> blocks;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto [lineno, raw] = lines[li];
    std::string_view line = raw.substr(0, std::min(raw.find('#'), raw.size()));
    // Block starts: "<key> = ..."
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    std::string_view rest = line.substr(first);
    std::size_t eq = rest.find('=');
    if (eq != std::string_view::npos) {
      std::string_view key = rest.substr(0, eq);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
      Block kind = key == "w" ? Block::w : key == "curve" ? Block::curve : key == "relation" ? Block::relation : Block::none;
      if (kind != Block::none) {
        if (!have_n || !have_e || ff.vars.empty())
          throw ParseError("syntax-error", lineno, first + 1, "header (n=, e=, vars) must precede the body");
        std::string body(rest.substr(eq + 1));
        std::size_t body_col = first + eq + 2;
        // Continuation lines run until the next block keyword.
        std::size_t lj = li + 1;
        for (; lj < lines.size(); ++lj) {
          std::string_view nxt = lines[lj].second;
          std::size_t f = nxt.find_first_not_of(" \t\r");
          if (f != std::string_view::npos) {
            std::string_view r = nxt.substr(f);
            if (r.starts_with("w ") || r.starts_with("w=") || r.starts_with("curve") || r.starts_with("relation")) break;
          }
          body += '\n';
          body += nxt;
        }
        li = lj - 1;
        blocks.push_back({kind, lineno, body_col, std::move(body)});
        continue;
      }
    }
    // Header tokens.
    std::istringstream ss{std::string(line)};
    std::string tok;
    std::size_t search_from = 0;
    auto col_of = [&](const std::string& t) {
      std::size_t p = raw.find(t, search_from);
      search_from = p == std::string_view::npos ? search_from : p + t.size();
      return (p == std::string_view::npos ? 0 : p) + 1;
    };
    while (ss >> tok) {
      std::size_t col = col_of(tok);
      if (tok == "vars") {
        std::string v;
        while (ss >> v) {
          std::size_t vc = col_of(v);
          if (!detail::is_identifier(v)) throw ParseError("syntax-error", lineno, vc, "bad variable name '" + v + "'");
          ff.vars.push_back(v);
        }
        break;
      }
      auto p = tok.find('=');
      if (p == std::string::npos || p == 0 || p + 1 == tok.size())
        throw ParseError("syntax-error", lineno, col, "expected key=value, got '" + tok + "'");
      std::string key = tok.substr(0, p), val = tok.substr(p + 1);
      try {
        if (key == "n") {
          ff.n = std::stoul(val);
          have_n = true;
        } else if (key == "e") {
          ff.e = static_cast<unsigned>(std::stoul(val));
          have_e = true;
        } else {
          if (!detail::is_identifier(key)) throw ParseError("syntax-error", lineno, col, "bad parameter name '" + key + "'");
          Rational r = parse_rational(val);
          params[key] = r;
          ff.params.emplace_back(key, r);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("syntax-error", lineno, col + p + 1, "bad value '" + val + "'");
      }
    }
  }

  if (!have_n || !have_e) throw ParseError("syntax-error", 1, 1, "missing n= or e= header");
  if (ff.vars.empty()) ff.vars = default_names(ff.n + 1);
  if (ff.vars.size() != ff.n + 1)
    throw ParseError("syntax-error", 1, 1, "expected " + std::to_string(ff.n + 1) + " variables");
  if (ff.n + 1 > kMaxVars) throw ParseError("syntax-error", 1, 1, "too many variables");
  if (blocks.empty()) throw ParseError("syntax-error", lines.size(), 1, "missing 'w =' line");

  for (const auto& b : blocks) {
    detail::ExprParser p(b.body, b.line, b.col, ff.vars, params, b.kind == Block::w);
    if (b.kind == Block::w) {
      auto v = p.parse_all();
      if (v.form.empty()) {
        if (!v.scalar.is_zero()) throw ParseError("syntax-error", b.line, b.col, "w is not a 1-form");
        v.form.assign(ff.n + 1, Polynomial(ff.n + 1));
      }
      for (std::size_t i = 0; i < v.form.size(); ++i)
        if (!v.form[i].is_homogeneous())
          throw ParseError("inhomogeneous-coefficient", b.line, b.col,
                           "coefficient of d" + ff.vars[i] + " is not homogeneous");
      ff.coefficients = std::move(v.form);
    } else {
      auto list = p.parse_list();
      for (const auto& f : list)
        if (!f.is_homogeneous()) throw ParseError("inhomogeneous-coefficient", b.line, b.col, "inhomogeneous polynomial");
      (b.kind == Block::curve ? ff.curve : ff.relation) = std::move(list);
    }
  }
  if (ff.coefficients.empty() && !ff.is_curve()) throw ParseError("syntax-error", 1, 1, "missing 'w =' line");
  return ff;
}

/// Canonical text of a 1-form file; parameters are already substituted.
inline std::string print_form(const FormFile& ff) {
  std::string s = "n=" + std::to_string(ff.n) + " e=" + std::to_string(ff.e) + "\nvars";
  for (const auto& v : ff.vars) s += " " + v;
  s += "\n";
  auto list = [&](const std::vector<Polynomial>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].to_string(ff.vars);
    return out;
  };
  if (ff.is_curve()) {
    s += "curve = " + list(ff.curve) + "\n";
    s += "relation = " + list(ff.relation) + "\n";
    return s;
  }
  s += "w =";
  bool any = false;
  for (std::size_t i = 0; i < ff.coefficients.size(); ++i) {
    if (ff.coefficients[i].is_zero()) continue;
    s += std::string(any ? " + " : " ") + "(" + ff.coefficients[i].to_string(ff.vars) + ")*d" + ff.vars[i];
    any = true;
  }
  if (!any) s += " 0";
  return s + "\n";
}

}  // namespace folab
