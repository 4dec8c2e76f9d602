#include <gtest/gtest.h>

#include "support.hpp"

using namespace folab;
using folab::testing::I;
using folab::testing::P;

namespace {

std::vector<Polynomial> gb_of(std::initializer_list<const char*> gens) { return I(gens).groebner_basis(); }

/// Every element of each ideal lies in the other, checked with the GB-free oracle.
void expect_same_ideal_oracle(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.groebner_basis()) EXPECT_TRUE(folab::testing::oracle_member(g, b.generators())) << g.to_string();
  for (const auto& g : b.groebner_basis()) EXPECT_TRUE(folab::testing::oracle_member(g, a.generators())) << g.to_string();
}

}  // namespace

TEST(Buchberger, AlreadyReduced) {
  auto gb = gb_of({"x0", "x1"});
  ASSERT_EQ(gb.size(), 2u);
  EXPECT_EQ(gb[0], P("x0"));
  EXPECT_EQ(gb[1], P("x1"));
}

TEST(Buchberger, TwoQuadricsAgainstOracle) {
  Ideal id = I({"x0^2-x1*x2", "x0*x1-x2^2"});
  const auto& gb = id.groebner_basis();
  EXPECT_TRUE(is_groebner_basis(gb));
  expect_same_ideal_oracle(id, Ideal(4, gb));
  for (const auto& g : gb) EXPECT_EQ(g.leading_coeff(), 1);
}

TEST(Buchberger, CommonFactorGivesSameLeadingIdeal) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto g1 = folab::testing::random_nonzero_homogeneous(rng, 4, 1 + rng() % 2);
    auto g2 = folab::testing::random_nonzero_homogeneous(rng, 4, 1 + rng() % 2);
    Polynomial x0 = P("x0");
    Ideal a(4, {x0 * g1, x0 * g2});
    Ideal b(4, {g1, g2});
    const auto& ga = a.groebner_basis();
    const auto& gb = b.groebner_basis();
    ASSERT_EQ(ga.size(), gb.size());
    for (std::size_t i = 0; i < ga.size(); ++i) EXPECT_EQ(ga[i], x0 * gb[i]);
  }
}

TEST(Buchberger, UnitAndBudget) {
  EXPECT_TRUE(I({"x0", "1"}).is_unit());
  Ideal big = I({"x0^3-x1^2*x2", "x0*x1*x2-x3^3", "x1^3-x0*x3^2"});
  EXPECT_THROW(big.with_budget(Budget{1, 64}).groebner_basis(), BudgetExceeded);
  EXPECT_THROW(big.with_budget(Budget{200000, 4}).groebner_basis(), BudgetExceeded);
  EXPECT_NO_THROW(big.groebner_basis());
}

TEST(NormalForm, Examples) {
  EXPECT_TRUE(I({"x0"}).normal_form(P("x0")).is_zero());
  EXPECT_EQ(I({"x0", "x1"}).normal_form(P("x2")), P("x2"));
  std::mt19937 rng(9);
  Ideal id = I({"x0^2-x1*x2", "x0*x1-x2^2", "x3^2*x1"});
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f(4);
    for (const auto& g : id.generators()) f += g * folab::testing::random_homogeneous(rng, 4, 5 - g.total_degree());
    EXPECT_TRUE(id.normal_form(f).is_zero());
  }
}

TEST(NormalForm, NoTermDivisibleByLeadingTerm) {
  std::mt19937 rng(13);
  Ideal id = I({"x0^2-x1*x2", "x0*x1-x2^2"});
  for (int trial = 0; trial < 20; ++trial) {
    auto r = id.normal_form(folab::testing::random_homogeneous(rng, 4, 4));
    for (const auto& t : r.terms())
      for (const auto& g : id.groebner_basis()) EXPECT_FALSE(g.leading_monomial().divides(t.mono));
  }
}

TEST(IdealOps, QuotientExamples) {
  EXPECT_EQ(quotient(I({"x0^2", "x0*x1"}), I({"x0"})), I({"x0", "x1"}));
  Ideal a = I({"x0^2", "x1*x3"});
  EXPECT_EQ(quotient(a, Ideal::unit(4)), a);
  EXPECT_TRUE(quotient(I({"x0", "x1"}), I({"x0", "x1"})).is_unit());
}

TEST(IdealOps, SaturationExamples) {
  EXPECT_EQ(saturation(I({"x0^2", "x0*x1"}), I({"x0", "x1"})), I({"x0"}));
  Ideal a = I({"x0^2", "x1*x3"});
  EXPECT_EQ(saturation(a, Ideal::unit(4)), a);
  EXPECT_EQ(saturation(I({"x0*x1"}), I({"x0"})), I({"x1"}));
}

TEST(IdealOps, IrrelevantSaturation) {
  EXPECT_EQ(irrelevant_saturation(I({"x0", "x1"})), I({"x0", "x1"}));
  EXPECT_EQ(irrelevant_saturation(I({"x0^2", "x0*x1", "x0*x2", "x0*x3"})), I({"x0"}));
  Ideal m = Ideal::irrelevant(4);
  EXPECT_TRUE(irrelevant_saturation(m * m).is_unit());
}

TEST(IdealOps, IntersectionExamples) {
  EXPECT_EQ(intersection(I({"x0"}), I({"x1"})), I({"x0*x1"}));
  Ideal a = I({"x0^2-x1*x2", "x3*x1"});
  EXPECT_EQ(intersection(a, a), a);
  Ideal skew = intersection(I({"x0", "x1"}), I({"x2", "x3"}));
  EXPECT_EQ(skew, I({"x0*x2", "x0*x3", "x1*x2", "x1*x3"}));
  expect_same_ideal_oracle(skew, I({"x0*x2", "x0*x3", "x1*x2", "x1*x3"}));
}

TEST(IdealOps, RadicalMembership) {
  EXPECT_TRUE(radical_membership(P("x0"), I({"x0^2"})));
  EXPECT_FALSE(radical_membership(P("x1"), I({"x0^2"})));
  EXPECT_TRUE(radical_membership(P("x0+x1"), I({"(x0+x1)^3", "x2"})));
  EXPECT_TRUE(radical_equal(I({"x0^2"}), I({"x0^3"})));
  EXPECT_FALSE(radical_equal(I({"x0"}), I({"x1"})));
}

TEST(IdealOps, PolynomialGcd) {
  EXPECT_EQ(polynomial_gcd(P("x0*x1^2"), P("x0^2*x1+x0*x1*x2")), P("x0*x1"));
  EXPECT_EQ(polynomial_gcd(P("(x0+x1)*(x2-x3)"), P("(x0+x1)*(x2+x3)")), P("x0+x1"));
  EXPECT_TRUE(polynomial_gcd(P("x0"), P("x1")).is_constant());
}

TEST(Hilbert, Examples) {
  auto line = hilbert_data(I({"x0", "x1"}));
  EXPECT_EQ(line.proj_dim(), 1);
  EXPECT_EQ(line.degree, 1);
  auto ci = hilbert_data(I({"x0^2-x1*x2", "x3^3-x0*x1*x2"}));
  EXPECT_EQ(ci.proj_dim(), 1);
  EXPECT_EQ(ci.degree, 6);
  auto cubic = hilbert_data(I({"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}));
  EXPECT_EQ(cubic.degree, 3);
  EXPECT_EQ(cubic.hilbert_polynomial_at(5), 16);  // 3d + 1
  auto unit = hilbert_data(Ideal::unit(4));
  EXPECT_EQ(unit.proj_dim(), -1);
  EXPECT_EQ(unit.degree, 0);
}

TEST(Hilbert, FunctionMatchesDirectCount) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Polynomial> gens;
    unsigned maxdeg = 0;
    for (int k = 0; k < 2 + trial % 3; ++k) {
      unsigned d = 1 + rng() % 3;
      maxdeg = std::max(maxdeg, d);
      gens.push_back(folab::testing::random_nonzero_homogeneous(rng, 4, d, 2, 0.3));
    }
    Ideal id(4, gens);
    auto h = hilbert_data(id);
    for (unsigned d = 0; d <= 2 * maxdeg; ++d)
      EXPECT_EQ(h.hilbert_function(d), folab::testing::oracle_quotient_dim(gens, 4, d)) << "degree " << d;
  }
}

TEST(MinimalGenerators, Examples) {
  auto line = minimal_generators(I({"x0", "x1"}));
  EXPECT_EQ(line.histogram, (std::vector<std::pair<unsigned, std::size_t>>{{1, 2}}));
  auto cubic = minimal_generators(I({"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}));
  EXPECT_EQ(cubic.histogram, (std::vector<std::pair<unsigned, std::size_t>>{{2, 3}}));
  auto m2 = minimal_generators(I({"x0^2", "x0*x1", "x1^2"}));
  EXPECT_EQ(m2.histogram, (std::vector<std::pair<unsigned, std::size_t>>{{2, 3}}));
  // redundant generators are discarded
  auto red = minimal_generators(I({"x0", "x0*x1", "x1^3"}));
  EXPECT_EQ(red.histogram, (std::vector<std::pair<unsigned, std::size_t>>{{1, 1}, {3, 1}}));
}
