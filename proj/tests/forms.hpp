#pragma once

#include "support.hpp"

namespace folab::testing {

/// Random homogeneous p-form on 4 variables with coefficient degree k.
inline PForm random_pform(std::mt19937& rng, std::size_t nvars, unsigned p, unsigned k, double density = 0.4) {
  PForm a(nvars, p);
  std::bernoulli_distribution keep(0.7);
  for (PForm::Mask m = 0; m < (PForm::Mask{1} << nvars); ++m) {
    if (static_cast<unsigned>(std::popcount(m)) != p || !keep(rng)) continue;
    a.add_term(m, random_homogeneous(rng, nvars, k, 3, density));
  }
  return a;
}

inline VectorField random_field(std::mt19937& rng, std::size_t nvars, unsigned k) {
  VectorField x;
  for (std::size_t i = 0; i < nvars; ++i) x.coefficients.push_back(random_homogeneous(rng, nvars, k, 3, 0.5));
  return x;
}

/// i_R(theta) for a random 2-form theta: always satisfies i_R w = 0, rarely integrable.
inline std::vector<Polynomial> random_euler_form(std::mt19937& rng, unsigned k) {
  PForm theta = random_pform(rng, 4, 2, k, 0.5);
  PForm w = contract(VectorField::radial(4), theta);
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < 4; ++i) c.push_back(w.coefficient(PForm::Mask{1} << i));
  return c;
}

inline std::vector<Polynomial> coeffs(std::initializer_list<const char*> cs, std::size_t nvars = 4) {
  std::vector<Polynomial> out;
  for (const char* s : cs) out.push_back(P(s, nvars));
  return out;
}

/// (x+(1+t)y)z dx - xz dy - x(x+ty) dz in coordinates x0..x3, with x3 absent.
inline ProjectiveForm omega_t(int t) {
  std::string a = "(x0+" + std::to_string(1 + t) + "*x1)*x2";
  std::string c = "-x0*(x0+" + std::to_string(t) + "*x1)";
  return validate(3, 3, coeffs({a.c_str(), "-x0*x2", c.c_str(), "0"}));
}

/// The degree-2 example with four Kupka lines; l1 + l2 + l3 = 0.
inline ProjectiveForm omega_prime(int l1 = 1, int l2 = 2, int l3 = -3) {
  auto s = [](int v) { return "(" + std::to_string(v) + ")"; };
  std::string a1 = s(l1) + "*x2*x3^2", a2 = s(l2) + "*x1*x3^2", a3 = "x0*x1*x2+" + s(l3) + "*x1*x2*x3";
  return validate(3, 4, coeffs({"-x1*x2*x3", a1.c_str(), a2.c_str(), a3.c_str()}));
}

/// The degree-3 example with six lines; l0 = -(l1 + l2 + l3).
inline std::vector<Polynomial> omega_big_coefficients(int l0, int l1, int l2, int l3) {
  auto s = [](int v) { return "(" + std::to_string(v) + ")"; };
  std::string a0 = s(l0) + "*x1*x2*x3^2-x0*x1*x2*x3", a1 = s(l1) + "*x0*x2*x3^2", a2 = s(l2) + "*x0*x1*x3^2",
              a3 = "x0^2*x1*x2+" + s(l3) + "*x0*x1*x2*x3";
  return coeffs({a0.c_str(), a1.c_str(), a2.c_str(), a3.c_str()});
}

inline ProjectiveForm omega_big() { return validate(3, 5, omega_big_coefficients(-3, 1, 1, 1)); }

inline ProjectiveForm line_form() { return validate(3, 2, coeffs({"-x1", "x0", "0", "0"})); }

inline ProjectiveForm contact_form() { return validate(3, 2, coeffs({"-x1", "x0", "-x3", "x2"})); }

}  // namespace folab::testing
