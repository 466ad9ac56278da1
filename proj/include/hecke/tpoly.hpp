#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/gfp.hpp"
#include "hecke/modrep.hpp"
#include "hecke/polyfp.hpp"

namespace hecke {

// Element of R[T]^tau: coeffs[i] is the coefficient of T^i, and
// T^a * T^b = tau T^(a+b) + T^(a+b+1) when a and b are both odd.
struct TwistedPoly {
  std::vector<Fp> coeffs;
  Fp tau;

  TwistedPoly() = default;
  TwistedPoly(std::vector<Fp> c, Fp t);
  static TwistedPoly monomial(int i, Fp tau);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::uint32_t ell() const { return tau.modulus(); }
  Fp coeff(int i) const;
  bool is_zero() const { return coeffs.empty(); }
  void trim();

  bool operator==(const TwistedPoly& o) const;
};

TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b);
TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b);
TwistedPoly operator*(Fp s, const TwistedPoly& a);
TwistedPoly tp_mul(const TwistedPoly& a, const TwistedPoly& b);

std::string to_string(const TwistedPoly& a);

// Monic generator of the kernel of T^i -> [w^i]^i.
struct CharPoly {
  std::uint32_t ell = 2, q = 2;
  int k = 1;
  std::string rep;
  TwistedPoly poly;

  int degree() const { return poly.degree(); }
  nlohmann::json to_json() const;
};

struct QuotientElement {
  TwistedPoly rep;  // degree < deg of the modulus
  const CharPoly* modulus = nullptr;
};

// Normal form of a modulo the ideal generated by F, by elimination on {T^i * F}.
QuotientElement tp_reduce(const TwistedPoly& a, const CharPoly& F);
// Rank check that 1, T, ..., T^(d-1) stay independent modulo F in a window of the given size.
bool quotient_basis_ok(const CharPoly& F, int window);

// Image in the localization R[X]_(X + tau), written num / (X + tau)^den.
struct LocalFraction {
  poly::Poly num;
  int den = 0;
};

LocalFraction tp_localize(const TwistedPoly& a);
LocalFraction local_mul(const LocalFraction& a, const LocalFraction& b, std::uint32_t tau, std::uint32_t ell);
bool local_equal(const LocalFraction& a, const LocalFraction& b, std::uint32_t tau, std::uint32_t ell);

// Matrices of sum_{i even} r_i (T*)^i and sum_{i odd} r_i (T*)^i.
std::pair<FpMatrix, FpMatrix> substitute_tstar(const CoefficientSystem& cs, const TwistedPoly& r);

CharPoly compute_fpoly(const CoefficientSystem& cs, int degree_bound = 12);

}  // namespace hecke
