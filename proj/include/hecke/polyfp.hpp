#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hecke::poly {

// Dense polynomial over F_p, lowest coefficient first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const Poly& a, const Poly& b, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly scale(const Poly& a, std::uint32_t c, std::uint32_t p);
void divmod(const Poly& a, const Poly& b, std::uint32_t p, Poly& q, Poly& r);
Poly mod(const Poly& a, const Poly& b, std::uint32_t p);
Poly monic(const Poly& a, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p);
// s, t with s a + t b = gcd(a, b) (monic).
Poly ext_gcd(const Poly& a, const Poly& b, std::uint32_t p, Poly& s, Poly& t);

// Distinct monic irreducible factors with multiplicities.
struct Factor {
  Poly f;
  int multiplicity;
};
std::vector<Factor> factor(const Poly& a, std::uint32_t p, std::mt19937_64& rng);

}  // namespace hecke::poly
