#pragma once

#include <random>
#include <vector>

#include "hecke/modrep.hpp"

namespace hecke {

// [1]_{f1} + [w]_{fw} in the finite Hecke algebra H(G, P, V), G = GL_2k(F_q).
struct FinHeckeElement {
  FpMatrix f1;
  FpMatrix fw;

  FinHeckeElement& operator+=(const FinHeckeElement& o) {
    f1 += o.f1;
    fw += o.fw;
    return *this;
  }
  friend FinHeckeElement operator+(FinHeckeElement a, const FinHeckeElement& b) { return a += b; }
  friend FinHeckeElement operator*(const Fp& c, const FinHeckeElement& a) { return {c * a.f1, c * a.fw}; }
  friend bool operator==(const FinHeckeElement& a, const FinHeckeElement& b) {
    return equal(a.f1, b.f1) && equal(a.fw, b.fw);
  }
};

FinHeckeElement fin_zero(const CoefficientSystem& cs);
FinHeckeElement fin_unit(const CoefficientSystem& cs);
FinHeckeElement fin_random(const CoefficientSystem& cs, std::mt19937_64& rng);
// Product via the quadratic relation for [w]_f [w]_g.
FinHeckeElement fin_mul(const CoefficientSystem& cs, const FinHeckeElement& a, const FinHeckeElement& b);

// Finite group G = GL_2k(F_q) with its parabolic P (lower-left block zero).
class FiniteParabolic {
 public:
  explicit FiniteParabolic(const CoefficientSystem& cs);

  // Representatives of G/P, one per k-dimensional subspace.
  const std::vector<FqMatrix>& coset_reps() const { return reps_; }
  const FqMatrix& w() const { return w_; }
  bool in_parabolic(const FqMatrix& g) const;
  // Value at x of the P-bi-equivariant function attached to a.
  FpMatrix value(const FinHeckeElement& a, const FqMatrix& x) const;
  // (phi_a * phi_b)(x) = sum over y in G/P of phi_a(y) phi_b(y^-1 x).
  FpMatrix convolve_at(const FinHeckeElement& a, const FinHeckeElement& b, const FqMatrix& x) const;
  FqMatrix random_group_element(std::mt19937_64& rng) const;
  FqMatrix random_parabolic_element(std::mt19937_64& rng) const;
  // Number of left P-cosets in P w P.
  int double_coset_size() const;
  const CoefficientSystem& system() const { return cs_; }

 private:
  CoefficientSystem cs_;
  const GaloisField& f_;
  int k_;
  FqMatrix w_;
  std::vector<FqMatrix> reps_;
  std::uint64_t subspace_key(const FqMatrix& g) const;
};

// Product computed by convolution of functions on G; spot-checks bi-equivariance of the
// result at `checks` random points and throws NotBiEquivariant on a mismatch.
FinHeckeElement fin_convolve_oracle(const FiniteParabolic& fp, const FinHeckeElement& a, const FinHeckeElement& b,
                                    std::mt19937_64& rng, int checks = 4);

}  // namespace hecke
