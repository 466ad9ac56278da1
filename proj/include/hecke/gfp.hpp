#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

// Element of F_p. A modulus of 0 marks a literal (Eigen's Scalar(0), Scalar(1))
// which adopts the modulus of whatever it is combined with.
class Fp {
 public:
  Fp() = default;
  Fp(int literal);  // NOLINT: Eigen constructs scalars from int
  Fp(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_literal() const { return p_ == 0; }
  bool is_zero() const { return p_ == 0 ? v_ == 0 : v_ % p_ == 0; }

  Fp inverse() const;
  Fp pow(std::uint64_t e) const;

  Fp operator-() const;
  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  static std::uint32_t common(const Fp& a, const Fp& b);
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

bool is_prime(std::uint64_t n);
// Returns p when n = p^e, else 0.
std::uint32_t prime_of_power(std::uint32_t n);

}  // namespace hecke

namespace Eigen {
template <>
struct NumTraits<hecke::Fp> : GenericNumTraits<hecke::Fp> {
  using Real = hecke::Fp;
  using NonInteger = hecke::Fp;
  using Literal = hecke::Fp;
  using Nested = hecke::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline hecke::Fp epsilon() { return hecke::Fp(0); }
  static inline hecke::Fp dummy_precision() { return hecke::Fp(0); }
  static inline hecke::Fp highest() { return hecke::Fp(0); }
  static inline hecke::Fp lowest() { return hecke::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace hecke {

using FpMatrix = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using FpVector = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

FpMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t p);
FpMatrix identity_matrix(Eigen::Index n, std::uint32_t p);
FpVector zero_vector(Eigen::Index n, std::uint32_t p);
bool is_zero(const FpMatrix& m);
bool equal(const FpMatrix& a, const FpMatrix& b);
// Sets the modulus of every literal entry to p.
template <class Derived>
void normalize(Eigen::MatrixBase<Derived>& m, std::uint32_t p) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).is_literal()) m(i, j) = Fp(m(i, j).value(), p);
}
FpMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t p, std::mt19937_64& rng);
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);
FpMatrix power(const FpMatrix& a, unsigned e);

struct Echelon {
  FpMatrix reduced;                   // reduced row echelon form
  std::vector<Eigen::Index> pivots;   // pivot column of each nonzero row
};

Echelon row_reduce(const FpMatrix& m, std::uint32_t p);
Eigen::Index rank(const FpMatrix& m, std::uint32_t p);
// Basis of {x : m x = 0}, one column per basis vector.
FpMatrix nullspace(const FpMatrix& m, std::uint32_t p);
// Some x with a x = b, if any.
std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, std::uint32_t p);
// Basis of the column space of m, as columns of m.
FpMatrix column_basis(const FpMatrix& m, std::uint32_t p);
std::optional<FpMatrix> inverse(const FpMatrix& m, std::uint32_t p);

// Monic r_0 + ... + r_d X^d of least degree with
// sum_{i even} r_i A_i = 0 and sum_{i odd} r_i B_i = 0,
// where A_i = even_powers[i], B_i = odd_powers[i], i = 0..bound.
std::vector<Fp> minimal_monic_relation(std::span<const FpMatrix> even_powers,
                                       std::span<const FpMatrix> odd_powers, int bound,
                                       std::uint32_t p);

// Finite field F_q, q = p^n, with precomputed tables.
class GaloisField {
 public:
  // Uses a built-in modulus for q in {2,3,4,5,8,9} and any prime q.
  explicit GaloisField(std::uint32_t q);
  // modpoly is monic of degree n over F_p, lowest coefficient first.
  GaloisField(std::uint32_t p, std::vector<std::uint32_t> modpoly);

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  const std::vector<std::uint32_t>& modpoly() const { return modpoly_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  // A generator of the multiplicative group.
  std::uint32_t primitive() const { return primitive_; }
  // e with primitive()^e = a, for a != 0.
  std::uint32_t log(std::uint32_t a) const;

 private:
  void build();
  std::uint32_t p_, n_, q_;
  std::vector<std::uint32_t> modpoly_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_, log_;
  std::uint32_t primitive_ = 0;
};

std::shared_ptr<const GaloisField> galois_field(std::uint32_t q);

// Element of F_q; a null field pointer marks a literal 0 or 1.
class Fq {
 public:
  Fq() = default;
  Fq(int literal);  // NOLINT
  Fq(std::uint32_t v, const GaloisField* f) : v_(v), f_(f) {}

  std::uint32_t value() const { return v_; }
  const GaloisField* field() const { return f_; }
  bool is_zero() const { return v_ == 0; }
  Fq inverse() const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o) { return *this += -o; }
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o) { return *this *= o.inverse(); }
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  friend bool operator==(const Fq& a, const Fq& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Fq& a, const Fq& b) { return a.v_ != b.v_; }

 private:
  static const GaloisField* common(const Fq& a, const Fq& b);
  std::uint32_t v_ = 0;
  const GaloisField* f_ = nullptr;
};

}  // namespace hecke

namespace Eigen {
template <>
struct NumTraits<hecke::Fq> : GenericNumTraits<hecke::Fq> {
  using Real = hecke::Fq;
  using NonInteger = hecke::Fq;
  using Literal = hecke::Fq;
  using Nested = hecke::Fq;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static inline hecke::Fq epsilon() { return hecke::Fq(0); }
  static inline hecke::Fq dummy_precision() { return hecke::Fq(0); }
  static inline hecke::Fq highest() { return hecke::Fq(0); }
  static inline hecke::Fq lowest() { return hecke::Fq(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace hecke {

using FqMatrix = Eigen::Matrix<Fq, Eigen::Dynamic, Eigen::Dynamic>;

std::ostream& operator<<(std::ostream& os, const Fq& x);

FqMatrix fq_zero(Eigen::Index rows, Eigen::Index cols, const GaloisField& f);
FqMatrix fq_identity(Eigen::Index n, const GaloisField& f);
std::optional<FqMatrix> fq_inverse(const FqMatrix& m, const GaloisField& f);
// Base-q digits of the entries, column-major.
std::uint64_t fq_encode(const FqMatrix& m);

}  // namespace hecke
