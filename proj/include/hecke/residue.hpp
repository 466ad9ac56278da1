#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <vector>

#include "hecke/heckealg.hpp"
#include "hecke/modrep.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

// Laurent polynomial over F_q in the uniformizer varpi: exponent -> nonzero coefficient.
struct Laurent {
  std::map<int, std::uint32_t> c;

  bool is_zero() const { return c.empty(); }
  int valuation() const { return c.empty() ? INT_MAX : c.begin()->first; }
  std::uint32_t coeff(int e) const;
  bool operator==(const Laurent&) const = default;
};

// 2k x 2k matrix over F_q((varpi)) whose entries must stay inside the exponent window
// [vmin, vmin + width); leaving it raises WindowExhausted.
class TruncatedMatrix {
 public:
  TruncatedMatrix(int k, const GaloisField& f, int vmin = -8, int width = 16);

  static TruncatedMatrix identity(int k, const GaloisField& f);
  static TruncatedMatrix weyl(const WeylElement& e, int k, const GaloisField& f);
  // (1 X; 0 1) with X = sum_j varpi^(first + j) x_j.
  static TruncatedMatrix upper(const std::vector<FqMatrix>& x, int first, const GaloisField& f);
  // (1 0; Y 1) with Y = sum_j varpi^(first + j) y_j.
  static TruncatedMatrix lower(const std::vector<FqMatrix>& y, int first, const GaloisField& f);

  int k() const { return k_; }
  int size() const { return 2 * k_; }
  const GaloisField& field() const { return *f_; }
  const Laurent& operator()(int i, int j) const { return e_[i * size() + j]; }
  Laurent& at(int i, int j) { return e_[i * size() + j]; }
  void add_term(int i, int j, int exponent, std::uint32_t c);

  // Constant terms of a diagonal block (b = 0 top-left, 1 bottom-right).
  FqMatrix reduce_block(int b) const;
  // Smallest valuation in block (bi, bj).
  int block_valuation(int bi, int bj) const;

  friend TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b);
  bool operator==(const TruncatedMatrix& o) const { return e_ == o.e_; }

 private:
  void check_window(int exponent) const;
  int k_;
  const GaloisField* f_;
  int vmin_, width_;
  std::vector<Laurent> e_;
};

// Per-block lower bounds on valuations; diagonal blocks invertible mod varpi.
struct BlockPattern {
  int v[2][2] = {{0, 0}, {1, 0}};

  bool operator==(const BlockPattern& o) const;
};

bool in_pattern(const TruncatedMatrix& m, const BlockPattern& p);
inline BlockPattern parahoric_pattern() { return {}; }

// P cap eta P eta^-1, computed from the conjugation action on valuations.
BlockPattern p_eta_pattern(const WeylElement& eta);
// The four-bullet table as printed (delta = a_1 - a_(k+1) for eta = v diag(varpi^a)).
BlockPattern printed_pattern(const WeylElement& eta);

// Unipotent representatives of the right cosets P^(eta) \ P.
std::vector<TruncatedMatrix> coset_reps(const WeylElement& eta, int k, const GaloisField& f);

struct OracleResult {
  HeckeElement<ConcreteRing> product;
  std::map<WeylElement, int> admissible;  // admissible pair count per support
};

// [eta]_f [delta]_g by summing rho(k0) f rho(k1) g rho(k2) over admissible pairs.
OracleResult oracle_product(const ConcreteRing& ring, const WeylElement& eta, const WeylElement& delta,
                            const FpMatrix& f, const FpMatrix& g);

}  // namespace hecke
