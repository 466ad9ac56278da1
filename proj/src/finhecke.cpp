#include "hecke/finhecke.hpp"

#include <algorithm>
#include <set>

namespace hecke {

FinHeckeElement fin_zero(const CoefficientSystem& cs) {
  return {zero_matrix(cs.dim(), cs.dim(), cs.ell), zero_matrix(cs.dim(), cs.dim(), cs.ell)};
}

FinHeckeElement fin_unit(const CoefficientSystem& cs) {
  return {identity_matrix(cs.dim(), cs.ell), zero_matrix(cs.dim(), cs.dim(), cs.ell)};
}

FinHeckeElement fin_random(const CoefficientSystem& cs, std::mt19937_64& rng) {
  return {cs.random_element(0, rng), cs.random_element(1, rng)};
}

FinHeckeElement fin_mul(const CoefficientSystem& cs, const FinHeckeElement& a, const FinHeckeElement& b) {
  FpMatrix ww = a.fw * b.fw;
  FinHeckeElement r{a.f1 * b.f1 + cs.tau * ww, a.f1 * b.fw + a.fw * b.f1 + cs.tstar * ww};
  normalize(r.f1, cs.ell);
  normalize(r.fw, cs.ell);
  return r;
}

namespace {

// Reduced row echelon form of the rows of m (in place), over F_q.
void fq_rref(FqMatrix& m, const GaloisField& f) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(r).swap(m.row(piv));
    Fq s(f.inv(m(r, c).value()), &f);
    m.row(r) *= s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Fq t = m(i, c);
      m.row(i) -= t * m.row(r);
    }
    ++r;
  }
}

bool fq_is_zero(const FqMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

}  // namespace

FiniteParabolic::FiniteParabolic(const CoefficientSystem& cs) : cs_(cs), f_(cs.gl->field()), k_(cs.k) {
  w_ = fq_zero(2 * k_, 2 * k_, f_);
  w_.topRightCorner(k_, k_) = fq_identity(k_, f_);
  w_.bottomLeftCorner(k_, k_) = fq_identity(k_, f_);
  auto big = gl_group(f_.q(), 2 * k_);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < big->order(); ++i) {
    const FqMatrix& g = big->element(i);
    std::uint64_t key = subspace_key(g);
    if (seen.insert(key).second) reps_.push_back(g);
  }
}

std::uint64_t FiniteParabolic::subspace_key(const FqMatrix& g) const {
  FqMatrix span = g.leftCols(k_).transpose();
  fq_rref(span, f_);
  return fq_encode(span);
}

bool FiniteParabolic::in_parabolic(const FqMatrix& g) const { return fq_is_zero(g.bottomLeftCorner(k_, k_)); }

FpMatrix FiniteParabolic::value(const FinHeckeElement& a, const FqMatrix& x) const {
  const GLGroup& gl = *cs_.gl;
  FqMatrix A = x.topLeftCorner(k_, k_), B = x.topRightCorner(k_, k_);
  FqMatrix C = x.bottomLeftCorner(k_, k_), D = x.bottomRightCorner(k_, k_);
  if (fq_is_zero(C)) return cs_.sigma(gl.index_of(A), gl.index_of(D)) * a.f1;
  if (auto ci = fq_inverse(C, f_)) {
    FqMatrix R = B - A * (*ci) * D;
    return a.fw * cs_.sigma(gl.index_of(C), gl.index_of(R));
  }
  return zero_matrix(cs_.dim(), cs_.dim(), cs_.ell);
}

FpMatrix FiniteParabolic::convolve_at(const FinHeckeElement& a, const FinHeckeElement& b, const FqMatrix& x) const {
  FpMatrix s = zero_matrix(cs_.dim(), cs_.dim(), cs_.ell);
  for (const FqMatrix& y : reps_) {
    FpMatrix left = value(a, y);
    if (is_zero(left)) continue;
    FqMatrix yinv = *fq_inverse(y, f_);
    s += left * value(b, FqMatrix(yinv * x));
  }
  return s;
}

FqMatrix FiniteParabolic::random_group_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> d(0, f_.q() - 1);
  for (;;) {
    FqMatrix m(2 * k_, 2 * k_);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Fq(d(rng), &f_);
    if (fq_inverse(m, f_)) return m;
  }
}

FqMatrix FiniteParabolic::random_parabolic_element(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> d(0, f_.q() - 1);
  std::uniform_int_distribution<int> pick(0, cs_.gl->order() - 1);
  FqMatrix m = fq_zero(2 * k_, 2 * k_, f_);
  m.topLeftCorner(k_, k_) = cs_.gl->element(pick(rng));
  m.bottomRightCorner(k_, k_) = cs_.gl->element(pick(rng));
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) m(i, k_ + j) = Fq(d(rng), &f_);
  return m;
}

int FiniteParabolic::double_coset_size() const {
  const GLGroup& gl = *cs_.gl;
  const std::uint32_t q = f_.q();
  std::uint64_t nb = 1;
  for (int i = 0; i < k_ * k_; ++i) nb *= q;
  std::set<std::uint64_t> orbit;
  for (int a = 0; a < gl.order(); ++a)
    for (int d = 0; d < gl.order(); ++d)
      for (std::uint64_t code = 0; code < nb; ++code) {
        FqMatrix p = fq_zero(2 * k_, 2 * k_, f_);
        p.topLeftCorner(k_, k_) = gl.element(a);
        p.bottomRightCorner(k_, k_) = gl.element(d);
        std::uint64_t c = code;
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) {
            p(i, k_ + j) = Fq(static_cast<std::uint32_t>(c % q), &f_);
            c /= q;
          }
        orbit.insert(subspace_key(FqMatrix(p * w_)));
      }
  return static_cast<int>(orbit.size());
}

FinHeckeElement fin_convolve_oracle(const FiniteParabolic& fp, const FinHeckeElement& a, const FinHeckeElement& b,
                                    std::mt19937_64& rng, int checks) {
  const CoefficientSystem& cs = fp.system();
  FqMatrix one = fq_identity(fp.w().rows(), cs.gl->field());
  FinHeckeElement r{fp.convolve_at(a, b, one), fp.convolve_at(a, b, fp.w())};
  for (int i = 0; i < checks; ++i) {
    FqMatrix x;
    if (i % 3 == 0)
      x = fp.random_group_element(rng);
    else if (i % 3 == 1)
      x = fp.random_parabolic_element(rng) * fp.w() * fp.random_parabolic_element(rng);
    else
      x = fp.random_parabolic_element(rng);
    if (!equal(fp.convolve_at(a, b, x), fp.value(r, x)))
      throw Error(ErrorKind::NotBiEquivariant, "convolution disagrees with its values at 1 and w");
  }
  return r;
}

}  // namespace hecke
