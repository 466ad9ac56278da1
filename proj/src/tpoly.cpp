#include "hecke/tpoly.hpp"

#include <algorithm>
#include <sstream>

namespace hecke {

TwistedPoly::TwistedPoly(std::vector<Fp> c, Fp t) : coeffs(std::move(c)), tau(t) {
  if (tau.is_zero()) throw Error(ErrorKind::InvalidArgument, "tau must be non-zero");
  for (Fp& x : coeffs) x = Fp(x.value(), tau.modulus());
  trim();
}

TwistedPoly TwistedPoly::monomial(int i, Fp tau) {
  std::vector<Fp> c(static_cast<std::size_t>(i) + 1, Fp(0, tau.modulus()));
  c[i] = Fp(1, tau.modulus());
  return TwistedPoly(std::move(c), tau);
}

Fp TwistedPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs.size())) return Fp(0, ell());
  return coeffs[i];
}

void TwistedPoly::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

bool TwistedPoly::operator==(const TwistedPoly& o) const { return tau == o.tau && coeffs == o.coeffs; }

namespace {

void check_tau(const TwistedPoly& a, const TwistedPoly& b) {
  if (a.tau != b.tau) throw Error(ErrorKind::TauMismatch, "twisted polynomials with different tau");
}

}  // namespace

TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
  check_tau(a, b);
  std::vector<Fp> c(std::max(a.coeffs.size(), b.coeffs.size()), Fp(0, a.ell()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return TwistedPoly(std::move(c), a.tau);
}

TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) { return a + Fp(-1, a.ell()) * b; }

TwistedPoly operator*(Fp s, const TwistedPoly& a) {
  std::vector<Fp> c = a.coeffs;
  for (Fp& x : c) x *= s;
  return TwistedPoly(std::move(c), a.tau);
}

TwistedPoly tp_mul(const TwistedPoly& a, const TwistedPoly& b) {
  check_tau(a, b);
  if (a.is_zero() || b.is_zero()) return TwistedPoly({}, a.tau);
  std::vector<Fp> c(a.coeffs.size() + b.coeffs.size() + 1, Fp(0, a.ell()));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      Fp x = a.coeffs[i] * b.coeffs[j];
      if (i % 2 == 1 && j % 2 == 1) {
        c[i + j] += a.tau * x;
        c[i + j + 1] += x;
      } else {
        c[i + j] += x;
      }
    }
  }
  return TwistedPoly(std::move(c), a.tau);
}

std::string to_string(const TwistedPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = a.degree(); i >= 0; --i) {
    std::uint32_t c = a.coeffs[i].value();
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "T";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

nlohmann::json CharPoly::to_json() const {
  std::vector<std::uint32_t> c;
  for (const Fp& x : poly.coeffs) c.push_back(x.value());
  return {{"l", ell}, {"q", q}, {"k", k}, {"V", rep}, {"tau", poly.tau.value()}, {"coeffs", c}};
}

namespace {

// Columns: 1, T, ..., T^(d-1), then T^i * F for i = 0..window; rows cover every degree that occurs.
FpMatrix reduction_system(const CharPoly& F, int window, int rows) {
  const int d = F.degree();
  const std::uint32_t p = F.poly.ell();
  FpMatrix m = zero_matrix(rows, d + window + 1, p);
  for (int j = 0; j < d; ++j) m(j, j) = Fp(1, p);
  for (int i = 0; i <= window; ++i) {
    TwistedPoly g = tp_mul(TwistedPoly::monomial(i, F.poly.tau), F.poly);
    for (int e = 0; e <= g.degree(); ++e) m(e, d + i) = g.coeffs[e];
  }
  return m;
}

}  // namespace

QuotientElement tp_reduce(const TwistedPoly& a, const CharPoly& F) {
  const int d = F.degree();
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "modulus of degree < 1");
  check_tau(a, F.poly);
  if (a.degree() < d) return {a, &F};
  const std::uint32_t p = a.ell();
  for (int window = a.degree(); window <= a.degree() + 2 * d + 4; window += d + 1) {
    int rows = window + d + 2;
    FpMatrix m = reduction_system(F, window, rows);
    FpVector rhs = zero_vector(rows, p);
    for (int e = 0; e <= a.degree(); ++e) rhs(e) = a.coeffs[e];
    if (auto x = solve(m, rhs, p)) {
      std::vector<Fp> r(d);
      for (int j = 0; j < d; ++j) r[j] = (*x)(j);
      return {TwistedPoly(std::move(r), a.tau), &F};
    }
  }
  throw Error(ErrorKind::WindowExhausted, "no normal form found for " + to_string(a));
}

bool quotient_basis_ok(const CharPoly& F, int window) {
  const int d = F.degree();
  const std::uint32_t p = F.poly.ell();
  int rows = window + d + 2;
  FpMatrix m = reduction_system(F, window, rows);
  FpMatrix ideal = m.rightCols(window + 1);
  return rank(m, p) == rank(ideal, p) + d;
}

LocalFraction tp_localize(const TwistedPoly& a) {
  const std::uint32_t p = a.ell(), tau = a.tau.value();
  LocalFraction r;
  r.den = std::max(0, a.degree() / 2);
  poly::Poly xt = {tau, 1};
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    poly::Poly term(static_cast<std::size_t>(i) + 1, 0);
    term[i] = a.coeffs[i].value();
    for (int j = i / 2; j < r.den; ++j) term = poly::mul(term, xt, p);
    r.num = poly::add(r.num, term, p);
  }
  return r;
}

LocalFraction local_mul(const LocalFraction& a, const LocalFraction& b, std::uint32_t, std::uint32_t ell) {
  return {poly::mul(a.num, b.num, ell), a.den + b.den};
}

bool local_equal(const LocalFraction& a, const LocalFraction& b, std::uint32_t tau, std::uint32_t ell) {
  poly::Poly xt = {tau % ell, 1};
  poly::Poly l = a.num, r = b.num;
  for (int i = 0; i < b.den; ++i) l = poly::mul(l, xt, ell);
  for (int i = 0; i < a.den; ++i) r = poly::mul(r, xt, ell);
  return l == r;
}

std::pair<FpMatrix, FpMatrix> substitute_tstar(const CoefficientSystem& cs, const TwistedPoly& r) {
  const int n = cs.dim();
  FpMatrix even = zero_matrix(n, n, cs.ell), odd = zero_matrix(n, n, cs.ell);
  FpMatrix pw = identity_matrix(n, cs.ell);
  for (int i = 0; i <= r.degree(); ++i) {
    (i % 2 == 0 ? even : odd) += r.coeffs[i] * pw;
    pw = pw * cs.tstar;
  }
  normalize(even, cs.ell);
  normalize(odd, cs.ell);
  return {even, odd};
}

CharPoly compute_fpoly(const CoefficientSystem& cs, int degree_bound) {
  if (degree_bound < 1) throw Error(ErrorKind::InvalidArgument, "degree bound must be >= 1");
  const std::uint32_t p = cs.ell;
  std::vector<FpMatrix> powers = {identity_matrix(cs.dim(), p)};
  for (int i = 1; i <= degree_bound; ++i) powers.push_back(powers.back() * cs.tstar);
  std::vector<Fp> rel = minimal_monic_relation(powers, powers, degree_bound, p);
  CharPoly F{cs.ell, cs.q, cs.k, cs.label, TwistedPoly(rel, cs.tau)};

  // Every kernel element of degree <= 2d must vanish modulo F.
  const int d = F.degree(), top = 2 * d;
  const Eigen::Index n2 = static_cast<Eigen::Index>(cs.dim()) * cs.dim();
  FpMatrix map = zero_matrix(2 * n2, top + 1, p);
  FpMatrix pw = identity_matrix(cs.dim(), p);
  for (int i = 0; i <= top; ++i) {
    map.col(i).segment((i % 2) * n2, n2) = pw.reshaped();
    pw = pw * cs.tstar;
  }
  FpMatrix ker = nullspace(map, p);
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    std::vector<Fp> v(ker.rows());
    for (Eigen::Index i = 0; i < ker.rows(); ++i) v[i] = ker(i, c);
    if (!tp_reduce(TwistedPoly(v, cs.tau), F).rep.is_zero())
      throw Error(ErrorKind::BasisMismatch, "kernel element not divisible by " + to_string(F.poly));
  }
  return F;
}

}  // namespace hecke
