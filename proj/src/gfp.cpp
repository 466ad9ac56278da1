#include "hecke/gfp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>

namespace hecke {

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Dense row-major matrix over F_p on raw words; all elimination goes through this.
struct Raw {
  Eigen::Index rows = 0, cols = 0;
  std::uint32_t p = 2;
  std::vector<std::uint32_t> a;
  std::uint32_t* row(Eigen::Index i) { return a.data() + i * cols; }
  std::uint32_t& at(Eigen::Index i, Eigen::Index j) { return a[i * cols + j]; }
};

Raw to_raw(const FpMatrix& m, std::uint32_t p) {
  Raw r{m.rows(), m.cols(), p, std::vector<std::uint32_t>(m.size())};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Fp& x = m(i, j);
      if (!x.is_literal() && x.modulus() != p)
        throw Error(ErrorKind::FieldMismatch, "matrix entry over F_" + std::to_string(x.modulus()) +
                                                   " used over F_" + std::to_string(p));
      r.at(i, j) = x.value() % p;
    }
  return r;
}

FpMatrix from_raw(Raw& r) {
  FpMatrix m(r.rows, r.cols);
  for (Eigen::Index i = 0; i < r.rows; ++i)
    for (Eigen::Index j = 0; j < r.cols; ++j) m(i, j) = Fp(r.at(i, j), r.p);
  return m;
}

// In-place reduced row echelon form; returns pivot columns.
std::vector<Eigen::Index> rref(Raw& m) {
  std::vector<Eigen::Index> pivots;
  const std::uint32_t p = m.p;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols && r < m.rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      std::swap_ranges(m.row(piv), m.row(piv) + m.cols, m.row(r));
    std::uint32_t inv = invmod(m.at(r, c), p);
    std::uint32_t* pr = m.row(r);
    for (Eigen::Index j = c; j < m.cols; ++j) pr[j] = mulmod(pr[j], inv, p);
    for (Eigen::Index i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      std::uint32_t f = m.at(i, c);
      if (!f) continue;
      std::uint32_t nf = p - f;
      std::uint32_t* pi = m.row(i);
      for (Eigen::Index j = c; j < m.cols; ++j)
        if (pr[j]) pi[j] = static_cast<std::uint32_t>((pi[j] + static_cast<std::uint64_t>(nf) * pr[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Fp::Fp(int literal) {
  if (literal < 0) throw Error(ErrorKind::InvalidArgument, "negative literal without modulus");
  v_ = static_cast<std::uint32_t>(literal);
}

Fp::Fp(std::int64_t value, std::uint32_t modulus) : p_(modulus) {
  if (modulus == 0) throw Error(ErrorKind::InvalidArgument, "modulus 0");
  std::int64_t r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  v_ = static_cast<std::uint32_t>(r);
}

std::uint32_t Fp::common(const Fp& a, const Fp& b) {
  if (a.p_ == 0) return b.p_;
  if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
  throw Error(ErrorKind::FieldMismatch,
              "F_" + std::to_string(a.p_) + " vs F_" + std::to_string(b.p_));
}

Fp Fp::inverse() const {
  if (p_ == 0) {
    if (v_ == 1) return *this;
    throw Error(ErrorKind::InvalidArgument, "inverse of literal without modulus");
  }
  return Fp(invmod(v_, p_), p_);
}

Fp Fp::pow(std::uint64_t e) const {
  if (p_ == 0) return Fp(v_ <= 1 ? (e == 0 ? 1 : static_cast<int>(v_)) : 1);
  return Fp(powmod(v_, e, p_), p_);
}

Fp Fp::operator-() const {
  if (p_ == 0) {
    if (v_ == 0) return *this;
    throw Error(ErrorKind::InvalidArgument, "negation of literal without modulus");
  }
  return Fp(v_ == 0 ? 0 : p_ - v_, p_);
}

Fp& Fp::operator+=(const Fp& o) {
  std::uint32_t p = common(*this, o);
  if (p == 0) {
    v_ += o.v_;
    return *this;
  }
  v_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v_ % p) + o.v_ % p) % p);
  p_ = p;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  std::uint32_t p = common(*this, o);
  if (p == 0) return *this += -o;
  std::uint32_t b = o.v_ % p;
  v_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v_ % p) + p - b) % p);
  p_ = p;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  std::uint32_t p = common(*this, o);
  if (p == 0) {
    v_ *= o.v_;
    return *this;
  }
  v_ = mulmod(v_ % p, o.v_ % p, p);
  p_ = p;
  return *this;
}

bool operator==(const Fp& a, const Fp& b) {
  std::uint32_t p = Fp::common(a, b);
  if (p == 0) return a.v_ == b.v_;
  return a.v_ % p == b.v_ % p;
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t prime_of_power(std::uint32_t n) {
  if (n < 2) return 0;
  std::uint32_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

FpMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t p) {
  return FpMatrix::Constant(rows, cols, Fp(0, p));
}

FpMatrix identity_matrix(Eigen::Index n, std::uint32_t p) {
  FpMatrix m = zero_matrix(n, n, p);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Fp(1, p);
  return m;
}

FpVector zero_vector(Eigen::Index n, std::uint32_t p) { return FpVector::Constant(n, Fp(0, p)); }

bool is_zero(const FpMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

bool equal(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

FpMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  FpMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Fp(d(rng), p);
  return m;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

FpMatrix power(const FpMatrix& a, unsigned e) {
  std::uint32_t p = 0;
  for (Eigen::Index i = 0; i < a.size() && !p; ++i) p = a.data()[i].modulus();
  FpMatrix r = p ? identity_matrix(a.rows(), p) : FpMatrix(FpMatrix::Identity(a.rows(), a.rows()));
  FpMatrix b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Echelon row_reduce(const FpMatrix& m, std::uint32_t p) {
  Raw r = to_raw(m, p);
  auto piv = rref(r);
  return {from_raw(r), piv};
}

Eigen::Index rank(const FpMatrix& m, std::uint32_t p) {
  Raw r = to_raw(m, p);
  return static_cast<Eigen::Index>(rref(r).size());
}

FpMatrix nullspace(const FpMatrix& m, std::uint32_t p) {
  Raw r = to_raw(m, p);
  auto piv = rref(r);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : piv) is_pivot[c] = 1;
  Eigen::Index nfree = m.cols() - static_cast<Eigen::Index>(piv.size());
  FpMatrix n = zero_matrix(m.cols(), nfree, p);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    n(f, k) = Fp(1, p);
    for (std::size_t i = 0; i < piv.size(); ++i) {
      std::uint32_t v = r.at(static_cast<Eigen::Index>(i), f);
      if (v) n(piv[i], k) = Fp(p - v, p);
    }
    ++k;
  }
  return n;
}

std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, std::uint32_t p) {
  FpMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Raw r = to_raw(aug, p);
  auto piv = rref(r);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  FpVector x = zero_vector(a.cols(), p);
  for (std::size_t i = 0; i < piv.size(); ++i)
    x(piv[i]) = Fp(r.at(static_cast<Eigen::Index>(i), a.cols()), p);
  return x;
}

FpMatrix column_basis(const FpMatrix& m, std::uint32_t p) {
  Raw r = to_raw(m, p);
  auto piv = rref(r);
  FpMatrix b(m.rows(), static_cast<Eigen::Index>(piv.size()));
  for (std::size_t i = 0; i < piv.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = m.col(piv[i]);
  normalize(b, p);
  return b;
}

std::optional<FpMatrix> inverse(const FpMatrix& m, std::uint32_t p) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) return std::nullopt;
  FpMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity_matrix(n, p);
  Raw r = to_raw(aug, p);
  auto piv = rref(r);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  FpMatrix full = from_raw(r);
  return FpMatrix(full.rightCols(n));
}

std::vector<Fp> minimal_monic_relation(std::span<const FpMatrix> even_powers,
                                       std::span<const FpMatrix> odd_powers, int bound,
                                       std::uint32_t p) {
  if (static_cast<int>(even_powers.size()) <= bound || static_cast<int>(odd_powers.size()) <= bound)
    throw Error(ErrorKind::InvalidArgument, "too few powers for the requested bound");
  // Columns i = 0..d; column i stacks the even equation block (if i even) and the odd one.
  for (int d = 1; d <= bound; ++d) {
    Eigen::Index ne = even_powers[0].size(), no = odd_powers[0].size();
    FpMatrix sys = zero_matrix(ne + no, d, p);
    FpVector rhs = zero_vector(ne + no, p);
    auto column = [&](int i) {
      FpVector c = zero_vector(ne + no, p);
      if (i % 2 == 0)
        c.head(ne) = even_powers[i].reshaped();
      else
        c.tail(no) = odd_powers[i].reshaped();
      return c;
    };
    for (int i = 0; i < d; ++i) sys.col(i) = column(i);
    rhs = -column(d);
    normalize(rhs, p);
    if (auto x = solve(sys, rhs, p)) {
      std::vector<Fp> r(static_cast<std::size_t>(d) + 1);
      for (int i = 0; i < d; ++i) r[i] = (*x)(i);
      r[d] = Fp(1, p);
      return r;
    }
  }
  throw Error(ErrorKind::NoRelationWithinBound, "no monic relation of degree <= " + std::to_string(bound));
}

// ---- F_q ----

namespace {

std::vector<std::uint32_t> builtin_modpoly(std::uint32_t q) {
  switch (q) {
    case 4: return {1, 1, 1};        // X^2 + X + 1
    case 8: return {1, 1, 0, 1};     // X^3 + X + 1
    case 9: return {1, 0, 1};        // X^2 + 1
    case 16: return {1, 1, 0, 0, 1};  // X^4 + X + 1
    case 25: return {2, 0, 1};       // X^2 + 2
    case 27: return {1, 2, 0, 1};    // X^3 + 2X + 1
    default: break;
  }
  if (is_prime(q)) return {0, 1};
  throw Error(ErrorKind::InvalidArgument,
              "no built-in modulus for q = " + std::to_string(q) + "; supply one");
}

}  // namespace

GaloisField::GaloisField(std::uint32_t q) {
  p_ = prime_of_power(q);
  if (!p_) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  modpoly_ = builtin_modpoly(q);
  build();
}

GaloisField::GaloisField(std::uint32_t p, std::vector<std::uint32_t> modpoly)
    : p_(p), modpoly_(std::move(modpoly)) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "characteristic must be prime");
  if (modpoly_.size() < 2 || modpoly_.back() != 1)
    throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  build();
}

void GaloisField::build() {
  n_ = static_cast<std::uint32_t>(modpoly_.size() - 1);
  q_ = 1;
  for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
  if (q_ > 1024) throw Error(ErrorKind::TooLarge, "field tables limited to q <= 1024");
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> d(n_);
    for (std::uint32_t i = 0; i < n_; ++i) d[i] = a % p_, a /= p_;
    return d;
  };
  auto pack = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t a = 0;
    for (std::uint32_t i = n_; i-- > 0;) a = a * p_ + d[i];
    return a;
  };
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<std::uint32_t> dn(n_);
    for (std::uint32_t i = 0; i < n_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = pack(dn);
    for (std::uint32_t b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<std::uint32_t> s(n_);
      for (std::uint32_t i = 0; i < n_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = pack(s);
      std::vector<std::uint32_t> prod(2 * n_, 0);
      for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (std::uint32_t k = 2 * n_; k-- > n_;) {
        std::uint32_t c = prod[k];
        if (!c) continue;
        for (std::uint32_t i = 0; i <= n_; ++i)
          prod[k - n_ + i] = (prod[k - n_ + i] + (p_ - c) * modpoly_[i]) % p_;
      }
      prod.resize(n_);
      mul_[a * q_ + b] = pack(prod);
    }
  }
  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) {
        inv_[a] = b;
        break;
      }
  for (std::uint32_t a = 1; a < q_; ++a)
    if (!inv_[a]) throw Error(ErrorKind::NotIrreducible, "modulus is reducible over F_p");
  log_.assign(q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1, order = 0;
    do {
      x = mul(x, g);
      ++order;
    } while (x != 1);
    if (order == q_ - 1) {
      primitive_ = g;
      break;
    }
  }
  std::uint32_t x = 1;
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    log_[x] = e;
    x = mul(x, primitive_);
  }
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero in F_q");
  return inv_[a];
}

std::uint32_t GaloisField::log(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "log of zero");
  return log_[a];
}

std::shared_ptr<const GaloisField> galois_field(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_shared<GaloisField>(q);
  return slot;
}

Fq::Fq(int literal) {
  if (literal < 0 || literal > 1) throw Error(ErrorKind::InvalidArgument, "F_q literal must be 0 or 1");
  v_ = static_cast<std::uint32_t>(literal);
}

const GaloisField* Fq::common(const Fq& a, const Fq& b) {
  if (!a.f_) return b.f_;
  if (!b.f_ || a.f_ == b.f_) return a.f_;
  if (a.f_->q() == b.f_->q() && a.f_->modpoly() == b.f_->modpoly()) return a.f_;
  throw Error(ErrorKind::FieldMismatch, "F_q elements from different fields");
}

Fq Fq::inverse() const {
  if (!f_) {
    if (v_ == 1) return *this;
    throw Error(ErrorKind::InvalidArgument, "inverse of zero in F_q");
  }
  return Fq(f_->inv(v_), f_);
}

Fq Fq::operator-() const {
  if (!f_) {
    if (v_ == 0) return *this;
    throw Error(ErrorKind::InvalidArgument, "negation of literal without field");
  }
  return Fq(f_->neg(v_), f_);
}

Fq& Fq::operator+=(const Fq& o) {
  const GaloisField* f = common(*this, o);
  if (!f) {
    if (v_ + o.v_ > 1) throw Error(ErrorKind::InvalidArgument, "literal sum without field");
    v_ += o.v_;
    return *this;
  }
  v_ = f->add(v_, o.v_);
  f_ = f;
  return *this;
}

Fq& Fq::operator*=(const Fq& o) {
  const GaloisField* f = common(*this, o);
  if (!f) {
    v_ *= o.v_;
    return *this;
  }
  v_ = f->mul(v_, o.v_);
  f_ = f;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.value(); }

FqMatrix fq_zero(Eigen::Index rows, Eigen::Index cols, const GaloisField& f) {
  return FqMatrix::Constant(rows, cols, Fq(0, &f));
}

FqMatrix fq_identity(Eigen::Index n, const GaloisField& f) {
  FqMatrix m = fq_zero(n, n, f);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Fq(1, &f);
  return m;
}

std::optional<FqMatrix> fq_inverse(const FqMatrix& m, const GaloisField& f) {
  const Eigen::Index n = m.rows();
  FqMatrix a = m, inv = fq_identity(n, f);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    a.row(c).swap(a.row(piv));
    inv.row(c).swap(inv.row(piv));
    Fq s = Fq(f.inv(a(c, c).value()), &f);
    a.row(c) *= s;
    inv.row(c) *= s;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      Fq t = a(i, c);
      a.row(i) -= t * a.row(c);
      inv.row(i) -= t * inv.row(c);
    }
  }
  return inv;
}

std::uint64_t fq_encode(const FqMatrix& m) {
  std::uint64_t code = 0;
  std::uint64_t q = 0;
  for (Eigen::Index i = 0; i < m.size() && !q; ++i)
    if (m.data()[i].field()) q = m.data()[i].field()->q();
  if (!q) q = 2;
  for (Eigen::Index i = m.size(); i-- > 0;) code = code * q + m.data()[i].value();
  return code;
}

}  // namespace hecke
