#include "hecke/residue.hpp"

#include <algorithm>

namespace hecke {

std::uint32_t Laurent::coeff(int e) const {
  auto it = c.find(e);
  return it == c.end() ? 0 : it->second;
}

TruncatedMatrix::TruncatedMatrix(int k, const GaloisField& f, int vmin, int width)
    : k_(k), f_(&f), vmin_(vmin), width_(width), e_(static_cast<std::size_t>(4 * k * k)) {}

void TruncatedMatrix::check_window(int exponent) const {
  if (exponent < vmin_ || exponent >= vmin_ + width_)
    throw Error(ErrorKind::WindowExhausted, "exponent " + std::to_string(exponent) + " outside the valuation window");
}

void TruncatedMatrix::add_term(int i, int j, int exponent, std::uint32_t c) {
  if (c == 0) return;
  check_window(exponent);
  Laurent& x = at(i, j);
  std::uint32_t s = f_->add(x.coeff(exponent), c);
  if (s == 0)
    x.c.erase(exponent);
  else
    x.c[exponent] = s;
}

TruncatedMatrix TruncatedMatrix::identity(int k, const GaloisField& f) {
  TruncatedMatrix m(k, f);
  for (int i = 0; i < 2 * k; ++i) m.add_term(i, i, 0, 1);
  return m;
}

TruncatedMatrix TruncatedMatrix::weyl(const WeylElement& e, int k, const GaloisField& f) {
  TruncatedMatrix m(k, f);
  for (int i = 0; i < k; ++i) {
    if (!e.w) {
      m.add_term(i, i, e.x, 1);
      m.add_term(k + i, k + i, e.y, 1);
    } else {
      m.add_term(i, k + i, e.x, 1);
      m.add_term(k + i, i, e.y, 1);
    }
  }
  return m;
}

TruncatedMatrix TruncatedMatrix::upper(const std::vector<FqMatrix>& x, int first, const GaloisField& f) {
  const int k = x.empty() ? 1 : static_cast<int>(x[0].rows());
  TruncatedMatrix m = identity(k, f);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m.add_term(r, k + c, first + static_cast<int>(j), x[j](r, c).value());
  return m;
}

TruncatedMatrix TruncatedMatrix::lower(const std::vector<FqMatrix>& y, int first, const GaloisField& f) {
  const int k = y.empty() ? 1 : static_cast<int>(y[0].rows());
  TruncatedMatrix m = identity(k, f);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m.add_term(k + r, c, first + static_cast<int>(j), y[j](r, c).value());
  return m;
}

TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  const GaloisField& f = *a.f_;
  TruncatedMatrix r(a.k_, f, std::min(a.vmin_, b.vmin_), std::max(a.width_, b.width_));
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const Laurent& x = a(i, l);
      if (x.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const Laurent& y = b(l, j);
        for (const auto& [ex, cx] : x.c)
          for (const auto& [ey, cy] : y.c) r.add_term(i, j, ex + ey, f.mul(cx, cy));
      }
    }
  return r;
}

FqMatrix TruncatedMatrix::reduce_block(int b) const {
  FqMatrix m = fq_zero(k_, k_, *f_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) m(i, j) = Fq((*this)(b * k_ + i, b * k_ + j).coeff(0), f_);
  return m;
}

int TruncatedMatrix::block_valuation(int bi, int bj) const {
  int v = INT_MAX;
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) v = std::min(v, (*this)(bi * k_ + i, bj * k_ + j).valuation());
  return v;
}

bool BlockPattern::operator==(const BlockPattern& o) const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (v[i][j] != o.v[i][j]) return false;
  return true;
}

bool in_pattern(const TruncatedMatrix& m, const BlockPattern& p) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (m.block_valuation(i, j) < p.v[i][j]) return false;
  for (int b = 0; b < 2; ++b)
    if (p.v[b][b] == 0 && !fq_inverse(m.reduce_block(b), m.field())) return false;
  return true;
}

BlockPattern p_eta_pattern(const WeylElement& eta) {
  // (eta m eta^-1)_{I,J} = varpi^(e_I - e_J) m_{pi(I), pi(J)}
  const BlockPattern P = parahoric_pattern();
  const int e[2] = {eta.x, eta.y};
  const int pi[2] = {eta.w ? 1 : 0, eta.w ? 0 : 1};
  BlockPattern r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.v[i][j] = std::max(P.v[i][j], P.v[pi[i]][pi[j]] + e[i] - e[j]);
  return r;
}

BlockPattern printed_pattern(const WeylElement& eta) {
  // eta = v diag(varpi^a1, varpi^a2); for v = w the matrix (0 varpi^x; varpi^y 0) has a1 = y, a2 = x
  const int delta = eta.w ? eta.y - eta.x : eta.x - eta.y;
  BlockPattern r;
  if (!eta.w && delta >= 0) {
    r.v[0][1] = delta;
    r.v[1][0] = 1;
  } else if (!eta.w) {
    r.v[0][1] = 0;
    r.v[1][0] = 2 - delta;  // varpi^(1 - delta) P
  } else if (delta <= 0) {
    r.v[0][1] = 1 - delta;
    r.v[1][0] = 1;
  } else {
    r.v[0][1] = 0;
    r.v[1][0] = delta;
  }
  return r;
}

namespace {

// All k x k matrices over F_q, in a fixed order.
std::vector<FqMatrix> all_matrices(int k, const GaloisField& f) {
  std::uint64_t total = 1;
  for (int i = 0; i < k * k; ++i) total *= f.q();
  std::vector<FqMatrix> r;
  r.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    FqMatrix m(k, k);
    std::uint64_t c = code;
    for (int i = 0; i < k * k; ++i) {
      m.data()[i] = Fq(static_cast<std::uint32_t>(c % f.q()), &f);
      c /= f.q();
    }
    r.push_back(m);
  }
  return r;
}

TruncatedMatrix unipotent_inverse(const TruncatedMatrix& m) {
  TruncatedMatrix r = TruncatedMatrix::identity(m.k(), m.field());
  const int k = m.k();
  for (int i = 0; i < 2 * k; ++i)
    for (int j = 0; j < 2 * k; ++j) {
      if ((i < k) == (j < k)) continue;
      for (const auto& [e, c] : m(i, j).c) r.add_term(i, j, e, m.field().neg(c));
    }
  return r;
}

}  // namespace

std::vector<TruncatedMatrix> coset_reps(const WeylElement& eta, int k, const GaloisField& f) {
  const BlockPattern P = parahoric_pattern(), Q = p_eta_pattern(eta);
  const int up = Q.v[0][1] - P.v[0][1], low = Q.v[1][0] - P.v[1][0];
  if (up > 0 && low > 0) throw Error(ErrorKind::GapTooLarge, "gaps in both off-diagonal blocks");
  const int gap = std::max(up, low);
  if (gap > 2) throw Error(ErrorKind::GapTooLarge, "valuation gap " + std::to_string(gap) + " exceeds 2");
  if (gap == 0) return {TruncatedMatrix::identity(k, f)};
  const auto mats = all_matrices(k, f);
  std::vector<TruncatedMatrix> reps;
  std::vector<std::size_t> idx(gap, 0);
  for (;;) {
    std::vector<FqMatrix> parts;
    for (std::size_t i : idx) parts.push_back(mats[i]);
    reps.push_back(up > 0 ? TruncatedMatrix::upper(parts, P.v[0][1], f) : TruncatedMatrix::lower(parts, P.v[1][0], f));
    int pos = 0;
    while (pos < gap && ++idx[pos] == mats.size()) idx[pos++] = 0;
    if (pos == gap) break;
  }
  return reps;
}

OracleResult oracle_product(const ConcreteRing& ring, const WeylElement& eta, const WeylElement& delta,
                            const FpMatrix& f, const FpMatrix& g) {
  const CoefficientSystem& cs = ring.system();
  const GaloisField& F = cs.gl->field();
  const int k = cs.k;
  const auto reps1 = coset_reps(inverse(eta), k, F), reps2 = coset_reps(inverse(delta), k, F);
  const TruncatedMatrix eta_inv = TruncatedMatrix::weyl(inverse(eta), k, F);
  const TruncatedMatrix delta_inv = TruncatedMatrix::weyl(inverse(delta), k, F);
  auto rho = [&](const TruncatedMatrix& m) -> const FpMatrix& {
    return cs.sigma(cs.gl->index_of(m.reduce_block(0)), cs.gl->index_of(m.reduce_block(1)));
  };
  const int lo = std::min(eta.x, eta.y) + std::min(delta.x, delta.y) - 1;
  const int hi = std::max(eta.x, eta.y) + std::max(delta.x, delta.y) + 1;
  std::vector<std::pair<WeylElement, TruncatedMatrix>> candidates;
  for (int x = lo; x <= hi; ++x)
    for (int y = lo; y <= hi; ++y)
      for (bool fl : {false, true}) {
        WeylElement e{x, y, fl};
        candidates.emplace_back(e, TruncatedMatrix::weyl(e, k, F));
      }
  const BlockPattern P = parahoric_pattern();
  std::map<WeylElement, FpMatrix> h;
  OracleResult out;
  for (const auto& k1 : reps1) {
    const TruncatedMatrix a = unipotent_inverse(k1) * eta_inv;
    const FpMatrix fk1 = f * rho(k1);
    for (const auto& k2 : reps2) {
      const TruncatedMatrix m = unipotent_inverse(k2) * delta_inv * a;
      for (const auto& [e, em] : candidates) {
        TruncatedMatrix k0 = em * m;
        if (!in_pattern(k0, P)) continue;
        FpMatrix term = rho(k0) * fk1 * g * rho(k2);
        auto it = h.find(e);
        if (it == h.end())
          h.emplace(e, term);
        else
          it->second += term;
        ++out.admissible[e];
      }
    }
  }
  for (auto& [e, c] : h) {
    normalize(c, cs.ell);
    if (!is_zero(c)) out.product.terms.emplace(e, c);
  }
  return out;
}

}  // namespace hecke
