#include "hecke/modrep.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>

#include "hecke/polyfp.hpp"

namespace hecke {

// ---- groups ----

FiniteGroup::FiniteGroup(std::vector<int> table, int order, std::string label)
    : order_(order), table_(std::move(table)), label_(std::move(label)) {
  if (static_cast<int>(table_.size()) != order * order)
    throw Error(ErrorKind::InvalidArgument, "group table has wrong size");
  inv_.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (table_[a * order + b] == 0) inv_[a] = b;
  for (int a = 0; a < order; ++a) {
    if (inv_[a] < 0) throw Error(ErrorKind::InvalidArgument, "group table: element without inverse");
    if (table_[a] != a || table_[a * order] != a)
      throw Error(ErrorKind::InvalidArgument, "group table: element 0 is not the identity");
  }
  find_generators();
}

int FiniteGroup::mul(int a, int b) const {
  if (left_) {
    int n = right_->order();
    return left_->mul(a / n, b / n) * n + right_->mul(a % n, b % n);
  }
  return table_[a * order_ + b];
}

int FiniteGroup::inv(int a) const {
  if (left_) {
    int n = right_->order();
    return left_->inv(a / n) * n + right_->inv(a % n);
  }
  return inv_[a];
}

void FiniteGroup::find_generators() {
  std::vector<char> in(order_, 0);
  in[0] = 1;
  int covered = 1;
  for (int g = 1; g < order_ && covered < order_; ++g) {
    if (in[g]) continue;
    generators_.push_back(g);
    // closure under right multiplication by the generators
    std::deque<int> queue;
    for (int a = 0; a < order_; ++a)
      if (in[a]) queue.push_back(a);
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int s : generators_) {
        int b = mul(a, s);
        if (!in[b]) {
          in[b] = 1;
          ++covered;
          queue.push_back(b);
        }
      }
    }
  }
  // the trivial group is generated by its identity
  if (generators_.empty()) generators_.push_back(0);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::product(std::shared_ptr<const FiniteGroup> a,
                                                        std::shared_ptr<const FiniteGroup> b) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->order_ = a->order() * b->order();
  g->label_ = a->label() + " x " + b->label();
  g->left_ = a;
  g->right_ = b;
  for (int s : a->generators()) g->generators_.push_back(g->pair(s, 0));
  for (int s : b->generators()) g->generators_.push_back(g->pair(0, s));
  std::erase(g->generators_, 0);
  if (g->generators_.empty()) g->generators_.push_back(0);
  return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int n) {
  std::vector<int> t(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return std::make_shared<FiniteGroup>(std::move(t), n, "C" + std::to_string(n));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a * 6 + b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return std::make_shared<FiniteGroup>(std::move(t), 6, "S3");
}

GLGroup::GLGroup(std::shared_ptr<const GaloisField> field, int k) : field_(std::move(field)), k_(k) {
  const std::uint32_t q = field_->q();
  std::uint64_t total = 1;
  for (int i = 0; i < k * k; ++i) total *= q;
  if (total > (1u << 20)) throw Error(ErrorKind::TooLarge, "GL_k(F_q) too large to enumerate");
  const GaloisField* f = field_.get();
  elements_.push_back(fq_identity(k, *f));
  for (std::uint64_t code = 0; code < total; ++code) {
    FqMatrix m(k, k);
    std::uint64_t c = code;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = Fq(static_cast<std::uint32_t>(c % q), f);
      c /= q;
    }
    if (m == elements_[0]) continue;
    if (fq_inverse(m, *f)) elements_.push_back(m);
  }
  for (int i = 0; i < order(); ++i) index_[fq_encode(elements_[i])] = i;
  neg_.resize(order());
  for (int i = 0; i < order(); ++i) neg_[i] = index_of(-elements_[i]);
  if (order() <= 4096) {
    int n = order();
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = index_of(elements_[a] * elements_[b]);
    group_ = std::make_shared<FiniteGroup>(std::move(t), n,
                                           "GL" + std::to_string(k) + "(" + std::to_string(q) + ")");
  }
}

int GLGroup::index_of(const FqMatrix& m) const {
  auto it = index_.find(fq_encode(m));
  if (it == index_.end()) throw Error(ErrorKind::InvalidArgument, "matrix is not in GL_k(F_q)");
  return it->second;
}

std::shared_ptr<const GLGroup> gl_group(std::uint32_t q, int k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const GLGroup>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{q, k}];
  if (!slot) slot = std::make_shared<GLGroup>(galois_field(q), k);
  return slot;
}

// ---- representations ----

std::vector<FpMatrix> Representation::generator_images() const {
  std::vector<FpMatrix> out;
  for (int g : group->generators()) out.push_back(mats[g]);
  return out;
}

Representation from_generators(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell,
                               const std::vector<FpMatrix>& gens, std::string label) {
  const auto& gi = group->generators();
  if (gens.size() != gi.size()) throw Error(ErrorKind::InvalidArgument, "generator count mismatch");
  int dim = gens.empty() ? 1 : static_cast<int>(gens[0].rows());
  Representation r{group, ell, dim, std::vector<FpMatrix>(group->order()), {}, std::move(label)};
  std::vector<char> seen(group->order(), 0);
  r.mats[0] = identity_matrix(dim, ell);
  seen[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gi.size(); ++i) {
      int b = group->mul(a, gi[i]);
      FpMatrix m = r.mats[a] * gens[i];
      if (!seen[b]) {
        seen[b] = 1;
        r.mats[b] = std::move(m);
        queue.push_back(b);
      } else if (!equal(r.mats[b], m)) {
        throw Error(ErrorKind::InvalidArgument, "generator images do not define a representation");
      }
    }
  }
  return r;
}

Representation regular_representation(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell) {
  int n = group->order();
  std::vector<FpMatrix> gens;
  for (int g : group->generators()) {
    FpMatrix m = zero_matrix(n, n, ell);
    for (int h = 0; h < n; ++h) m(group->mul(g, h), h) = Fp(1, ell);
    gens.push_back(m);
  }
  return from_generators(group, ell, gens, "regular");
}

Representation trivial_representation(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell) {
  std::vector<FpMatrix> gens(group->generators().size(), identity_matrix(1, ell));
  return from_generators(group, ell, gens, "trivial");
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.group != b.group || a.ell != b.ell) throw Error(ErrorKind::InvalidArgument, "direct sum of unrelated representations");
  Representation r{a.group, a.ell, a.dim + b.dim, {}, {}, a.label + " + " + b.label};
  for (int g = 0; g < a.group->order(); ++g) {
    FpMatrix m = zero_matrix(r.dim, r.dim, a.ell);
    m.topLeftCorner(a.dim, a.dim) = a.mats[g];
    m.bottomRightCorner(b.dim, b.dim) = b.mats[g];
    r.mats.push_back(std::move(m));
  }
  auto blocks = [](const Representation& x) { return x.blocks.empty() ? std::vector<int>{x.dim} : x.blocks; };
  r.blocks = blocks(a);
  for (int d : blocks(b)) r.blocks.push_back(d);
  return r;
}

Representation dual(const Representation& a) {
  Representation r{a.group, a.ell, a.dim, {}, a.blocks, a.label + "*"};
  for (int g = 0; g < a.group->order(); ++g) r.mats.push_back(a.mats[a.group->inv(g)].transpose());
  return r;
}

Representation outer_tensor(const Representation& a, const Representation& b) {
  if (a.ell != b.ell) throw Error(ErrorKind::FieldMismatch, "outer tensor over different fields");
  auto g = FiniteGroup::product(a.group, b.group);
  Representation r{g, a.ell, a.dim * b.dim, {}, {}, "(" + a.label + ") # (" + b.label + ")"};
  r.mats.reserve(g->order());
  for (int x = 0; x < a.group->order(); ++x)
    for (int y = 0; y < b.group->order(); ++y) r.mats.push_back(kronecker(a.mats[x], b.mats[y]));
  return r;
}

bool is_homomorphism(const Representation& r) {
  for (int a = 0; a < r.group->order(); ++a)
    for (int b = 0; b < r.group->order(); ++b)
      if (!equal(r.mats[r.group->mul(a, b)], r.mats[a] * r.mats[b])) return false;
  return true;
}

int character_count(std::uint32_t q, std::uint32_t ell) { return static_cast<int>(std::gcd(q - 1, ell - 1)); }

Representation character(std::shared_ptr<const GLGroup> gl1, std::uint32_t ell, int index) {
  if (gl1->k() != 1) throw Error(ErrorKind::InvalidArgument, "characters are defined on GL_1");
  const std::uint32_t q = gl1->field().q();
  int m = character_count(q, ell);
  if (index < 0 || index >= m)
    throw Error(ErrorKind::InvalidArgument, "character index out of range (" + std::to_string(m) + " characters)");
  // zeta of order m in F_ell^x
  Fp zeta(1, ell);
  for (std::uint32_t r = 1; r < ell; ++r) {
    Fp c(r, ell);
    bool primitive = true;
    for (std::uint32_t e = 1; e < ell - 1; ++e)
      if (c.pow(e) == Fp(1, ell)) primitive = false;
    if (primitive || ell == 2) {
      zeta = c.pow((ell - 1) / m);
      break;
    }
  }
  Representation r{gl1->group(), ell, 1, {}, {}, "chi" + std::to_string(index)};
  for (int g = 0; g < gl1->order(); ++g) {
    std::uint32_t e = gl1->field().log(gl1->element(g)(0, 0).value());
    r.mats.push_back(FpMatrix::Constant(1, 1, zeta.pow(static_cast<std::uint64_t>(index) * e)));
  }
  return r;
}

std::vector<FpMatrix> hom_space(const std::vector<FpMatrix>& a_gens, const std::vector<FpMatrix>& b_gens,
                                std::uint32_t ell) {
  if (a_gens.empty()) throw Error(ErrorKind::InvalidArgument, "hom_space needs generators");
  const Eigen::Index da = a_gens[0].rows(), db = b_gens[0].rows();
  const Eigen::Index n = da * db;
  FpMatrix sys = zero_matrix(n * static_cast<Eigen::Index>(a_gens.size()), n, ell);
  FpMatrix ia = identity_matrix(da, ell), ib = identity_matrix(db, ell);
  for (std::size_t g = 0; g < a_gens.size(); ++g) {
    FpMatrix at = a_gens[g].transpose();
    sys.middleRows(static_cast<Eigen::Index>(g) * n, n) = kronecker(at, ib) - kronecker(ia, b_gens[g]);
  }
  FpMatrix ns = nullspace(sys, ell);
  std::vector<FpMatrix> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) out.push_back(ns.col(c).reshaped(db, da));
  return out;
}

bool is_isomorphic(const Representation& a, const Representation& b, std::mt19937_64& rng) {
  if (a.dim != b.dim || a.ell != b.ell) return false;
  auto homs = hom_space(a.generator_images(), b.generator_images(), a.ell);
  if (homs.empty()) return false;
  std::uniform_int_distribution<std::uint32_t> d(0, a.ell - 1);
  for (int trial = 0; trial < 32; ++trial) {
    FpMatrix x = zero_matrix(a.dim, a.dim, a.ell);
    for (auto& h : homs) x += Fp(d(rng), a.ell) * h;
    if (rank(x, a.ell) == a.dim) return true;
  }
  return false;
}

// ---- submodules ----

namespace {

// Incrementally echelonised span of vectors.
class Span {
 public:
  Span(int dim, std::uint32_t p) : dim_(dim), p_(p) {}
  // Reduces v against the span; adds it if new. Returns true if added.
  bool add(const FpVector& v) {
    FpVector r = v;
    normalize(r, p_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Fp c = r(pivots_[i]);
      if (!c.is_zero()) r -= c * rows_[i];
    }
    int piv = -1;
    for (int j = 0; j < dim_; ++j)
      if (!r(j).is_zero()) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    r *= r(piv).inverse();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Fp c = rows_[i](piv);
      if (!c.is_zero()) rows_[i] -= c * r;
    }
    rows_.push_back(r);
    pivots_.push_back(piv);
    return true;
  }
  int size() const { return static_cast<int>(rows_.size()); }
  FpMatrix basis() const {
    FpMatrix b = zero_matrix(dim_, size(), p_);
    for (int i = 0; i < size(); ++i) b.col(i) = rows_[i];
    return b;
  }

 private:
  int dim_;
  std::uint32_t p_;
  std::vector<FpVector> rows_;
  std::vector<int> pivots_;
};

FpMatrix spin_with(const std::vector<FpMatrix>& gens, int dim, std::uint32_t p, const FpMatrix& v) {
  Span span(dim, p);
  std::deque<FpVector> queue;
  for (Eigen::Index c = 0; c < v.cols(); ++c)
    if (span.add(v.col(c))) queue.push_back(v.col(c));
  while (!queue.empty() && span.size() < dim) {
    FpVector x = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      FpVector y = g * x;
      if (span.add(y)) queue.push_back(y);
    }
  }
  return span.basis();
}

FpMatrix random_algebra_element(const GenModule& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coef(0, m.ell - 1);
  std::uniform_int_distribution<std::size_t> pick(0, m.gens.size() - 1);
  FpMatrix theta = Fp(coef(rng), m.ell) * identity_matrix(m.dim, m.ell);
  FpMatrix word = identity_matrix(m.dim, m.ell);
  for (int i = 0; i < 6; ++i) {
    word = word * m.gens[pick(rng)];
    theta += Fp(coef(rng), m.ell) * word;
  }
  return theta;
}

// Nonzero vectors of the column span of n, one per line.
std::vector<FpVector> projective_points(const FpMatrix& n, std::uint32_t p) {
  std::vector<FpVector> out;
  const Eigen::Index k = n.cols();
  std::uint64_t total = 1;
  for (Eigen::Index i = 0; i < k; ++i) total *= p;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<std::uint32_t> c(k);
    std::uint64_t x = code;
    for (Eigen::Index i = 0; i < k; ++i) c[i] = static_cast<std::uint32_t>(x % p), x /= p;
    // leading (highest index) nonzero coefficient is 1
    Eigen::Index lead = k - 1;
    while (c[lead] == 0) --lead;
    if (c[lead] != 1) continue;
    FpVector v = zero_vector(n.rows(), p);
    for (Eigen::Index i = 0; i < k; ++i)
      if (c[i]) v += Fp(c[i], p) * n.col(i);
    out.push_back(v);
  }
  return out;
}

// Change of basis putting a submodule first: returns (sub gens, quotient gens).
std::pair<GenModule, GenModule> split(const GenModule& m, const FpMatrix& sub) {
  const std::uint32_t p = m.ell;
  const int s = static_cast<int>(sub.cols());
  Echelon e = row_reduce(sub.transpose(), p);
  std::vector<char> used(m.dim, 0);
  for (auto c : e.pivots) used[c] = 1;
  FpMatrix t = zero_matrix(m.dim, m.dim, p);
  t.leftCols(s) = sub;
  int col = s;
  for (int j = 0; j < m.dim; ++j)
    if (!used[j]) t(j, col++) = Fp(1, p);
  FpMatrix ti = *inverse(t, p);
  GenModule a{p, s, {}}, b{p, m.dim - s, {}};
  for (auto& g : m.gens) {
    FpMatrix c = ti * g * t;
    a.gens.push_back(c.topLeftCorner(s, s));
    b.gens.push_back(c.bottomRightCorner(m.dim - s, m.dim - s));
  }
  return {a, b};
}

}  // namespace

FpMatrix spin(const GenModule& m, const FpMatrix& v) { return spin_with(m.gens, m.dim, m.ell, v); }

std::optional<FpMatrix> proper_submodule(const GenModule& m, std::mt19937_64& rng) {
  if (m.dim <= 1) return std::nullopt;
  const std::uint32_t p = m.ell;
  std::vector<FpMatrix> transposes;
  for (auto& g : m.gens) transposes.push_back(g.transpose());
  for (int attempt = 0; attempt < 400; ++attempt) {
    FpMatrix theta = random_algebra_element(m, rng);
    FpMatrix n = nullspace(theta, p);
    if (n.cols() == 0) continue;
    std::uint64_t points = 1;
    for (Eigen::Index i = 0; i < n.cols(); ++i) points *= p;
    bool exhaustive = points <= 512;
    if (!exhaustive) {
      // cheap probe with a basis vector, then look for a smaller nullspace
      FpMatrix s = spin(m, n.col(0));
      if (s.cols() < m.dim) return s;
      continue;
    }
    for (auto& v : projective_points(n, p)) {
      FpMatrix s = spin(m, v);
      if (s.cols() < m.dim) return s;
    }
    // every kernel vector generates; test the dual with one vector of ker(theta^T)
    FpMatrix nt = nullspace(theta.transpose(), p);
    FpMatrix w = spin_with(transposes, m.dim, p, nt.col(0));
    if (w.cols() < m.dim) {
      FpMatrix perp = nullspace(w.transpose(), p);
      return column_basis(perp, p);
    }
    return std::nullopt;
  }
  throw Error(ErrorKind::NotIrreducible, "irreducibility test did not settle");
}

std::vector<GenModule> composition_factors(const GenModule& m, std::mt19937_64& rng) {
  auto sub = proper_submodule(m, rng);
  if (!sub) return {m};
  auto [a, b] = split(m, *sub);
  auto fa = composition_factors(a, rng);
  auto fb = composition_factors(b, rng);
  fa.insert(fa.end(), fb.begin(), fb.end());
  return fa;
}

std::vector<IrreducibleInfo> irreducibles(std::shared_ptr<const FiniteGroup> group, std::uint32_t ell,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Representation reg = regular_representation(group, ell);
  GenModule m{ell, reg.dim, reg.generator_images()};
  std::vector<IrreducibleInfo> out;
  for (auto& f : composition_factors(m, rng)) {
    Representation r = from_generators(group, ell, f.gens, "");
    bool found = false;
    for (auto& info : out)
      if (is_isomorphic(info.rep, r, rng)) {
        ++info.multiplicity_in_regular;
        found = true;
        break;
      }
    if (found) continue;
    IrreducibleInfo info{r, true, 1};
    info.absolutely_irreducible = hom_space(r.generator_images(), r.generator_images(), ell).size() == 1;
    out.push_back(std::move(info));
  }
  std::stable_sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.rep.dim < y.rep.dim; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rep.label = "S" + std::to_string(i);
  return out;
}

// ---- projective covers ----

namespace {

using AlgElt = std::vector<std::uint32_t>;

AlgElt alg_mul(const FiniteGroup& g, const AlgElt& a, const AlgElt& b, std::uint32_t p) {
  const int n = g.order();
  std::vector<std::uint64_t> c(n, 0);
  for (int x = 0; x < n; ++x) {
    if (!a[x]) continue;
    for (int y = 0; y < n; ++y)
      if (b[y]) c[g.mul(x, y)] = (c[g.mul(x, y)] + std::uint64_t{a[x]} * b[y]) % p;
  }
  return AlgElt(c.begin(), c.end());
}

AlgElt alg_lin(const AlgElt& a, std::uint32_t ca, const AlgElt& b, std::uint32_t cb, std::uint32_t p) {
  AlgElt c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} * ca + std::uint64_t{b[i]} * cb) % p);
  return c;
}

// poly(b) in the corner algebra with identity e.
AlgElt alg_eval(const FiniteGroup& g, const poly::Poly& f, const AlgElt& b, const AlgElt& e, std::uint32_t p) {
  AlgElt r(e.size(), 0), pw = e;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i]) r = alg_lin(r, 1, pw, f[i], p);
    if (i + 1 < f.size()) pw = alg_mul(g, pw, b, p);
  }
  return r;
}

FpMatrix act(const Representation& s, const AlgElt& a) {
  FpMatrix m = zero_matrix(s.dim, s.dim, s.ell);
  for (std::size_t g = 0; g < a.size(); ++g)
    if (a[g]) m += Fp(a[g], s.ell) * s.mats[g];
  return m;
}

// Minimal polynomial of b in the corner algebra with identity e.
poly::Poly corner_minpoly(const FiniteGroup& g, const AlgElt& b, const AlgElt& e, std::uint32_t p) {
  const int n = g.order();
  std::vector<AlgElt> powers{e};
  for (int d = 1; d <= n; ++d) {
    powers.push_back(alg_mul(g, powers.back(), b, p));
    FpMatrix sys = zero_matrix(n, d, p);
    for (int i = 0; i < d; ++i)
      for (int x = 0; x < n; ++x) sys(x, i) = Fp(powers[i][x], p);
    FpVector rhs = zero_vector(n, p);
    for (int x = 0; x < n; ++x) rhs(x) = -Fp(powers[d][x], p);
    if (auto c = solve(sys, rhs, p)) {
      poly::Poly f(d + 1);
      for (int i = 0; i < d; ++i) f[i] = (*c)(i).value();
      f[d] = 1;
      return f;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "minimal polynomial not found");
}

}  // namespace

Representation projective_cover(const Representation& simple, std::uint64_t seed) {
  const FiniteGroup& g = *simple.group;
  const std::uint32_t p = simple.ell;
  const int n = g.order();
  if (n > 64) throw Error(ErrorKind::TooLarge, "projective covers are computed for |G| <= 64");
  if (hom_space(simple.generator_images(), simple.generator_images(), p).size() != 1)
    throw Error(ErrorKind::NotIrreducible, "projective cover needs an absolutely irreducible module");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  AlgElt e(n, 0);
  e[0] = 1;
  int failures = 0;
  while (failures < 64) {
    AlgElt r(n);
    for (auto& c : r) c = coef(rng);
    AlgElt b = alg_mul(g, alg_mul(g, e, r, p), e, p);
    poly::Poly mu = corner_minpoly(g, b, e, p);
    auto factors = poly::factor(mu, p, rng);
    if (factors.size() < 2) {
      ++failures;
      continue;
    }
    poly::Poly mu1{1};
    for (int i = 0; i < factors[0].multiplicity; ++i) mu1 = poly::mul(mu1, factors[0].f, p);
    poly::Poly mu2, rem;
    poly::divmod(mu, mu1, p, mu2, rem);
    poly::Poly s, t;
    poly::ext_gcd(mu1, mu2, p, s, t);
    AlgElt e1 = alg_eval(g, poly::mul(t, mu2, p), b, e, p);
    AlgElt e2 = alg_lin(e, 1, e1, p - 1, p);
    bool z1 = is_zero(act(simple, e1)), z2 = is_zero(act(simple, e2));
    if (z1 && z2) throw Error(ErrorKind::InvalidArgument, "idempotent splitting lost the simple module");
    e = z1 ? e2 : e1;
    failures = 0;
  }
  if (alg_mul(g, e, e, p) != e) throw Error(ErrorKind::InvalidArgument, "idempotent check failed");
  if (rank(act(simple, e), p) != 1) throw Error(ErrorKind::InvalidArgument, "idempotent is not primitive for S");
  // P = F_ell[G] e, with G acting by left multiplication
  FpMatrix span = zero_matrix(n, n, p);
  for (int x = 0; x < n; ++x) {
    AlgElt gx(n, 0);
    gx[x] = 1;
    AlgElt v = alg_mul(g, gx, e, p);
    for (int y = 0; y < n; ++y) span(y, x) = Fp(v[y], p);
  }
  FpMatrix basis = column_basis(span, p);
  const int d = static_cast<int>(basis.cols());
  Echelon rows = row_reduce(basis.transpose(), p);
  FpMatrix sel = zero_matrix(d, d, p);
  for (int i = 0; i < d; ++i) sel.col(i) = basis.row(rows.pivots[i]).transpose();
  FpMatrix sel_inv = *inverse(FpMatrix(sel.transpose()), p);
  std::vector<FpMatrix> gens;
  for (int s : g.generators()) {
    FpMatrix moved = zero_matrix(n, d, p);
    for (int x = 0; x < n; ++x) moved.row(g.mul(s, x)) = basis.row(x);
    FpMatrix picked = zero_matrix(d, d, p);
    for (int i = 0; i < d; ++i) picked.row(i) = moved.row(rows.pivots[i]);
    gens.push_back(sel_inv * picked);
  }
  return from_generators(simple.group, p, gens, "P(" + simple.label + ")");
}

bool is_cuspidal(const GLGroup& gl, const Representation& r) {
  if (gl.k() == 1) return true;
  if (gl.k() != 2) throw Error(ErrorKind::InvalidArgument, "cuspidality implemented for k <= 2");
  const GaloisField& f = gl.field();
  FpMatrix stack = zero_matrix(r.dim, r.dim * static_cast<Eigen::Index>(f.q()), r.ell);
  for (std::uint32_t b = 0; b < f.q(); ++b) {
    FqMatrix u = fq_identity(2, f);
    u(0, 1) = Fq(b, &f);
    stack.middleCols(static_cast<Eigen::Index>(b) * r.dim, r.dim) =
        r.mats[gl.index_of(u)] - identity_matrix(r.dim, r.ell);
  }
  return rank(stack, r.ell) == r.dim;
}

std::vector<Representation> cuspidal_irreducibles(std::shared_ptr<const GLGroup> gl, std::uint32_t ell,
                                                  std::uint64_t seed) {
  std::vector<Representation> out;
  if (gl->k() == 1) {
    for (int i = 0; i < character_count(gl->field().q(), ell); ++i) out.push_back(character(gl, ell, i));
    return out;
  }
  for (auto& info : irreducibles(gl->group(), ell, seed))
    if (info.absolutely_irreducible && is_cuspidal(*gl, info.rep)) out.push_back(info.rep);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = "cusp" + std::to_string(i);
  return out;
}

// ---- coefficient systems ----

std::vector<FpMatrix> intertwiner_basis(const Representation& V, bool twisted) {
  const FiniteGroup& m = *V.group;
  if (!m.is_product()) throw Error(ErrorKind::InvalidArgument, "coefficient group must be GL_k x GL_k");
  const int n = m.right().order();
  std::vector<int> blocks = V.blocks.empty() ? std::vector<int>{V.dim} : V.blocks;
  std::vector<int> offs{0};
  for (int b : blocks) offs.push_back(offs.back() + b);
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      std::vector<FpMatrix> a, b;
      for (int g : m.generators()) {
        int gw = twisted ? m.pair(g % n, g / n) : g;
        a.push_back(V.mats[g].block(offs[i], offs[i], blocks[i], blocks[i]));
        b.push_back(V.mats[gw].block(offs[j], offs[j], blocks[j], blocks[j]));
      }
      for (auto& h : hom_space(a, b, V.ell)) {
        FpMatrix x = zero_matrix(V.dim, V.dim, V.ell);
        x.block(offs[j], offs[i], blocks[j], blocks[i]) = h;
        out.push_back(std::move(x));
      }
    }
  return out;
}

namespace {

FpMatrix vec_basis(const std::vector<FpMatrix>& basis, int dim, std::uint32_t p) {
  FpMatrix b = zero_matrix(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(basis.size()), p);
  for (std::size_t i = 0; i < basis.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = basis[i].reshaped();
  return b;
}

}  // namespace

FpVector CoefficientSystem::coordinates(const FpMatrix& f, int grade) const {
  const auto& b = basis(grade);
  FpMatrix vb = vec_basis(b, dim(), ell);
  FpVector rhs = f.reshaped();
  auto c = solve(vb, rhs, ell);
  if (!c) throw Error(ErrorKind::ParityViolation, "coefficient is not in I_" + std::string(grade ? "w" : "1"));
  return *c;
}

bool CoefficientSystem::in_space(const FpMatrix& f, int grade) const {
  FpMatrix vb = vec_basis(basis(grade), dim(), ell);
  FpVector rhs = f.reshaped();
  return solve(vb, rhs, ell).has_value();
}

FpMatrix CoefficientSystem::combine(const FpVector& c, int grade) const {
  const auto& b = basis(grade);
  FpMatrix f = zero_matrix(dim(), dim(), ell);
  for (std::size_t i = 0; i < b.size(); ++i) f += c(static_cast<Eigen::Index>(i)) * b[i];
  return f;
}

FpMatrix CoefficientSystem::random_element(int grade, std::mt19937_64& rng) const {
  const auto& b = basis(grade);
  FpVector c = random_matrix(static_cast<Eigen::Index>(b.size()), 1, ell, rng);
  return combine(c, grade);
}

CoefficientSystem make_coefficient_system(std::uint32_t ell, std::shared_ptr<const GLGroup> gl,
                                          Representation V) {
  const std::uint32_t q = gl->field().q();
  if (!is_prime(ell) || q % ell == 0)
    throw Error(ErrorKind::InvalidArgument, "ell must be a prime different from the characteristic");
  CoefficientSystem cs;
  cs.ell = ell;
  cs.q = q;
  cs.k = gl->k();
  cs.gl = gl;
  cs.levi = V.group;
  cs.label = V.label;
  cs.V = std::move(V);
  cs.tstar = zero_matrix(cs.dim(), cs.dim(), ell);
  for (int g = 0; g < gl->order(); ++g) cs.tstar += cs.sigma(g, gl->negate(gl->group()->inv(g)));
  cs.basis1 = intertwiner_basis(cs.V, false);
  cs.basisw = intertwiner_basis(cs.V, true);
  cs.tau = Fp(1, ell);
  for (int i = 0; i < cs.k * cs.k; ++i) cs.tau *= Fp(q, ell);
  if (!cs.in_space(cs.tstar, 1)) throw Error(ErrorKind::InvalidArgument, "T* is not in I_w");
  return cs;
}

CoefficientSystem make_coefficient_system(std::uint32_t ell, std::uint32_t q, int k, const VSelector& sel) {
  auto gl = gl_group(q, k);
  if (!gl->group()) throw Error(ErrorKind::TooLarge, "GL_k(F_q) has no multiplication table");
  Representation V;
  if (sel.kind == VSelector::Kind::Explicit) {
    if (!sel.explicit_rep) throw Error(ErrorKind::InvalidArgument, "explicit selector without representation");
    V = *sel.explicit_rep;
  } else {
    auto cusp = cuspidal_irreducibles(gl, ell);
    if (sel.index < 0 || sel.index >= static_cast<int>(cusp.size()))
      throw Error(ErrorKind::InvalidArgument, "no cuspidal representation with index " + std::to_string(sel.index));
    const Representation& rho0 = cusp[sel.index];
    if (sel.kind == VSelector::Kind::Character) {
      V = outer_tensor(rho0, rho0);
    } else {
      Representation p0 = projective_cover(rho0);
      Representation p = outer_tensor(p0, p0);
      V = direct_sum(p, dual(p));
      V.label = "P+P* for " + rho0.label;
    }
  }
  return make_coefficient_system(ell, gl, std::move(V));
}

GroupAlgebraElement tstar_group_algebra(const GLGroup& gl, std::uint32_t ell) {
  GroupAlgebraElement t;
  const int n = gl.order();
  for (int g = 0; g < n; ++g) {
    int idx = g * n + gl.negate(gl.group()->inv(g));
    t[idx] = (t[idx] + 1) % ell;
  }
  return t;
}

GroupAlgebraElement tstar_square(const GLGroup& gl, std::uint32_t ell) {
  const FiniteGroup& g = *gl.group();
  const int n = gl.order();
  std::vector<int> partner(n);
  for (int a = 0; a < n; ++a) partner[a] = gl.negate(g.inv(a));
  GroupAlgebraElement sq;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int idx = g.mul(a, b) * n + g.mul(partner[a], partner[b]);
      auto& c = sq[idx];
      c = (c + 1) % ell;
    }
  for (auto it = sq.begin(); it != sq.end();)
    it = it->second == 0 ? sq.erase(it) : std::next(it);
  return sq;
}

}  // namespace hecke
