#include "hecke/heckealg.hpp"

#include <algorithm>
#include <sstream>

#include "hecke/polyfp.hpp"

namespace hecke {

namespace {

int floor_half(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

StarPoly star_mul(const StarPoly& a, const StarPoly& b, std::uint32_t p) { return poly::mul(a, b, p); }

}  // namespace

const std::vector<LowCase>& low_cases() {
  static const std::vector<LowCase> cases = [] {
    const WeylElement w = weyl_w(), wp = weyl_wprime(), t = weyl_t(1), ti = weyl_t(-1);
    return std::vector<LowCase>{
        {1, w, w, w},
        {2, t * w, w * ti, t * w * ti},
        {3, wp, wp, wp},
        {4, w * ti, t * w, w},
        {5, w, w * ti, w * ti},
        {6, ti * wp, wp, ti * wp},
        {7, t * w, w, t * w},
        {8, wp, wp * t, wp * t},
    };
  }();
  return cases;
}

StructureTable::StructureTable(std::uint32_t ell, std::uint32_t tau) : ell_(ell), tau_(tau % ell) {
  if (tau_ == 0) throw Error(ErrorKind::InvalidArgument, "tau must be non-zero");
}

std::size_t StructureTable::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

void StructureTable::accumulate(Structure& out, const Structure& s, const StarPoly& c) const {
  for (const auto& [eps, p] : s) {
    StarPoly& slot = out[eps];
    slot = poly::add(slot, star_mul(p, c, ell_), ell_);
    if (slot.empty()) out.erase(eps);
  }
}

Structure StructureTable::product_at(const WeylElement& eta, const WeylElement& delta, int depth) const {
  const int a = floor_half(alpha(eta)), b = floor_half(alpha(delta));
  const WeylElement e0 = weyl_t(-2 * a) * eta, d0 = weyl_t(-2 * b) * delta;
  const auto key = std::make_pair(e0, d0);
  Structure base;
  bool found = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      base = it->second;
      found = true;
    }
  }
  if (!found) {
    base = compute(e0, d0, depth);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, base);
  }
  if (a + b == 0) return base;
  Structure shifted;
  const WeylElement s = weyl_t(2 * (a + b));
  for (auto& [eps, p] : base) shifted.emplace(s * eps, std::move(p));
  return shifted;
}

Structure StructureTable::compute(const WeylElement& eta, const WeylElement& delta, int depth) const {
  if (depth > 512) throw Error(ErrorKind::InvalidArgument, "product recursion does not terminate");
  const int le = length(eta), ld = length(delta);
  Structure r;
  if (is_length_additive(eta, delta)) {
    r[eta * delta] = {1};
    return r;
  }
  if (le == 1 && ld == 1) {
    // eta = t^alpha v with v in {w, w'}; eta' = t^alpha
    r[eta * delta] = {tau_};
    accumulate(r, {{weyl_t(alpha(eta)) * delta, StarPoly{0, 1}}}, {1});
  } else if (le >= 2) {
    auto [eta1, eta2] = left_factor(eta);
    for (const auto& [eps, c] : product_at(eta2, delta, depth + 1)) accumulate(r, product_at(eta1, eps, depth + 1), c);
  } else {
    auto [delta2, delta1] = right_factor(delta);
    for (const auto& [eps, c] : product_at(eta, delta2, depth + 1)) accumulate(r, product_at(eps, delta1, depth + 1), c);
  }
  for (const auto& [eps, c] : r)
    if (length(eps) >= le + ld)
      throw Error(ErrorKind::InvalidArgument, "support [" + to_string(eps) + "] violates the length drop");
  return r;
}

std::shared_ptr<const StructureTable> structure_table(std::uint32_t ell, std::uint32_t tau) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const StructureTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{ell, tau % ell}];
  if (!slot) slot = std::make_shared<const StructureTable>(ell, tau);
  return slot;
}

// ---- concrete coefficients ----

ConcreteRing::ConcreteRing(const CoefficientSystem& cs) : cs_(cs) {}

FpMatrix ConcreteRing::tstar_power(int j) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (powers_.empty()) powers_.push_back(identity_matrix(cs_.dim(), ell()));
  while (static_cast<int>(powers_.size()) <= j) {
    FpMatrix next = powers_.back() * cs_.tstar;
    powers_.push_back(next);
  }
  return powers_[j];
}

FpMatrix ConcreteRing::mul(const FpMatrix& a, const FpMatrix& b) const {
  FpMatrix r = a * b;
  normalize(r, ell());
  return r;
}

FpMatrix ConcreteRing::add(const FpMatrix& a, const FpMatrix& b) const {
  FpMatrix r = a + b;
  normalize(r, ell());
  return r;
}

FpMatrix ConcreteRing::scale(std::uint32_t s, const FpMatrix& a) const {
  FpMatrix r = Fp(s, ell()) * a;
  normalize(r, ell());
  return r;
}

FpMatrix ConcreteRing::star(const StarPoly& p, const FpMatrix& c) const {
  FpMatrix r = zero_matrix(c.rows(), c.cols(), ell());
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j]) r += Fp(p[j], ell()) * (tstar_power(static_cast<int>(j)) * c);
  normalize(r, ell());
  return r;
}

// ---- free coefficients ----

FreeRing::FreeRing(std::uint32_t ell, std::uint32_t tau, StarPoly relation)
    : ell_(ell), tau_(tau % ell), relation_(std::move(relation)) {
  poly::trim(relation_);
  if (!relation_.empty() && relation_.back() != 1) throw Error(ErrorKind::InvalidArgument, "relation must be monic");
}

int FreeRing::generator(const std::string& name, int grade) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) {
      if (graded_ && grades_[i] != grade)
        throw Error(ErrorKind::ParityViolation, "coefficient " + name + " used with both parities");
      return static_cast<int>(i);
    }
  names_.push_back(name);
  grades_.push_back(grade);
  return static_cast<int>(names_.size()) - 1;
}

std::map<FreeRing::Word, StarPoly> FreeRing::split(const Coeff& c) {
  std::map<Word, StarPoly> parts;
  for (const auto& [key, v] : c) {
    StarPoly& p = parts[key.first];
    if (static_cast<int>(p.size()) <= key.second) p.resize(key.second + 1, 0);
    p[key.second] = v;
  }
  return parts;
}

FreeRing::Coeff FreeRing::normalized(const std::map<Word, StarPoly>& parts) const {
  Coeff out;
  for (const auto& [w, p0] : parts) {
    StarPoly p = p0;
    poly::trim(p);
    if (!relation_.empty() && !p.empty()) p = poly::mod(p, relation_, ell_);
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j]) out[{w, static_cast<int>(j)}] = p[j];
  }
  return out;
}

FreeRing::Coeff FreeRing::monomial(const Word& w, int j, std::uint32_t c) const {
  StarPoly p(j + 1, 0);
  p[j] = c % ell_;
  return normalized({{w, p}});
}

FreeRing::Coeff FreeRing::mul(const Coeff& a, const Coeff& b) const {
  std::map<Word, StarPoly> parts;
  for (const auto& [wa, pa] : split(a))
    for (const auto& [wb, pb] : split(b)) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      StarPoly& slot = parts[w];
      slot = poly::add(slot, poly::mul(pa, pb, ell_), ell_);
    }
  return normalized(parts);
}

FreeRing::Coeff FreeRing::add(const Coeff& a, const Coeff& b) const {
  Coeff r = a;
  for (const auto& [k, v] : b) {
    std::uint32_t& slot = r[k];
    slot = (slot + v) % ell_;
    if (slot == 0) r.erase(k);
  }
  return r;
}

FreeRing::Coeff FreeRing::scale(std::uint32_t s, const Coeff& a) const {
  Coeff r;
  s %= ell_;
  if (s == 0) return r;
  for (const auto& [k, v] : a) r[k] = static_cast<std::uint32_t>(std::uint64_t(v) * s % ell_);
  return r;
}

FreeRing::Coeff FreeRing::star(const StarPoly& p, const Coeff& c) const {
  std::map<Word, StarPoly> parts;
  for (const auto& [w, q] : split(c)) parts[w] = poly::mul(p, q, ell_);
  return normalized(parts);
}

bool FreeRing::has_grade(const Coeff& c, int g) const {
  if (!graded_) return true;
  for (const auto& [key, v] : c) {
    int s = key.second;
    for (int x : key.first) s += grades_[x];
    if (s % 2 != g % 2) return false;
  }
  return true;
}

FreeRing::Coeff FreeRing::random(int g, std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> coef(1, ell_ - 1);
  std::uniform_int_distribution<int> len(0, 2), jj(0, 3);
  Coeff r;
  const int terms = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    Word w;
    int n = names_.empty() ? 0 : len(rng);
    int s = 0;
    for (int i = 0; i < n; ++i) {
      int x = static_cast<int>(rng() % names_.size());
      w.push_back(x);
      s += grades_[x];
    }
    int j = jj(rng);
    if (graded_ && (j + s) % 2 != g % 2) ++j;
    r = add(r, monomial(w, j, coef(rng)));
  }
  return r;
}

std::string FreeRing::render(const Coeff& c) const {
  std::string s;
  for (const auto& [key, v] : c) {
    if (!s.empty()) s += " + ";
    if (v != 1) s += std::to_string(v) + "·";
    if (key.second > 0) s += "T*^" + std::to_string(key.second);
    for (int x : key.first) s += names_[x];
    if (key.second == 0 && key.first.empty()) s += "1";
  }
  return s;
}

StarPoly star_relation(const CharPoly& F) {
  const std::uint32_t p = F.ell;
  poly::Poly even, odd;
  for (int i = 0; i <= F.degree(); ++i) {
    poly::Poly& part = i % 2 ? odd : even;
    part.resize(i + 1, 0);
    part[i] = F.poly.coeffs[i].value();
  }
  poly::trim(even);
  poly::trim(odd);
  poly::Poly g = even.empty() ? poly::monic(odd, p) : odd.empty() ? poly::monic(even, p) : poly::gcd(even, odd, p);
  int parity = -1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i]) continue;
    if (parity >= 0 && static_cast<int>(i % 2) != parity)
      throw Error(ErrorKind::ParityViolation, "relation on T* mixes parities");
    parity = static_cast<int>(i % 2);
  }
  return g;
}

std::string render_free(const FreeRing& ring, const HeckeElement<FreeRing>& a) {
  if (a.terms.empty()) return "0";
  std::vector<std::pair<WeylElement, const FreeRing::Coeff*>> order;
  for (const auto& [e, c] : a.terms) order.emplace_back(e, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return length(x.first) != length(y.first) ? length(x.first) < length(y.first) : x.first < y.first;
  });
  std::string s;
  for (const auto& [e, c] : order)
    for (const auto& [key, v] : *c) {
      if (!s.empty()) s += " + ";
      if (v != 1) s += std::to_string(v) + "·";
      s += "[" + to_string(e) + "]";
      if (key.second > 0) s += "^" + std::to_string(key.second);
      if (!key.first.empty()) {
        s += "_{";
        for (int x : key.first) s += ring.name(x);
        s += "}";
      }
    }
  return s;
}

TwistedPoly hdagger_extract(const ConcreteRing& ring, const HeckeElement<ConcreteRing>& h, const CharPoly& F) {
  const CoefficientSystem& cs = ring.system();
  const std::uint32_t p = cs.ell;
  const int n = cs.dim(), d = F.degree();
  FpMatrix c1 = zero_matrix(n, n, p), cw = zero_matrix(n, n, p);
  for (const auto& [e, c] : h.terms) {
    if (e == weyl_identity())
      c1 = c;
    else if (e == weyl_w())
      cw = c;
    else
      throw Error(ErrorKind::ParityViolation, "support outside {1, w}");
  }
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  FpMatrix sys = zero_matrix(2 * n2, d, p);
  for (int i = 0; i < d; ++i) sys.col(i).segment((i % 2) * n2, n2) = ring.tstar_power(i).reshaped();
  FpVector rhs(2 * n2);
  rhs.head(n2) = c1.reshaped();
  rhs.tail(n2) = cw.reshaped();
  auto x = solve(sys, rhs, p);
  if (!x) throw Error(ErrorKind::ParityViolation, "element is not in the image of R[T]^tau");
  std::vector<Fp> r(d);
  for (int i = 0; i < d; ++i) r[i] = (*x)(i);
  return TwistedPoly(std::move(r), cs.tau);
}

TwistedPoly hdagger_extract(const FreeRing& ring, const HeckeElement<FreeRing>& h, const CharPoly& F) {
  std::vector<Fp> r;
  for (const auto& [e, c] : h.terms) {
    const bool odd = e == weyl_w();
    if (!odd && e != weyl_identity()) throw Error(ErrorKind::ParityViolation, "support outside {1, w}");
    for (const auto& [key, v] : c) {
      if (!key.first.empty() || (key.second % 2 == 1) != odd)
        throw Error(ErrorKind::ParityViolation, "coefficient is not a power of T*");
      if (static_cast<int>(r.size()) <= key.second) r.resize(key.second + 1, Fp(0, ring.ell()));
      r[key.second] = Fp(v, ring.ell());
    }
  }
  return tp_reduce(TwistedPoly(std::move(r), Fp(ring.tau(), ring.ell())), F).rep;
}

}  // namespace hecke
