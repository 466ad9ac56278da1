#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hecke/modrep.hpp"
#include "hecke/tpoly.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

// One of the eight low-length products: [eta]_f [delta]_g = tau [eta delta]_{fg} + [second]^1_{fg}.
struct LowCase {
  int number;
  WeylElement eta, delta, second;
};
const std::vector<LowCase>& low_cases();

// Ordinary polynomial in the central element T*, coefficients in F_ell (index = power).
using StarPoly = std::vector<std::uint32_t>;

// [eta][delta] = sum_eps [eps]_{c_eps(T*) f g}; structure constants do not depend on f, g.
using Structure = std::map<WeylElement, StarPoly>;

class StructureTable {
 public:
  StructureTable(std::uint32_t ell, std::uint32_t tau);

  std::uint32_t ell() const { return ell_; }
  std::uint32_t tau() const { return tau_; }
  Structure product(const WeylElement& eta, const WeylElement& delta) const { return product_at(eta, delta, 0); }
  std::size_t memo_size() const;

 private:
  Structure product_at(const WeylElement& eta, const WeylElement& delta, int depth) const;
  Structure compute(const WeylElement& eta, const WeylElement& delta, int depth) const;
  void accumulate(Structure& out, const Structure& s, const StarPoly& c) const;

  std::uint32_t ell_, tau_;
  mutable std::mutex mu_;
  // Keyed on representatives with alpha in {0, 1}; t^2 is central and length-adding.
  mutable std::map<std::pair<WeylElement, WeylElement>, Structure> memo_;
};

std::shared_ptr<const StructureTable> structure_table(std::uint32_t ell, std::uint32_t tau);

// Coefficients are End(V)-matrices of a coefficient system.
class ConcreteRing {
 public:
  using Coeff = FpMatrix;
  explicit ConcreteRing(const CoefficientSystem& cs);

  std::uint32_t ell() const { return cs_.ell; }
  std::uint32_t tau() const { return cs_.tau.value(); }
  const CoefficientSystem& system() const { return cs_; }

  Coeff one() const { return identity_matrix(cs_.dim(), ell()); }
  Coeff tstar_power(int j) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff scale(std::uint32_t s, const Coeff& a) const;
  Coeff star(const StarPoly& p, const Coeff& c) const;
  bool is_zero(const Coeff& a) const { return hecke::is_zero(a); }
  bool equal(const Coeff& a, const Coeff& b) const { return hecke::equal(a, b); }
  // Checks that c lies in I_1 (grade 0) or I_w (grade 1).
  bool has_grade(const Coeff& c, int g) const { return cs_.in_space(c, g); }
  Coeff random(int g, std::mt19937_64& rng) const { return cs_.random_element(g, rng); }
  std::string render(const Coeff&) const { return "f"; }

 private:
  CoefficientSystem cs_;
  mutable std::vector<FpMatrix> powers_;
  mutable std::mutex mu_;
};

// Formal coefficients: R-combinations of words in non-commuting generators times powers of
// a central T*, optionally reduced by a monic relation on T*.
class FreeRing {
 public:
  using Word = std::vector<int>;
  using Coeff = std::map<std::pair<Word, int>, std::uint32_t>;

  FreeRing(std::uint32_t ell, std::uint32_t tau, StarPoly relation = {});

  // An ungraded ring skips the parity rule, so bare symbols such as [w] are allowed.
  void set_graded(bool g) { graded_ = g; }
  bool graded() const { return graded_; }

  std::uint32_t ell() const { return ell_; }
  std::uint32_t tau() const { return tau_; }
  const StarPoly& relation() const { return relation_; }

  // Registers (or looks up) a generator with the given grade; throws ParityViolation on a clash.
  int generator(const std::string& name, int grade);
  int generator_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_[g]; }

  Coeff one() const { return monomial({}, 0); }
  Coeff monomial(const Word& w, int j, std::uint32_t c = 1) const;
  Coeff tstar_power(int j) const { return monomial({}, j); }
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff scale(std::uint32_t s, const Coeff& a) const;
  Coeff star(const StarPoly& p, const Coeff& c) const;
  bool is_zero(const Coeff& a) const { return a.empty(); }
  bool equal(const Coeff& a, const Coeff& b) const { return a == b; }
  bool has_grade(const Coeff& c, int g) const;
  Coeff random(int g, std::mt19937_64& rng) const;
  std::string render(const Coeff& c) const;

 private:
  Coeff normalized(const std::map<Word, StarPoly>& parts) const;
  static std::map<Word, StarPoly> split(const Coeff& c);

  std::uint32_t ell_, tau_;
  StarPoly relation_;
  std::vector<std::string> names_;
  std::vector<int> grades_;
  bool graded_ = true;
};

// The relation on T* implied by a characteristic polynomial: gcd of its even and odd parts.
StarPoly star_relation(const CharPoly& F);

template <class Ring>
struct HeckeElement {
  std::map<WeylElement, typename Ring::Coeff> terms;
};

template <class Ring>
bool hk_equal(const Ring& ring, const HeckeElement<Ring>& a, const HeckeElement<Ring>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (auto i = a.terms.begin(), j = b.terms.begin(); i != a.terms.end(); ++i, ++j)
    if (i->first != j->first || !ring.equal(i->second, j->second)) return false;
  return true;
}

template <class Ring>
HeckeElement<Ring> hk_symbol(const Ring& ring, const WeylElement& eta, const typename Ring::Coeff& f) {
  HeckeElement<Ring> r;
  if (!ring.is_zero(f)) r.terms.emplace(eta, f);
  return r;
}

// [eta]^a = [eta]_{(T*)^a}.
template <class Ring>
HeckeElement<Ring> hk_power_symbol(const Ring& ring, const WeylElement& eta, int a) {
  return hk_symbol(ring, eta, ring.tstar_power(a));
}

template <class Ring>
HeckeElement<Ring> hk_add(const Ring& ring, const HeckeElement<Ring>& a, const HeckeElement<Ring>& b) {
  HeckeElement<Ring> r = a;
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
      continue;
    }
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) r.terms.erase(it);
  }
  return r;
}

template <class Ring>
HeckeElement<Ring> hk_scale(const Ring& ring, std::uint32_t s, const HeckeElement<Ring>& a) {
  HeckeElement<Ring> r;
  for (const auto& [e, c] : a.terms) {
    auto x = ring.scale(s, c);
    if (!ring.is_zero(x)) r.terms.emplace(e, x);
  }
  return r;
}

template <class Ring>
HeckeElement<Ring> hk_sub(const Ring& ring, const HeckeElement<Ring>& a, const HeckeElement<Ring>& b) {
  return hk_add(ring, a, hk_scale(ring, ring.ell() - 1, b));
}

// Checks the parity rule: a coefficient of [eta] has the grade of eta.
template <class Ring>
bool hk_well_formed(const Ring& ring, const HeckeElement<Ring>& a) {
  for (const auto& [e, c] : a.terms)
    if (!ring.has_grade(c, grade(e))) return false;
  return true;
}

template <class Ring>
HeckeElement<Ring> hk_mul(const Ring& ring, const StructureTable& table, const HeckeElement<Ring>& a,
                          const HeckeElement<Ring>& b) {
  if (table.ell() != ring.ell() || table.tau() != ring.tau())
    throw Error(ErrorKind::SystemMismatch, "structure table built for another (ell, tau)");
  HeckeElement<Ring> r;
  for (const auto& [eta, f] : a.terms)
    for (const auto& [delta, g] : b.terms) {
      auto fg = ring.mul(f, g);
      if (ring.is_zero(fg)) continue;
      HeckeElement<Ring> part;
      for (const auto& [eps, c] : table.product(eta, delta)) {
        auto h = ring.star(c, fg);
        if (!ring.is_zero(h)) part.terms.emplace(eps, h);
      }
      r = hk_add(ring, r, part);
    }
  return r;
}

template <class Ring>
std::string to_string(const Ring& ring, const HeckeElement<Ring>& a) {
  if (a.terms.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : a.terms) {
    if (!s.empty()) s += " + ";
    s += "[" + to_string(e) + "]_{" + ring.render(c) + "}";
  }
  return s;
}

// Free-mode rendering: c·[eps]^j with generator words as subscripts.
std::string render_free(const FreeRing& ring, const HeckeElement<FreeRing>& a);

// Right-moved form of [w]_f [eta]^a given by the four shape-class formulas.
// The first form of each bullet is built as X [w]_f; the second form as given.
template <class Ring>
struct CommuteForms {
  HeckeElement<Ring> first;
  HeckeElement<Ring> second;
};

template <class Ring>
CommuteForms<Ring> hk_commute_w(const Ring& ring, const StructureTable& table, const typename Ring::Coeff& f,
                                const WeylElement& eta, int a) {
  if (!ring.has_grade(ring.tstar_power(a), grade(eta)))
    throw Error(ErrorKind::ParityViolation, "[eta]^a needs a of the parity of eta");
  const WeylElement w = weyl_w();
  const std::uint32_t tau = ring.tau(), ell = ring.ell();
  std::uint32_t tau_inv = 1;
  for (std::uint32_t i = 0; i < ell - 2; ++i) tau_inv = static_cast<std::uint32_t>(tau_inv * std::uint64_t(tau) % ell);
  auto sym = [&](const WeylElement& e, int j) { return hk_power_symbol(ring, e, j); };
  auto wf = hk_symbol(ring, w, f);
  auto one_f1 = hk_symbol(ring, weyl_identity(), ring.mul(ring.tstar_power(1), f));
  auto mul = [&](const HeckeElement<Ring>& x, const HeckeElement<Ring>& y) { return hk_mul(ring, table, x, y); };
  const WeylElement wew = w * eta * w, ew = eta * w, we = w * eta;
  CommuteForms<Ring> r;
  switch (shape_class(eta)) {
    case ShapeClass::A:
      r.first = mul(sym(wew, a), wf);
      r.second = r.first;
      break;
    case ShapeClass::B:
      r.first = mul(hk_add(ring, hk_scale(ring, tau, sym(wew, a)), sym(ew, a + 1)), wf);
      r.second = hk_add(ring, hk_scale(ring, tau, mul(sym(wew, a), wf)), mul(sym(eta, a), one_f1));
      break;
    case ShapeClass::C:
      r.first = hk_scale(ring, tau_inv, mul(hk_sub(ring, sym(wew, a), sym(we, a + 1)), wf));
      r.second = hk_scale(ring, tau_inv, mul(sym(wew, a), hk_sub(ring, wf, one_f1)));
      break;
    case ShapeClass::D: {
      auto x = hk_sub(ring, sym(wew, a), sym(we, a + 1));
      x = hk_add(ring, x, hk_scale(ring, tau_inv, hk_sub(ring, sym(ew, a + 1), sym(eta, a + 2))));
      r.first = mul(x, wf);
      r.second = hk_add(ring, mul(sym(wew, a), wf), mul(hk_sub(ring, sym(eta, a), sym(wew, a)), one_f1));
      break;
    }
    case ShapeClass::PureT:
      // eta = t^(2b+1) has length 0: [w]_f [eta]^a = [eta]^a [eta^-1 w eta]_f
      r.first = mul(sym(eta, a), hk_symbol(ring, inverse(eta) * w * eta, f));
      r.second = r.first;
      break;
  }
  return r;
}

// tau [1]^1_f = ([w]^1 - [1]^2) [w]_f
template <class Ring>
bool identity_tau_one(const Ring& ring, const StructureTable& table, const typename Ring::Coeff& f) {
  auto lhs = hk_scale(ring, ring.tau(), hk_symbol(ring, weyl_identity(), ring.mul(ring.tstar_power(1), f)));
  auto x = hk_sub(ring, hk_power_symbol(ring, weyl_w(), 1), hk_power_symbol(ring, weyl_identity(), 2));
  return hk_equal(ring, lhs, hk_mul(ring, table, x, hk_symbol(ring, weyl_w(), f)));
}

// [eta]^c ([w]^1 - [1]^2) = tau [eta w]^(c+1)
template <class Ring>
bool identity_right_w(const Ring& ring, const StructureTable& table, const WeylElement& eta, int c) {
  auto x = hk_sub(ring, hk_power_symbol(ring, weyl_w(), 1), hk_power_symbol(ring, weyl_identity(), 2));
  auto lhs = hk_mul(ring, table, hk_power_symbol(ring, eta, c), x);
  return hk_equal(ring, lhs, hk_scale(ring, ring.tau(), hk_power_symbol(ring, eta * weyl_w(), c + 1)));
}

// sum r_i T^i -> sum r_i [w^i]^i
template <class Ring>
HeckeElement<Ring> hdagger_embed(const Ring& ring, const TwistedPoly& p) {
  HeckeElement<Ring> r;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeffs[i].is_zero()) continue;
    WeylElement e = i % 2 ? weyl_w() : weyl_identity();
    r = hk_add(ring, r, hk_scale(ring, p.coeffs[i].value(), hk_power_symbol(ring, e, i)));
  }
  return r;
}

// Left inverse of hdagger_embed on its image, returning the representative of degree < deg F.
TwistedPoly hdagger_extract(const ConcreteRing& ring, const HeckeElement<ConcreteRing>& h, const CharPoly& F);
TwistedPoly hdagger_extract(const FreeRing& ring, const HeckeElement<FreeRing>& h, const CharPoly& F);

// Random element with the given number of terms and support lengths <= max_len, |alpha| <= 2.
template <class Ring>
HeckeElement<Ring> hk_random(const Ring& ring, std::mt19937_64& rng, int terms, int max_len) {
  std::uniform_int_distribution<int> al(-2, 2), m(-(max_len + 1), max_len + 1), flag(0, 1);
  HeckeElement<Ring> r;
  for (int i = 0; i < terms; ++i) {
    WeylElement e;
    do {
      int y = m(rng);
      e = weyl_t(al(rng)) * WeylElement{-y, y, flag(rng) == 1};
    } while (length(e) > max_len);
    r = hk_add(ring, r, hk_symbol(ring, e, ring.random(grade(e), rng)));
  }
  return r;
}

}  // namespace hecke
