#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hecke/heckealg.hpp"
#include "hecke/tpoly.hpp"

namespace hecke {

// Basis element (alpha, beta) of R[Z^2].
using Z2 = std::pair<int, int>;

// Operations on the right tensor factor.
template <class B>
struct BasisAlgebra {
  std::function<B(const B&, const B&)> mul;
  std::function<B(const B&, const B&)> add;
  std::function<B(std::uint32_t, const B&)> scale;
  std::function<bool(const B&)> is_zero;
  std::function<bool(const B&, const B&)> equal;
  std::function<B()> one;
};

// Element of R[Z^2] (x) B; zero components are dropped.
template <class B>
struct TTElement {
  std::map<Z2, B> terms;
};

// psi(b (x) a) = sum a_i (x) b_i; linear in b.
template <class B>
using TwistingMap = std::function<TTElement<B>(const B&, const Z2&)>;

template <class B>
void tt_accumulate(const BasisAlgebra<B>& alg, TTElement<B>& out, const Z2& a, const B& b) {
  if (alg.is_zero(b)) return;
  auto it = out.terms.find(a);
  if (it == out.terms.end()) {
    out.terms.emplace(a, b);
    return;
  }
  it->second = alg.add(it->second, b);
  if (alg.is_zero(it->second)) out.terms.erase(it);
}

template <class B>
TTElement<B> tt_add(const BasisAlgebra<B>& alg, const TTElement<B>& x, const TTElement<B>& y) {
  TTElement<B> r = x;
  for (const auto& [a, b] : y.terms) tt_accumulate(alg, r, a, b);
  return r;
}

template <class B>
TTElement<B> tt_scale(const BasisAlgebra<B>& alg, std::uint32_t s, const TTElement<B>& x) {
  TTElement<B> r;
  for (const auto& [a, b] : x.terms) tt_accumulate(alg, r, a, alg.scale(s, b));
  return r;
}

template <class B>
bool tt_equal(const BasisAlgebra<B>& alg, const TTElement<B>& x, const TTElement<B>& y) {
  if (x.terms.size() != y.terms.size()) return false;
  for (auto i = x.terms.begin(), j = y.terms.begin(); i != x.terms.end(); ++i, ++j)
    if (i->first != j->first || !alg.equal(i->second, j->second)) return false;
  return true;
}

template <class B>
TTElement<B> tt_unit(const BasisAlgebra<B>& alg) {
  TTElement<B> r;
  tt_accumulate(alg, r, {0, 0}, alg.one());
  return r;
}

// (a1 (x) b1)(a2 (x) b2) = sum_i (a1 + a2^i) (x) (b1^i b2) with psi(b1 (x) a2) = sum_i a2^i (x) b1^i.
template <class B>
TTElement<B> tt_mul(const BasisAlgebra<B>& alg, const TwistingMap<B>& psi, const TTElement<B>& x,
                    const TTElement<B>& y) {
  TTElement<B> r;
  for (const auto& [a1, b1] : x.terms)
    for (const auto& [a2, b2] : y.terms)
      for (const auto& [ai, bi] : psi(b1, a2).terms)
        tt_accumulate(alg, r, {a1.first + ai.first, a1.second + ai.second}, alg.mul(bi, b2));
  return r;
}

// The plain flip b (x) a -> a (x) b.
template <class B>
TwistingMap<B> trivial_twist() {
  return [](const B& b, const Z2& a) {
    TTElement<B> r;
    r.terms.emplace(a, b);
    return r;
  };
}

// One verification outcome, serialized into the CLI reports.
struct Check {
  std::string name;
  std::string anchor;
  nlohmann::json inputs;
  bool pass = false;
  std::string detail;
};

nlohmann::json to_json(const Check& c);

// ---- R[Z^2] (x)^psi R[T]^tau / F ----

class PsiTwist {
 public:
  PsiTwist(const ConcreteRing& ring, CharPoly F);
  PsiTwist(const PsiTwist&) = delete;
  PsiTwist& operator=(const PsiTwist&) = delete;

  const ConcreteRing& ring() const { return ring_; }
  const CharPoly& fpoly() const { return F_; }
  const BasisAlgebra<TwistedPoly>& algebra() const { return alg_; }
  const TwistingMap<TwistedPoly>& psi() const { return psi_; }
  const StructureTable& table() const { return *table_; }

  TwistedPoly reduce(const TwistedPoly& p) const;
  // Both branches of psi on b (x) (alpha, beta); they must agree when alpha == beta.
  TTElement<TwistedPoly> psi_lower(const TwistedPoly& b, const Z2& a) const;
  TTElement<TwistedPoly> psi_upper(const TwistedPoly& b, const Z2& a) const;

  // (alpha, beta) (x) sum r_i T^i -> delta_{alpha,beta} * sum r_i [w^i]^i
  HeckeElement<ConcreteRing> E(const TTElement<TwistedPoly>& x) const;
  // Inverse on the symbol [eta]^a (a of the parity of eta).
  TTElement<TwistedPoly> G(const WeylElement& eta, int a) const;
  // G extended linearly to Hecke elements supported in the image of E.
  TTElement<TwistedPoly> G(const HeckeElement<ConcreteRing>& h) const;

  TTElement<TwistedPoly> random(std::mt19937_64& rng, int terms, int box) const;

 private:
  ConcreteRing ring_;
  CharPoly F_;
  std::shared_ptr<const StructureTable> table_;
  BasisAlgebra<TwistedPoly> alg_;
  TwistingMap<TwistedPoly> psi_;
};

// ---- R[Z^2] (x)^zeta H_finite, with H_finite spanned by [1]_f and [w]_g ----

using FiniteHecke = HeckeElement<ConcreteRing>;

class ZetaTwist {
 public:
  explicit ZetaTwist(const ConcreteRing& ring);
  ZetaTwist(const ZetaTwist&) = delete;
  ZetaTwist& operator=(const ZetaTwist&) = delete;

  const ConcreteRing& ring() const { return ring_; }
  const BasisAlgebra<FiniteHecke>& algebra() const { return alg_; }
  const TwistingMap<FiniteHecke>& zeta() const { return zeta_; }
  const StructureTable& table() const { return *table_; }

  // (alpha, beta) (x) h -> [delta_{alpha,beta}] h
  HeckeElement<ConcreteRing> E(const TTElement<FiniteHecke>& x) const;
  // Three-case inverse on [eta]_f, extended linearly.
  TTElement<FiniteHecke> G(const HeckeElement<ConcreteRing>& h) const;

  TTElement<FiniteHecke> random(std::mt19937_64& rng, int terms, int box) const;

 private:
  ConcreteRing ring_;
  std::shared_ptr<const StructureTable> table_;
  BasisAlgebra<FiniteHecke> alg_;
  TwistingMap<FiniteHecke> zeta_;
};

// Right-moved form of [w]_f (x) [eta]^a as a list of (left in H-dagger, right in H_finite).
// Throws InvalidArgument for eta = t^(2b+1), which none of the four shapes covers.
std::vector<std::pair<HeckeElement<ConcreteRing>, FiniteHecke>> big_psi_w(const ZetaTwist& z, const FpMatrix& f,
                                                                         const WeylElement& eta, int a);

// gamma o Psi o (id (x) iota): the composite twisting map R[Z^2] <- H_finite, built from psi and Psi.
TwistingMap<FiniteHecke> psi3_compose(const PsiTwist& p, const ZetaTwist& z);

// ---- verification reports ----

// Round trips on |x|, |y| <= box and multiplicativity on random pairs.
std::vector<Check> iso_E_G(const PsiTwist& p, int box, int pairs, std::uint64_t seed);
std::vector<Check> iso_zeta(const ZetaTwist& z, int box, int pairs, std::uint64_t seed);
// psi3 against zeta on basis pairs with |alpha|, |beta| <= box.
Check psi3_vs_zeta(const PsiTwist& p, const ZetaTwist& z, int box);

// Iwahori-Hecke algebra of the extended affine Weyl group with parameter qpar:
// T_s T_eta = T_{s eta} if the length grows, else (qpar - 1) T_eta + qpar T_{s eta}; t has length 0.
using IwahoriElement = std::map<WeylElement, std::uint32_t>;
IwahoriElement iwahori_mul(const IwahoriElement& a, const IwahoriElement& b, std::uint32_t qpar, std::uint32_t ell);

// Scalar (trivial V, k = 1) algebra against R[W~] when ell | q - 1, against H(W~, -1) when ell | q + 1.
// Throws WrongModularCase otherwise.
std::vector<Check> iwahori_compare(std::uint32_t q, std::uint32_t ell, int max_len = 3);

}  // namespace hecke
