#include "hecke/twisted.hpp"

#include <sstream>

namespace hecke {

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},
          {"anchor", c.anchor},
          {"inputs", c.inputs},
          {"status", c.pass ? "pass" : "fail"},
          {"detail", c.detail}};
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return Fp(a, p).inverse().value(); }

WeylElement diag(const Z2& a) { return weyl_delta(a.first, a.second); }

std::string z2_string(const Z2& a) {
  return "(" + std::to_string(a.first) + "," + std::to_string(a.second) + ")";
}

// Writes c = sum_a r_a (T*)^a over a of the given parity, a < bound; any solution.
std::vector<std::pair<int, std::uint32_t>> star_coordinates(const ConcreteRing& ring, const FpMatrix& c, int parity,
                                                            int bound) {
  const std::uint32_t p = ring.ell();
  std::vector<int> powers;
  for (int a = parity; a < bound; a += 2) powers.push_back(a);
  const Eigen::Index n2 = c.size();
  FpMatrix sys = zero_matrix(n2, static_cast<Eigen::Index>(powers.size()), p);
  for (std::size_t i = 0; i < powers.size(); ++i) sys.col(i) = ring.tstar_power(powers[i]).reshaped();
  FpVector rhs = c.reshaped();
  auto x = solve(sys, rhs, p);
  if (!x) throw Error(ErrorKind::BasisMismatch, "coefficient is not a combination of powers of T*");
  std::vector<std::pair<int, std::uint32_t>> r;
  for (std::size_t i = 0; i < powers.size(); ++i)
    if (!(*x)(i).is_zero()) r.emplace_back(powers[i], (*x)(i).value());
  return r;
}

}  // namespace

// ---- psi ----

PsiTwist::PsiTwist(const ConcreteRing& ring, CharPoly F)
    : ring_(ring.system()), F_(std::move(F)), table_(structure_table(ring.ell(), ring.tau())) {
  alg_.mul = [this](const TwistedPoly& a, const TwistedPoly& b) { return reduce(tp_mul(a, b)); };
  alg_.add = [](const TwistedPoly& a, const TwistedPoly& b) { return a + b; };
  alg_.scale = [this](std::uint32_t s, const TwistedPoly& a) { return Fp(s, ring_.ell()) * a; };
  alg_.is_zero = [](const TwistedPoly& a) { return a.is_zero(); };
  alg_.equal = [](const TwistedPoly& a, const TwistedPoly& b) { return a == b; };
  alg_.one = [this] { return TwistedPoly::monomial(0, F_.poly.tau); };
  psi_ = [this](const TwistedPoly& b, const Z2& a) {
    return a.first <= a.second ? psi_lower(b, a) : psi_upper(b, a);
  };
}

TwistedPoly PsiTwist::reduce(const TwistedPoly& p) const { return tp_reduce(p, F_).rep; }

TTElement<TwistedPoly> PsiTwist::psi_lower(const TwistedPoly& b, const Z2& a) const {
  const Fp tau = F_.poly.tau;
  std::vector<Fp> even(b.coeffs.size(), Fp(0, tau.modulus())), odd = even;
  for (int i = 0; i <= b.degree(); ++i) (i % 2 ? odd : even)[i] = b.coeffs[i];
  TTElement<TwistedPoly> r;
  tt_accumulate(alg_, r, a, reduce(TwistedPoly(even, tau)));
  tt_accumulate(alg_, r, {a.second, a.first}, reduce(TwistedPoly(odd, tau)));
  return r;
}

TTElement<TwistedPoly> PsiTwist::psi_upper(const TwistedPoly& b, const Z2& a) const {
  // r_{-1} = 0; the even part picks up r_{i-1}, the odd part becomes r_i (T^i - T^(i+1))
  const Fp tau = F_.poly.tau;
  const int n = b.degree() + 2;
  std::vector<Fp> even(std::max(n, 0), Fp(0, tau.modulus())), odd = even;
  for (int i = 0; i <= b.degree(); ++i) {
    if (i % 2 == 0) {
      even[i] += b.coeffs[i];
    } else {
      even[i + 1] += b.coeffs[i];
      odd[i] += b.coeffs[i];
      odd[i + 1] -= b.coeffs[i];
    }
  }
  TTElement<TwistedPoly> r;
  tt_accumulate(alg_, r, a, reduce(TwistedPoly(even, tau)));
  tt_accumulate(alg_, r, {a.second, a.first}, reduce(TwistedPoly(odd, tau)));
  return r;
}

HeckeElement<ConcreteRing> PsiTwist::E(const TTElement<TwistedPoly>& x) const {
  HeckeElement<ConcreteRing> r;
  for (const auto& [a, b] : x.terms)
    r = hk_add(ring_, r, hk_mul(ring_, *table_, hk_symbol(ring_, diag(a), ring_.one()), hdagger_embed(ring_, b)));
  return r;
}

TTElement<TwistedPoly> PsiTwist::G(const WeylElement& eta, int a) const {
  const Fp tau = F_.poly.tau;
  const Z2 xy{eta.x, eta.y};
  TTElement<TwistedPoly> r;
  if (!eta.w || eta.x >= eta.y) {
    tt_accumulate(alg_, r, xy, reduce(TwistedPoly::monomial(a, tau)));
  } else {
    TwistedPoly d = TwistedPoly::monomial(a, tau) - TwistedPoly::monomial(a + 1, tau);
    tt_accumulate(alg_, r, xy, reduce(tau.inverse() * d));
  }
  return r;
}

TTElement<TwistedPoly> PsiTwist::G(const HeckeElement<ConcreteRing>& h) const {
  TTElement<TwistedPoly> r;
  for (const auto& [eta, c] : h.terms)
    for (const auto& [a, s] : star_coordinates(ring_, c, grade(eta), F_.degree() + 2))
      r = tt_add(alg_, r, tt_scale(alg_, s, G(eta, a)));
  return r;
}

TTElement<TwistedPoly> PsiTwist::random(std::mt19937_64& rng, int terms, int box) const {
  std::uniform_int_distribution<int> pos(-box, box);
  std::uniform_int_distribution<std::uint32_t> val(0, ring_.ell() - 1);
  TTElement<TwistedPoly> r;
  for (int t = 0; t < terms; ++t) {
    std::vector<Fp> c(F_.degree());
    for (auto& v : c) v = Fp(val(rng), ring_.ell());
    tt_accumulate(alg_, r, {pos(rng), pos(rng)}, reduce(TwistedPoly(c, F_.poly.tau)));
  }
  return r;
}

// ---- zeta ----

ZetaTwist::ZetaTwist(const ConcreteRing& ring) : ring_(ring.system()), table_(structure_table(ring.ell(), ring.tau())) {
  alg_.mul = [this](const FiniteHecke& a, const FiniteHecke& b) { return hk_mul(ring_, *table_, a, b); };
  alg_.add = [this](const FiniteHecke& a, const FiniteHecke& b) { return hk_add(ring_, a, b); };
  alg_.scale = [this](std::uint32_t s, const FiniteHecke& a) { return hk_scale(ring_, s, a); };
  alg_.is_zero = [](const FiniteHecke& a) { return a.terms.empty(); };
  alg_.equal = [this](const FiniteHecke& a, const FiniteHecke& b) { return hk_equal(ring_, a, b); };
  alg_.one = [this] { return hk_symbol(ring_, weyl_identity(), ring_.one()); };
  zeta_ = [this](const FiniteHecke& b, const Z2& a) {
    TTElement<FiniteHecke> r;
    const Z2 ba{a.second, a.first};
    for (const auto& [e, f] : b.terms) {
      if (e == weyl_identity()) {
        tt_accumulate(alg_, r, a, hk_symbol(ring_, e, f));
      } else if (e == weyl_w()) {
        auto wf = hk_symbol(ring_, e, f);
        if (a.first <= a.second) {
          tt_accumulate(alg_, r, ba, wf);
        } else {
          auto one_f1 = hk_symbol(ring_, weyl_identity(), ring_.mul(ring_.tstar_power(1), f));
          tt_accumulate(alg_, r, a, one_f1);
          tt_accumulate(alg_, r, ba, hk_sub(ring_, wf, one_f1));
        }
      } else {
        throw Error(ErrorKind::BasisMismatch, "finite Hecke element supported outside {1, w}");
      }
    }
    return r;
  };
}

HeckeElement<ConcreteRing> ZetaTwist::E(const TTElement<FiniteHecke>& x) const {
  HeckeElement<ConcreteRing> r;
  for (const auto& [a, h] : x.terms)
    r = hk_add(ring_, r, hk_mul(ring_, *table_, hk_symbol(ring_, diag(a), ring_.one()), h));
  return r;
}

TTElement<FiniteHecke> ZetaTwist::G(const HeckeElement<ConcreteRing>& h) const {
  const std::uint32_t tau_inv = inv_mod(ring_.tau(), ring_.ell());
  TTElement<FiniteHecke> r;
  for (const auto& [eta, f] : h.terms) {
    const Z2 xy{eta.x, eta.y};
    if (!eta.w) {
      tt_accumulate(alg_, r, xy, hk_symbol(ring_, weyl_identity(), f));
    } else if (ends_on_w(eta)) {
      tt_accumulate(alg_, r, xy, hk_symbol(ring_, weyl_w(), f));
    } else {
      auto one_f1 = hk_symbol(ring_, weyl_identity(), ring_.mul(ring_.tstar_power(1), f));
      tt_accumulate(alg_, r, xy, hk_scale(ring_, tau_inv, hk_sub(ring_, hk_symbol(ring_, weyl_w(), f), one_f1)));
    }
  }
  return r;
}

TTElement<FiniteHecke> ZetaTwist::random(std::mt19937_64& rng, int terms, int box) const {
  std::uniform_int_distribution<int> pos(-box, box);
  TTElement<FiniteHecke> r;
  for (int t = 0; t < terms; ++t) {
    auto h = hk_add(ring_, hk_symbol(ring_, weyl_identity(), ring_.random(0, rng)),
                    hk_symbol(ring_, weyl_w(), ring_.random(1, rng)));
    tt_accumulate(alg_, r, {pos(rng), pos(rng)}, h);
  }
  return r;
}

// ---- Psi and psi3 ----

std::vector<std::pair<HeckeElement<ConcreteRing>, FiniteHecke>> big_psi_w(const ZetaTwist& z, const FpMatrix& f,
                                                                         const WeylElement& eta, int a) {
  const ConcreteRing& ring = z.ring();
  const std::uint32_t tau = ring.tau(), tau_inv = inv_mod(tau, ring.ell());
  const WeylElement w = weyl_w(), wew = w * eta * w;
  auto wf = hk_symbol(ring, w, f);
  auto one_f1 = hk_symbol(ring, weyl_identity(), ring.mul(ring.tstar_power(1), f));
  auto sym = [&](const WeylElement& e) { return hk_power_symbol(ring, e, a); };
  switch (shape_class(eta)) {
    case ShapeClass::A:
      return {{sym(wew), wf}};
    case ShapeClass::B:
      return {{hk_scale(ring, tau, sym(wew)), wf}, {sym(eta), one_f1}};
    case ShapeClass::C:
      return {{hk_scale(ring, tau_inv, sym(wew)), hk_sub(ring, wf, one_f1)}};
    case ShapeClass::D:
      return {{sym(wew), hk_sub(ring, wf, one_f1)}, {sym(eta), one_f1}};
    case ShapeClass::PureT:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, to_string(eta) + " has none of the four shapes");
}

TwistingMap<FiniteHecke> psi3_compose(const PsiTwist& p, const ZetaTwist& z) {
  return [&p, &z](const FiniteHecke& b, const Z2& a) {
    const ConcreteRing& ring = z.ring();
    const auto& alg = z.algebra();
    const WeylElement eta = diag(a);
    std::vector<std::pair<HeckeElement<ConcreteRing>, FiniteHecke>> parts;
    for (const auto& [e, f] : b.terms) {
      if (e == weyl_identity()) {
        parts.emplace_back(hk_symbol(ring, eta, ring.one()), hk_symbol(ring, e, f));
      } else {
        auto more = big_psi_w(z, f, eta, 0);
        parts.insert(parts.end(), more.begin(), more.end());
      }
    }
    // gamma: sum a_i (x) s_i (x) b_i -> sum a_i (x) s_i.b_i
    TTElement<FiniteHecke> r;
    for (const auto& [left, right] : parts)
      for (const auto& [xy, s] : p.G(left).terms)
        tt_accumulate(alg, r, xy, hk_mul(ring, z.table(), hdagger_embed(ring, s), right));
    return r;
  };
}

// ---- reports ----

namespace {

template <class B>
Check twisting_axioms(const BasisAlgebra<B>& alg, const TwistingMap<B>& psi, const std::vector<B>& bs, int box,
                      const std::string& name) {
  Check c{name, "twisting map unit axioms", {{"box", box}}, true, ""};
  for (int x = -box; x <= box && c.pass; ++x)
    for (int y = -box; y <= box && c.pass; ++y) {
      TTElement<B> expect;
      tt_accumulate(alg, expect, {x, y}, alg.one());
      if (!tt_equal(alg, psi(alg.one(), {x, y}), expect)) {
        c.pass = false;
        c.detail = "psi(1 (x) " + z2_string({x, y}) + ") != " + z2_string({x, y}) + " (x) 1";
      }
    }
  for (std::size_t i = 0; i < bs.size() && c.pass; ++i) {
    TTElement<B> expect;
    tt_accumulate(alg, expect, {0, 0}, bs[i]);
    if (!tt_equal(alg, psi(bs[i], {0, 0}), expect)) {
      c.pass = false;
      c.detail = "psi(b (x) 1) != 1 (x) b for basis element " + std::to_string(i);
    }
  }
  return c;
}

}  // namespace

std::vector<Check> iso_E_G(const PsiTwist& p, int box, int pairs, std::uint64_t seed) {
  const ConcreteRing& ring = p.ring();
  const auto& alg = p.algebra();
  const int d = p.fpoly().degree();
  const Fp tau = p.fpoly().poly.tau;
  const nlohmann::json sys = {{"system", ring.system().label}, {"F", to_string(p.fpoly().poly)}, {"box", box}};
  std::vector<Check> out;

  std::vector<TwistedPoly> basis;
  for (int i = 0; i < d; ++i) basis.push_back(TwistedPoly::monomial(i, tau));
  out.push_back(twisting_axioms(alg, p.psi(), basis, box, "psi unit axioms"));

  Check overlap{"psi branches agree on the diagonal", "alpha = beta consistency", sys, true, ""};
  for (int x = -box; x <= box && overlap.pass; ++x)
    for (int i = 0; i < d && overlap.pass; ++i)
      if (!tt_equal(alg, p.psi_lower(basis[i], {x, x}), p.psi_upper(basis[i], {x, x}))) {
        overlap.pass = false;
        overlap.detail = "T^" + std::to_string(i) + " at " + z2_string({x, x});
      }
  out.push_back(overlap);

  Check ge{"G o E = id", "first twisting isomorphism, inverse map", sys, true, ""};
  for (int x = -box; x <= box && ge.pass; ++x)
    for (int y = -box; y <= box && ge.pass; ++y)
      for (int i = 0; i < d && ge.pass; ++i) {
        TTElement<TwistedPoly> b;
        tt_accumulate(alg, b, {x, y}, basis[i]);
        if (!tt_equal(alg, p.G(p.E(b)), b)) {
          ge.pass = false;
          ge.detail = z2_string({x, y}) + " (x) T^" + std::to_string(i);
        }
      }
  out.push_back(ge);

  Check eg{"E o G = id", "first twisting isomorphism, inverse map", sys, true, ""};
  for (int x = -box; x <= box && eg.pass; ++x)
    for (int y = -box; y <= box && eg.pass; ++y)
      for (bool fl : {false, true})
        for (int a = fl ? 1 : 0; a <= d && eg.pass; a += 2) {
          const WeylElement eta{x, y, fl};
          auto sym = hk_power_symbol(ring, eta, a);
          if (!hk_equal(ring, p.E(p.G(eta, a)), sym)) {
            eg.pass = false;
            eg.detail = "[" + to_string(eta) + "]^" + std::to_string(a);
          }
        }
  out.push_back(eg);

  std::mt19937_64 rng(seed);
  Check mul{"E is multiplicative", "first twisting isomorphism, algebra map", sys, true, ""};
  mul.inputs["pairs"] = pairs;
  mul.inputs["seed"] = seed;
  for (int i = 0; i < pairs && mul.pass; ++i) {
    auto x = p.random(rng, 2, 2), y = p.random(rng, 2, 2);
    auto lhs = p.E(tt_mul(alg, p.psi(), x, y));
    auto rhs = hk_mul(ring, p.table(), p.E(x), p.E(y));
    if (!hk_equal(ring, lhs, rhs)) {
      mul.pass = false;
      mul.detail = "pair " + std::to_string(i) + ": " + to_string(ring, lhs) + " vs " + to_string(ring, rhs);
    }
  }
  out.push_back(mul);
  return out;
}

std::vector<Check> iso_zeta(const ZetaTwist& z, int box, int pairs, std::uint64_t seed) {
  const ConcreteRing& ring = z.ring();
  const CoefficientSystem& cs = ring.system();
  const auto& alg = z.algebra();
  const nlohmann::json sys = {{"system", cs.label}, {"box", box}};
  std::vector<Check> out;

  std::vector<FiniteHecke> basis;
  for (int g = 0; g < 2; ++g)
    for (const auto& f : cs.basis(g)) basis.push_back(hk_symbol(ring, g ? weyl_w() : weyl_identity(), f));
  out.push_back(twisting_axioms(alg, z.zeta(), basis, box, "zeta unit axioms"));

  Check ge{"G' o E' = id", "decomposition over R[Z^2], inverse map", sys, true, ""};
  for (int x = -box; x <= box && ge.pass; ++x)
    for (int y = -box; y <= box && ge.pass; ++y)
      for (std::size_t i = 0; i < basis.size() && ge.pass; ++i) {
        TTElement<FiniteHecke> b;
        tt_accumulate(alg, b, {x, y}, basis[i]);
        if (!tt_equal(alg, z.G(z.E(b)), b)) {
          ge.pass = false;
          ge.detail = z2_string({x, y}) + " (x) basis element " + std::to_string(i);
        }
      }
  out.push_back(ge);

  Check eg{"E' o G' = id", "decomposition over R[Z^2], inverse map", sys, true, ""};
  for (int x = -box; x <= box && eg.pass; ++x)
    for (int y = -box; y <= box && eg.pass; ++y)
      for (bool fl : {false, true})
        for (const auto& f : cs.basis(fl ? 1 : 0)) {
          auto sym = hk_symbol(ring, WeylElement{x, y, fl}, f);
          if (!hk_equal(ring, z.E(z.G(sym)), sym)) {
            eg.pass = false;
            eg.detail = "[" + to_string(WeylElement{x, y, fl}) + "]_f";
            break;
          }
        }
  out.push_back(eg);

  std::mt19937_64 rng(seed);
  Check mul{"E' is multiplicative", "decomposition over R[Z^2], algebra map", sys, true, ""};
  mul.inputs["pairs"] = pairs;
  mul.inputs["seed"] = seed;
  for (int i = 0; i < pairs && mul.pass; ++i) {
    auto x = z.random(rng, 2, 2), y = z.random(rng, 2, 2);
    auto lhs = z.E(tt_mul(alg, z.zeta(), x, y));
    auto rhs = hk_mul(ring, z.table(), z.E(x), z.E(y));
    if (!hk_equal(ring, lhs, rhs)) {
      mul.pass = false;
      mul.detail = "pair " + std::to_string(i) + ": " + to_string(ring, lhs) + " vs " + to_string(ring, rhs);
    }
  }
  out.push_back(mul);
  return out;
}

Check psi3_vs_zeta(const PsiTwist& p, const ZetaTwist& z, int box) {
  const ConcreteRing& ring = z.ring();
  const CoefficientSystem& cs = ring.system();
  const auto psi3 = psi3_compose(p, z);
  Check c{"psi3 equals zeta", "iterated twisted products", {{"system", cs.label}, {"box", box}}, true, ""};
  for (int g = 0; g < 2 && c.pass; ++g)
    for (const auto& f : cs.basis(g)) {
      auto b = hk_symbol(ring, g ? weyl_w() : weyl_identity(), f);
      for (int x = -box; x <= box && c.pass; ++x)
        for (int y = -box; y <= box && c.pass; ++y)
          if (!tt_equal(z.algebra(), psi3(b, {x, y}), z.zeta()(b, {x, y}))) {
            c.pass = false;
            c.detail = std::string(g ? "[w]_f" : "[1]_f") + " (x) " + z2_string({x, y});
          }
    }
  return c;
}

// ---- scalar Iwahori comparison ----

IwahoriElement iwahori_mul(const IwahoriElement& a, const IwahoriElement& b, std::uint32_t qpar, std::uint32_t ell) {
  auto add = [ell](IwahoriElement& m, const WeylElement& e, std::uint64_t c) {
    std::uint32_t& v = m[e];
    v = static_cast<std::uint32_t>((v + c) % ell);
    if (v == 0) m.erase(e);
  };
  IwahoriElement out;
  for (const auto& [eta, c] : a) {
    const WeylWord word = normal_form(eta);
    IwahoriElement cur = b;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
      const WeylElement s = letter_element(*it);
      IwahoriElement next;
      for (const auto& [e, v] : cur) {
        if (length(s * e) > length(e)) {
          add(next, s * e, v);
        } else {
          add(next, e, std::uint64_t(v) * ((qpar + ell - 1) % ell));
          add(next, s * e, std::uint64_t(v) * qpar);
        }
      }
      cur = std::move(next);
    }
    const WeylElement t = weyl_t(word.alpha);
    for (const auto& [e, v] : cur) add(out, t * e, std::uint64_t(v) * c);
  }
  return out;
}

std::vector<Check> iwahori_compare(std::uint32_t q, std::uint32_t ell, int max_len) {
  const bool minus = (q - 1) % ell == 0, plus = (q + 1) % ell == 0;
  if (!minus && !plus)
    throw Error(ErrorKind::WrongModularCase,
                std::to_string(ell) + " divides neither " + std::to_string(q - 1) + " nor " + std::to_string(q + 1));
  const CoefficientSystem cs = make_coefficient_system(ell, q, 1, {VSelector::Kind::Character, 0, {}});
  const ConcreteRing ring(cs);
  const auto table = structure_table(ell, ring.tau());
  const nlohmann::json in = {{"q", q}, {"l", ell}, {"max_len", max_len}};

  std::vector<WeylElement> els;
  for (int y = -max_len - 1; y <= max_len + 1; ++y)
    for (int a = -2; a <= 2; ++a)
      for (bool f : {false, true}) {
        WeylElement e = weyl_t(a) * WeylElement{-y, y, f};
        if (length(e) <= max_len) els.push_back(e);
      }

  auto scalar_product = [&](const WeylElement& eta, const WeylElement& delta) {
    IwahoriElement r;
    auto h = hk_mul(ring, *table, hk_symbol(ring, eta, ring.one()), hk_symbol(ring, delta, ring.one()));
    for (const auto& [e, c] : h.terms) r[e] = c(0, 0).value();
    return r;
  };

  std::vector<Check> out;
  Check tstar{"T* acts by q - 1", "scalar Iwahori example", in, true, ""};
  const std::uint32_t qm1 = (q + ell - 1) % ell;
  tstar.pass = cs.tstar(0, 0).value() == qm1;
  tstar.detail = "T* = " + std::to_string(cs.tstar(0, 0).value());
  out.push_back(tstar);

  Check unit{"identity maps to identity", "scalar Iwahori example", in, true, ""};
  for (const auto& e : els) {
    IwahoriElement expect{{e, 1}};
    if (scalar_product(weyl_identity(), e) != expect || scalar_product(e, weyl_identity()) != expect) {
      unit.pass = false;
      unit.detail = to_string(e);
      break;
    }
  }
  out.push_back(unit);

  auto compare = [&](const std::string& name, std::uint32_t qpar) {
    Check c{name, "scalar Iwahori example", in, true, ""};
    c.inputs["parameter"] = qpar;
    for (const auto& a : els) {
      for (const auto& b : els) {
        if (scalar_product(a, b) != iwahori_mul({{a, 1}}, {{b, 1}}, qpar, ell)) {
          c.pass = false;
          c.detail = "[" + to_string(a) + "][" + to_string(b) + "]";
          break;
        }
      }
      if (!c.pass) break;
    }
    c.detail = c.pass ? std::to_string(els.size() * els.size()) + " products match" : "mismatch at " + c.detail;
    return c;
  };
  if (minus) {
    // group algebra of the extended affine Weyl group: T_s^2 = 1
    Check g{"group algebra R[W~]", "scalar Iwahori example", in, true, ""};
    for (const auto& a : els) {
      for (const auto& b : els)
        if (scalar_product(a, b) != IwahoriElement{{a * b, 1}}) {
          g.pass = false;
          g.detail = "mismatch at [" + to_string(a) + "][" + to_string(b) + "]";
          break;
        }
      if (!g.pass) break;
    }
    if (g.pass) g.detail = std::to_string(els.size() * els.size()) + " products match";
    out.push_back(g);
  }
  if (plus) out.push_back(compare("Hecke algebra H(W~, -1)", ell - 1));
  return out;
}

}  // namespace hecke
