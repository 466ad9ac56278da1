#include <doctest.h>

#include <random>

#include "hecke/tpoly.hpp"

using namespace hecke;

namespace {

TwistedPoly tp(std::vector<int> c, std::uint32_t tau, std::uint32_t ell) {
  std::vector<Fp> v;
  for (int x : c) v.emplace_back(x, ell);
  return TwistedPoly(v, Fp(tau, ell));
}

TwistedPoly random_tp(std::mt19937_64& rng, int maxdeg, std::uint32_t tau, std::uint32_t ell) {
  std::uniform_int_distribution<int> deg(0, maxdeg), c(0, static_cast<int>(ell) - 1);
  std::vector<int> v(deg(rng) + 1);
  for (int& x : v) x = c(rng);
  return tp(v, tau, ell);
}

// Product computed from the monomial table entry by entry.
TwistedPoly table_mul(const TwistedPoly& a, const TwistedPoly& b) {
  TwistedPoly r({}, a.tau);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) {
      TwistedPoly m = (i % 2 && j % 2) ? a.tau * TwistedPoly::monomial(i + j, a.tau) + TwistedPoly::monomial(i + j + 1, a.tau)
                                       : TwistedPoly::monomial(i + j, a.tau);
      r = r + (a.coeffs[i] * b.coeffs[j]) * m;
    }
  return r;
}

CharPoly charpoly(std::vector<int> c, std::uint32_t tau, std::uint32_t ell) { return {ell, 0, 1, "", tp(c, tau, ell)}; }

}  // namespace

TEST_CASE("monomial rule") {
  CHECK(tp_mul(tp({0, 1}, 1, 5), tp({0, 1}, 1, 5)) == tp({0, 0, 1, 1}, 1, 5));
  CHECK(tp_mul(tp({0, 0, 1}, 3, 5), tp({0, 0, 0, 1}, 3, 5)) == tp({0, 0, 0, 0, 0, 1}, 3, 5));
  CHECK(tp_mul(tp({1, 1}, 2, 5), tp({1, 1}, 2, 5)) == tp({1, 2, 2, 1}, 2, 5));
  CHECK_THROWS_AS(tp_mul(tp({1}, 2, 5), tp({1}, 3, 5)), Error);
  CHECK(to_string(tp({1, 2, 2, 1}, 2, 5)) == "T^3 + 2*T^2 + 2*T + 1");
}

TEST_CASE("bilinear expansion agrees with the monomial table") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_tp(rng, 6, 2, 7), b = random_tp(rng, 6, 2, 7);
    CHECK(tp_mul(a, b) == table_mul(a, b));
  }
}

TEST_CASE("commutative, associative, unital") {
  std::mt19937_64 rng(11);
  TwistedPoly one = tp({1}, 3, 5);
  for (int i = 0; i < 300; ++i) {
    auto a = random_tp(rng, 5, 3, 5), b = random_tp(rng, 5, 3, 5), c = random_tp(rng, 5, 3, 5);
    CHECK(tp_mul(a, b) == tp_mul(b, a));
    CHECK(tp_mul(tp_mul(a, b), c) == tp_mul(a, tp_mul(b, c)));
    CHECK(tp_mul(one, a) == a);
  }
}

TEST_CASE("degree bound of a product") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    auto a = random_tp(rng, 5, 4, 5), b = random_tp(rng, 5, 4, 5);
    if (a.is_zero() || b.is_zero()) continue;
    int da = a.degree(), db = b.degree();
    bool jump = da % 2 == 1 && db % 2 == 1;
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    // odd * odd products of lower terms can cancel the top term when the degrees are not both odd
    if (jump)
      CHECK(tp_mul(a, b).degree() == da + db + 1);
    else
      CHECK(tp_mul(a, b).degree() <= da + db);
  }
}

TEST_CASE("localization is a ring homomorphism") {
  std::mt19937_64 rng(13);
  for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 250; ++i) {
      std::uint32_t tau = 1 + static_cast<std::uint32_t>(rng() % (ell - 1));
      auto a = random_tp(rng, 6, tau, ell), b = random_tp(rng, 6, tau, ell);
      CHECK(local_equal(tp_localize(tp_mul(a, b)), local_mul(tp_localize(a), tp_localize(b), tau, ell), tau, ell));
    }
  }
  auto t2 = tp_localize(tp({0, 0, 1}, 2, 5));
  CHECK(t2.den == 1);
  CHECK(t2.num == poly::Poly{0, 0, 1});
  CHECK(tp_localize(tp({0, 1}, 2, 5)).num == poly::Poly{0, 1});
}

TEST_CASE("localization is injective on low degrees") {
  // distinct monomials up to degree 8 have independent images
  for (std::uint32_t ell : {3u, 5u}) {
    std::mt19937_64 rng(ell);
    for (int i = 0; i < 200; ++i) {
      auto a = random_tp(rng, 8, 1, ell);
      if (a.is_zero()) continue;
      CHECK(!local_equal(tp_localize(a), tp_localize(tp({}, 1, ell)), 1, ell));
    }
  }
}

TEST_CASE("reduction modulo a monic generator") {
  auto sq = charpoly({0, 0, 1}, 3, 5);
  CHECK(tp_reduce(tp({0, 0, 1}, 3, 5), sq).rep.is_zero());
  CHECK(tp_reduce(tp({0, 0, 0, 1}, 3, 5), sq).rep.is_zero());
  auto f = charpoly({1, 0, 1}, 4, 5);
  CHECK(tp_reduce(tp({0, 0, 1}, 4, 5), f).rep == tp({4}, 4, 5));
  CHECK(quotient_basis_ok(f, 10));
  CHECK(quotient_basis_ok(sq, 10));
  CHECK(quotient_basis_ok(charpoly({0, 1}, 1, 3), 10));
}

TEST_CASE("reduction is linear and multiplicative") {
  std::mt19937_64 rng(17);
  auto f = charpoly({2, 1, 0, 1}, 2, 5);
  REQUIRE(quotient_basis_ok(f, 12));
  for (int i = 0; i < 100; ++i) {
    auto a = random_tp(rng, 6, 2, 5), b = random_tp(rng, 6, 2, 5);
    auto ra = tp_reduce(a, f).rep, rb = tp_reduce(b, f).rep;
    CHECK(tp_reduce(a + b, f).rep == ra + rb);
    CHECK(tp_reduce(tp_mul(a, b), f).rep == tp_reduce(tp_mul(ra, rb), f).rep);
    // multiples of f reduce to zero
    CHECK(tp_reduce(tp_mul(a, f.poly), f).rep.is_zero());
  }
}

TEST_CASE("characteristic polynomial") {
  auto trivial = VSelector{VSelector::Kind::Character, 0, {}};
  auto pair = VSelector{VSelector::Kind::ProjectivePair, 0, {}};

  CharPoly f1 = compute_fpoly(make_coefficient_system(3, 4, 1, trivial));
  CHECK(f1.poly == tp({0, 1}, 1, 3));

  CharPoly f2 = compute_fpoly(make_coefficient_system(5, 4, 1, trivial));
  CHECK(f2.poly == tp({1, 0, 1}, 4, 5));
  CHECK(to_string(f2.poly) == "T^2 + 1");

  auto cs = make_coefficient_system(3, 4, 1, pair);
  REQUIRE(!is_zero(cs.tstar));
  CharPoly f3 = compute_fpoly(cs);
  CHECK(f3.poly == tp({0, 0, 1}, 1, 3));

  auto j = f2.to_json();
  CHECK(j["coeffs"] == nlohmann::json({1, 0, 1}));
  CHECK(j["l"] == 5);

  // substituting the generator kills both parities
  for (auto* f : {&f1, &f2, &f3}) {
    auto sys = make_coefficient_system(f->ell, f->q, 1, f == &f3 ? pair : trivial);
    auto [e, o] = substitute_tstar(sys, f->poly);
    CHECK(is_zero(e));
    CHECK(is_zero(o));
    CHECK(quotient_basis_ok(*f, 12));
  }
}
