#include "hecke/polyfp.hpp"

#include <algorithm>

#include "hecke/error.hpp"

namespace hecke::poly {

namespace {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly derivative(const Poly& a, std::uint32_t p) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<std::uint32_t>(i % p * a[i] % p));
  trim(d);
  return d;
}

// a(X) = b(X^p) for squarefree-decomposition in characteristic p; returns b.
Poly pth_root(const Poly& a, std::uint32_t p) {
  Poly b;
  for (std::size_t i = 0; i < a.size(); i += p) b.push_back(a[i]);
  trim(b);
  return b;
}

std::vector<Factor> squarefree(const Poly& a, std::uint32_t p) {
  std::vector<Factor> out;
  Poly f = monic(a, p);
  if (degree(f) <= 0) return out;
  Poly d = derivative(f, p);
  if (d.empty()) {
    for (auto& g : squarefree(pth_root(f, p), p)) out.push_back({g.f, g.multiplicity * static_cast<int>(p)});
    return out;
  }
  Poly c = gcd(f, d, p), w, r;
  divmod(f, c, p, w, r);
  int i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(w, c, p), z;
    divmod(w, y, p, z, r);
    if (degree(z) > 0) out.push_back({z, i});
    w = y;
    Poly c2;
    divmod(c, y, p, c2, r);
    c = c2;
    ++i;
  }
  if (degree(c) > 0)
    for (auto& g : squarefree(pth_root(c, p), p)) out.push_back({g.f, g.multiplicity * static_cast<int>(p)});
  return out;
}

// Splits a squarefree monic product of irreducibles of degree d.
void equal_degree(const Poly& f, int d, std::uint32_t p, std::mt19937_64& rng, std::vector<Poly>& out) {
  int n = degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
  for (;;) {
    Poly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly g;
    if (p == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      Poly t = a, s = a;
      for (int i = 1; i < d; ++i) {
        s = mod(mul(s, s, p), f, p);
        t = add(t, s, p);
      }
      g = gcd(f, t, p);
    } else {
      std::uint64_t e = 1;
      for (int i = 0; i < d; ++i) e *= p;
      Poly b = powmod(a, (e - 1) / 2, f, p);
      b = sub(b, Poly{1}, p);
      g = gcd(f, b, p);
    }
    if (degree(g) > 0 && degree(g) < n) {
      Poly h, r;
      divmod(f, g, p, h, r);
      equal_degree(monic(g, p), d, p, rng, out);
      equal_degree(monic(h, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p;
  trim(c);
  return c;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + p - b[i] % p) % p;
  trim(c);
  return c;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  Poly r(c.begin(), c.end());
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint32_t c, std::uint32_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * c % p);
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, std::uint32_t p, Poly& q, Poly& r) {
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  std::uint32_t lead = inv(b.back(), p);
  while (r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{r.back()} * lead % p);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + std::uint64_t{p - c} * b[i]) % p);
    trim(r);
  }
  trim(q);
}

Poly mod(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly monic(const Poly& a, std::uint32_t p) {
  Poly r = a;
  trim(r);
  if (r.empty()) return r;
  return scale(r, inv(r.back(), p), p);
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = mod(base, m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), m, p);
    e >>= 1;
    if (e) base = mod(mul(base, base, p), m, p);
  }
  return r;
}

Poly ext_gcd(const Poly& a, const Poly& b, std::uint32_t p, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, q, r);
    Poly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint32_t c = r0.empty() ? 1 : inv(r0.back(), p);
  s = scale(s0, c, p);
  t = scale(t0, c, p);
  return scale(r0, c, p);
}

std::vector<Factor> factor(const Poly& a, std::uint32_t p, std::mt19937_64& rng) {
  std::vector<Factor> out;
  for (auto& sf : squarefree(a, p)) {
    Poly f = sf.f;
    Poly xp{0, 1};
    Poly x{0, 1};
    for (int d = 1; 2 * d <= degree(f); ++d) {
      xp = powmod(xp, p, f, p);
      Poly g = gcd(f, sub(xp, x, p), p);
      if (degree(g) > 0) {
        std::vector<Poly> parts;
        equal_degree(g, d, p, rng, parts);
        for (auto& h : parts) out.push_back({h, sf.multiplicity});
        Poly q, r;
        divmod(f, g, p, q, r);
        f = q;
        xp = mod(xp, f, p);
      }
    }
    if (degree(f) > 0) out.push_back({monic(f, p), sf.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) { return x.f < y.f; });
  std::vector<Factor> merged;
  for (auto& f : out) {
    if (!merged.empty() && merged.back().f == f.f)
      merged.back().multiplicity += f.multiplicity;
    else
      merged.push_back(f);
  }
  return merged;
}

}  // namespace hecke::poly
