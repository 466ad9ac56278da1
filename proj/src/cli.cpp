#include "hecke/cli.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "hecke/finhecke.hpp"
#include "hecke/residue.hpp"

namespace hecke::cli {

namespace {

nlohmann::json system_inputs(const CoefficientSystem& cs) {
  return {{"l", cs.ell}, {"q", cs.q}, {"k", cs.k}, {"V", cs.label}, {"dim", cs.dim()}};
}

std::uint32_t tau_of(std::uint32_t q, int k, std::uint32_t ell) {
  Fp t(1, ell);
  for (int i = 0; i < k * k; ++i) t *= Fp(q, ell);
  return t.value();
}

template <class Ring>
HeckeElement<Ring> expected_case(const Ring& ring, const LowCase& c, const typename Ring::Coeff& fg) {
  auto a = hk_scale(ring, ring.tau(), hk_symbol(ring, c.eta * c.delta, fg));
  return hk_add(ring, a, hk_symbol(ring, c.second, ring.mul(ring.tstar_power(1), fg)));
}

template <class Ring>
Check assoc_check(const Ring& ring, const std::string& mode, nlohmann::json inputs, int triples, int max_len,
                  std::uint64_t seed) {
  auto table = structure_table(ring.ell(), ring.tau());
  std::mt19937_64 rng(seed);
  inputs["mode"] = mode;
  inputs["triples"] = triples;
  inputs["max_len"] = max_len;
  inputs["seed"] = seed;
  Check c{"associativity (" + mode + ")", "associativity of the multiplication rule", inputs, true, ""};
  for (int i = 0; i < triples; ++i) {
    auto a = hk_random(ring, rng, 2, max_len), b = hk_random(ring, rng, 2, max_len),
         d = hk_random(ring, rng, 2, max_len);
    auto l = hk_mul(ring, *table, hk_mul(ring, *table, a, b), d);
    auto r = hk_mul(ring, *table, a, hk_mul(ring, *table, b, d));
    if (!hk_equal(ring, l, r) || !hk_well_formed(ring, l)) {
      c.pass = false;
      c.detail = "triple " + std::to_string(i) + ": a = " + to_string(ring, a) + ", b = " + to_string(ring, b) +
                 ", c = " + to_string(ring, d);
      break;
    }
  }
  return c;
}

void emit(const std::string& suite, const std::vector<Check>& checks, bool json, std::ostream& out) {
  if (json) {
    nlohmann::json j = {{"suite", suite}, {"checks", nlohmann::json::array()}};
    for (const auto& c : checks) j["checks"].push_back(to_json(c));
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& c : checks) {
    out << (c.pass ? "pass " : "FAIL ") << c.name << "  " << c.inputs.dump();
    if (!c.detail.empty()) out << "  -- " << c.detail;
    out << "\n";
  }
}

std::string rank_string(const CoefficientSystem& cs) {
  return std::to_string(rank(cs.tstar, cs.ell)) + "/" + std::to_string(cs.dim());
}

}  // namespace

void validate(const RunConfig& c) {
  if (!is_prime(c.ell)) throw Error(ErrorKind::InvalidArgument, std::to_string(c.ell) + " is not prime");
  const std::uint32_t p = prime_of_power(c.q);
  if (!p) throw Error(ErrorKind::InvalidArgument, std::to_string(c.q) + " is not a prime power");
  if (p == c.ell) throw Error(ErrorKind::InvalidArgument, "l must differ from the characteristic of F_q");
  if (c.k != 1 && c.k != 2) throw Error(ErrorKind::InvalidArgument, "k must be 1 or 2");
}

VSelector selector(const RunConfig& c) {
  if (c.rep == RepKind::Pair) return {VSelector::Kind::ProjectivePair, c.rep_index, {}};
  return {VSelector::Kind::Character, c.rep == RepKind::Trivial ? 0 : c.rep_index, {}};
}

SymbolExpr parse_symbol(const std::string& s) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(i) + " in \"" + s + "\"");
  };
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (i >= s.size() || s[i] != '[') fail("expected '['");
  const std::size_t open = ++i;
  while (i < s.size() && s[i] != ']') ++i;
  if (i >= s.size()) fail("missing ']'");
  SymbolExpr r;
  try {
    r.eta = parse_weyl(s.substr(open, i - open));
  } catch (const Error& e) {
    i = open;
    fail(std::string("bad element (") + e.what() + ")");
  }
  ++i;
  bool have_name = false, have_power = false;
  for (skip(); i < s.size(); skip()) {
    if (s[i] == '_' && !have_name) {
      ++i;
      skip();
      bool braced = i < s.size() && s[i] == '{';
      if (braced) ++i;
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
      if (i == start) fail("expected coefficient name");
      r.coeff = s.substr(start, i - start);
      if (braced) {
        if (i >= s.size() || s[i] != '}') fail("expected '}'");
        ++i;
      }
      have_name = true;
    } else if (s[i] == '^' && !have_power) {
      ++i;
      skip();
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start) fail("expected a natural number");
      r.power = std::stoi(s.substr(start, i - start));
      have_power = true;
    } else {
      fail("unexpected character");
    }
  }
  return r;
}

std::vector<CoefficientSystem> k1_systems(std::uint32_t q, std::uint32_t ell) {
  std::vector<CoefficientSystem> r;
  for (int i = 0; i < character_count(q, ell); ++i)
    r.push_back(make_coefficient_system(ell, q, 1, {VSelector::Kind::Character, i, {}}));
  r.push_back(make_coefficient_system(ell, q, 1, {VSelector::Kind::ProjectivePair, 0, {}}));
  return r;
}

std::vector<Check> suite_cases(const CoefficientSystem& cs, std::uint64_t seed) {
  ConcreteRing ring(cs);
  auto table = structure_table(cs.ell, ring.tau());
  std::mt19937_64 rng(seed);
  std::vector<Check> out;
  for (const LowCase& lc : low_cases()) {
    auto in = system_inputs(cs);
    in["case"] = lc.number;
    in["eta"] = to_string(lc.eta);
    in["delta"] = to_string(lc.delta);
    Check c{"case " + std::to_string(lc.number), "eight low-length products", in, true, ""};
    for (int trial = 0; trial < 2 && c.pass; ++trial) {
      auto f = ring.random(grade(lc.eta), rng), g = ring.random(grade(lc.delta), rng);
      auto engine = hk_mul(ring, *table, hk_symbol(ring, lc.eta, f), hk_symbol(ring, lc.delta, g));
      if (!hk_equal(ring, engine, expected_case(ring, lc, ring.mul(f, g)))) {
        c.pass = false;
        c.detail = "engine differs from the closed formula";
      } else if (!hk_equal(ring, engine, oracle_product(ring, lc.eta, lc.delta, f, g).product)) {
        c.pass = false;
        c.detail = "engine differs from the coset-sum oracle";
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Check> suite_oracle(const CoefficientSystem& cs, int pairs, std::uint64_t seed) {
  FiniteParabolic fp(cs);
  std::mt19937_64 rng(seed);
  std::vector<Check> out;
  auto in = system_inputs(cs);
  in["pairs"] = pairs;
  Check conv{"quadratic relation vs convolution", "finite Hecke algebra product", in, true, ""};
  for (int i = 0; i < pairs && conv.pass; ++i) {
    auto a = fin_random(cs, rng), b = fin_random(cs, rng);
    if (!(fin_mul(cs, a, b) == fin_convolve_oracle(fp, a, b, rng, 2))) {
      conv.pass = false;
      conv.detail = "pair " + std::to_string(i);
    }
  }
  out.push_back(conv);

  int expect = 1;
  for (int i = 0; i < cs.k * cs.k; ++i) expect *= static_cast<int>(cs.q);
  const int got = fp.double_coset_size();
  out.push_back({"coset count q^(k^2)", "size of PwP/P", system_inputs(cs), got == expect,
                 std::to_string(got) + " cosets, expected " + std::to_string(expect)});
  return out;
}

std::vector<Check> suite_iso(const CoefficientSystem& cs, int box, int pairs, std::uint64_t seed) {
  ConcreteRing ring(cs);
  PsiTwist p(ring, compute_fpoly(cs));
  ZetaTwist z(ring);
  auto out = iso_E_G(p, box, pairs, seed);
  for (auto& c : iso_zeta(z, box, pairs, seed + 1)) out.push_back(std::move(c));
  out.push_back(psi3_vs_zeta(p, z, 2));
  return out;
}

std::vector<Check> suite_iwahori(std::uint32_t q, std::uint32_t ell) { return iwahori_compare(q, ell); }

std::vector<Check> suite_assoc(const CoefficientSystem& cs, int triples, int max_len, std::uint64_t seed) {
  FreeRing free(cs.ell, cs.tau.value());
  free.generator("f", 0);
  free.generator("g", 1);
  std::vector<Check> out;
  out.push_back(assoc_check(free, "free", {{"l", cs.ell}, {"tau", cs.tau.value()}}, triples, max_len, seed));
  ConcreteRing ring(cs);
  out.push_back(assoc_check(ring, "concrete", system_inputs(cs), triples, max_len, seed + 1));
  return out;
}

int cmd_fpoly(const RunConfig& c, std::ostream& out) {
  if (c.compare_a <= 0 || c.compare_b <= 0) {
    auto cs = make_coefficient_system(c.ell, c.q, c.k, selector(c));
    CharPoly F = compute_fpoly(cs, c.degree_bound);
    if (c.json) {
      out << F.to_json().dump(2) << "\n";
    } else {
      out << "F = " << to_string(F.poly) << "\n";
    }
    return 0;
  }
  // F_{l,q,ab} against F_{l,q^a,b}; a report, never an assertion
  std::uint32_t qa = 1;
  for (int i = 0; i < c.compare_a; ++i) qa *= c.q;
  auto left = make_coefficient_system(c.ell, c.q, c.compare_a * c.compare_b, selector(c));
  auto right = make_coefficient_system(c.ell, qa, c.compare_b, selector(c));
  CharPoly fl = compute_fpoly(left, c.degree_bound), fr = compute_fpoly(right, c.degree_bound);
  const bool same = fl.poly == fr.poly;
  if (c.json) {
    nlohmann::json j = {{"left", fl.to_json()},
                        {"right", fr.to_json()},
                        {"equal", same},
                        {"tstar_rank", {rank_string(left), rank_string(right)}}};
    out << j.dump(2) << "\n";
  } else {
    out << "F(l=" << c.ell << ", q=" << c.q << ", k=" << c.compare_a * c.compare_b << ") = " << to_string(fl.poly)
        << "   [V = " << left.label << ", rank T* = " << rank_string(left) << "]\n";
    out << "F(l=" << c.ell << ", q=" << qa << ", k=" << c.compare_b << ") = " << to_string(fr.poly)
        << "   [V = " << right.label << ", rank T* = " << rank_string(right) << "]\n";
    out << (same ? "equal" : "different") << "\n";
  }
  return 0;
}

int cmd_mul(const RunConfig& c, std::ostream& out) {
  if (c.symbols.size() < 2) throw Error(ErrorKind::InvalidArgument, "mul needs two symbols");
  const std::uint32_t tau = tau_of(c.q, c.k, c.ell);
  FreeRing ring(c.ell, tau);
  ring.set_graded(false);
  auto table = structure_table(c.ell, tau);
  auto element = [&](const std::string& text) {
    SymbolExpr e = parse_symbol(text);
    FreeRing::Word word;
    if (!e.coeff.empty()) word.push_back(ring.generator(e.coeff, grade(e.eta)));
    return hk_symbol(ring, e.eta, ring.monomial(word, e.power));
  };
  auto prod = element(c.symbols[0]);
  for (std::size_t i = 1; i < c.symbols.size(); ++i) prod = hk_mul(ring, *table, prod, element(c.symbols[i]));
  if (c.json) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, coeff] : prod.terms)
      for (const auto& [key, v] : coeff) {
        std::string name;
        for (int g : key.first) name += ring.name(g);
        terms.push_back({{"eta", to_string(e)}, {"power", key.second}, {"coeff", name}, {"scalar", v}});
      }
    out << nlohmann::json{{"tau", tau}, {"terms", terms}}.dump(2) << "\n";
  } else {
    out << render_free(ring, prod) << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  static const std::vector<std::string> suites = {"cases", "oracle", "iso", "iwahori", "assoc"};
  const bool all = c.suite == "all";
  if (!all && std::find(suites.begin(), suites.end(), c.suite) == suites.end())
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + c.suite + "'");
  auto want = [&](const char* s) { return all || c.suite == s; };
  std::vector<Check> checks;
  auto append = [&](std::vector<Check> v) {
    for (auto& x : v) checks.push_back(std::move(x));
  };
  if (want("cases")) {
    if (c.k != 1) throw Error(ErrorKind::InvalidArgument, "the cases suite runs with k = 1");
    for (const auto& cs : k1_systems(c.q, c.ell)) append(suite_cases(cs, c.seed));
  }
  const auto cs = make_coefficient_system(c.ell, c.q, c.k, selector(c));
  if (want("oracle")) append(suite_oracle(cs, 20, c.seed));
  if (want("iso")) append(suite_iso(cs, 3, 100, c.seed));
  if (want("iwahori")) {
    const bool applies = (c.q - 1) % c.ell == 0 || (c.q + 1) % c.ell == 0;
    if (!all || applies) append(suite_iwahori(c.q, c.ell));
  }
  if (want("assoc")) append(suite_assoc(cs, 100, 6, c.seed));
  emit(c.suite, checks, c.json, out);
  for (const auto& x : checks)
    if (!x.pass) return 1;
  return 0;
}

}  // namespace hecke::cli
