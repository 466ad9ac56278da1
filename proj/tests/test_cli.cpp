#include <doctest.h>

#include <sstream>

#include "hecke/cli.hpp"

using namespace hecke;
using namespace hecke::cli;

namespace {

std::string run(int (*cmd)(const RunConfig&, std::ostream&), RunConfig c, int expect_code = 0) {
  std::ostringstream out;
  CHECK(cmd(c, out) == expect_code);
  return out.str();
}

RunConfig config(std::uint32_t ell, std::uint32_t q, int k = 1) {
  RunConfig c;
  c.ell = ell;
  c.q = q;
  c.k = k;
  return c;
}

}  // namespace

TEST_CASE("symbol grammar") {
  auto s = parse_symbol(" [t^2 w' w]_f^3 ");
  CHECK(s.eta == parse_weyl("t^2 w' w"));
  CHECK(s.coeff == "f");
  CHECK(s.power == 3);
  s = parse_symbol("[w]^1_{gh}");
  CHECK(s.coeff == "gh");
  CHECK(s.power == 1);
  CHECK(parse_symbol("[1]").eta == weyl_identity());
  CHECK(parse_symbol("[ t^-1 ]").eta == weyl_t(-1));

  for (const char* bad : {"w", "[w", "[w]^", "[w]_", "[w]^1^2", "[x]", "[w] z"}) {
    CAPTURE(bad);
    try {
      parse_symbol(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
  }
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(config(3, 4)));
  CHECK_THROWS_AS(validate(config(4, 3)), Error);
  CHECK_THROWS_AS(validate(config(2, 4)), Error);
  CHECK_THROWS_AS(validate(config(3, 6)), Error);
  CHECK_THROWS_AS(validate(config(3, 4, 3)), Error);
}

TEST_CASE("fpoly") {
  CHECK(run(cmd_fpoly, config(3, 4)) == "F = T\n");
  CHECK(run(cmd_fpoly, config(5, 4)) == "F = T^2 + 1\n");
  auto c = config(3, 4);
  c.rep = RepKind::Pair;
  CHECK(run(cmd_fpoly, c) == "F = T^2\n");

  c = config(3, 2);
  c.compare_a = 2;
  c.compare_b = 1;
  auto text = run(cmd_fpoly, c);
  CHECK(text.find("k=2) = T ") != std::string::npos);
  CHECK(text.find("equal") != std::string::npos);
  // a differing pair is reported, not rejected
  c.ell = 5;
  CHECK(run(cmd_fpoly, c).find("different") != std::string::npos);
}

TEST_CASE("mul") {
  auto c = config(5, 4);
  c.symbols = {"[w]", "[w]"};
  CHECK(run(cmd_mul, c) == "4·[1] + [w]^1\n");
  c.symbols = {"[1]", "[w w']"};
  CHECK(run(cmd_mul, c) == "[w w']\n");
  c.symbols = {"[t^2 w' w]", "[w]"};
  CHECK(run(cmd_mul, c) == "4·[t^2 w'] + [t^2 w' w]^1\n");
  c.symbols = {"[w]_f", "[w]_g"};
  CHECK(run(cmd_mul, c) == "4·[1]_{fg} + [w]^1_{fg}\n");
  c.json = true;
  auto j = nlohmann::json::parse(run(cmd_mul, c));
  CHECK(j["tau"] == 4);
  CHECK(j["terms"].size() == 2);
  c.symbols = {"[w", "[w]"};
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_mul(c, out), Error);
}

TEST_CASE("verify suites and exit codes") {
  auto c = config(2, 3);
  c.suite = "cases";
  CHECK(run(cmd_verify, c).find("FAIL") == std::string::npos);
  c.suite = "iwahori";
  c.json = true;
  auto j = nlohmann::json::parse(run(cmd_verify, c));
  CHECK(j["suite"] == "iwahori");
  for (const auto& chk : j["checks"]) {
    CHECK(chk["status"] == "pass");
    CHECK(chk.contains("anchor"));
    CHECK(chk.contains("inputs"));
    CHECK(chk.contains("detail"));
  }
  c.suite = "assoc";
  c.seed = 42;
  auto a = run(cmd_verify, c), b = run(cmd_verify, c);
  CHECK(a == b);

  // multiplicativity of E needs tau = 1 and T* = 0; here neither holds, so the suite exits 1
  auto d = config(5, 4);
  d.suite = "iso";
  CHECK(run(cmd_verify, d, 1).find("FAIL E is multiplicative") != std::string::npos);

  d.suite = "nonsense";
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_verify(d, out), Error);
  d = config(7, 4);
  d.suite = "iwahori";
  CHECK_THROWS_AS(cmd_verify(d, out), Error);
}
