#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hecke/heckealg.hpp"
#include "hecke/twisted.hpp"

namespace hecke::cli {

enum class RepKind { Trivial, Character, Pair };

struct RunConfig {
  std::string command;
  std::uint32_t ell = 2, q = 3;
  int k = 1;
  RepKind rep = RepKind::Trivial;
  int rep_index = 0;
  int degree_bound = 12;
  std::uint64_t seed = 42;
  bool json = false;
  std::string suite = "all";
  int compare_a = 0, compare_b = 0;  // both > 0 turns the comparison on
  std::vector<std::string> symbols;
};

// Throws InvalidArgument unless ell is prime, ell != char F_q, q is a prime power and k is 1 or 2.
void validate(const RunConfig& c);

VSelector selector(const RunConfig& c);

// One parsed "[t^a w w' ...]_name^j" symbol.
struct SymbolExpr {
  WeylElement eta;
  std::string coeff;  // empty for the unit coefficient
  int power = 0;
};

SymbolExpr parse_symbol(const std::string& s);

// ---- verification suites; every check is an engine value against an independent computation ----

std::vector<Check> suite_cases(const CoefficientSystem& cs, std::uint64_t seed);
std::vector<Check> suite_oracle(const CoefficientSystem& cs, int pairs, std::uint64_t seed);
std::vector<Check> suite_iso(const CoefficientSystem& cs, int box, int pairs, std::uint64_t seed);
std::vector<Check> suite_iwahori(std::uint32_t q, std::uint32_t ell);
// Free coefficients with tau = q^(k^2), then the given concrete system.
std::vector<Check> suite_assoc(const CoefficientSystem& cs, int triples, int max_len, std::uint64_t seed);

// All coefficient systems for k = 1 at (q, ell): every cuspidal character and the projective pair.
std::vector<CoefficientSystem> k1_systems(std::uint32_t q, std::uint32_t ell);

// Exit codes: 0 pass, 1 failed check, 2 configuration or parse error.
int cmd_fpoly(const RunConfig& c, std::ostream& out);
int cmd_mul(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out);

}  // namespace hecke::cli
