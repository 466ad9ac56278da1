#include <iostream>

#include <CLI11.hpp>

#include "hecke/cli.hpp"

namespace {

void add_common(CLI::App* sub, hecke::cli::RunConfig& cfg) {
  sub->add_option("-l,--ell", cfg.ell, "prime l, the coefficient characteristic");
  sub->add_option("-q", cfg.q, "size of the residue field");
  sub->add_option("-k", cfg.k, "block size (1 or 2)");
  sub->add_flag("--json", cfg.json, "machine-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hecke::cli;
  RunConfig cfg;
  std::vector<std::string> rep{"trivial"};
  std::vector<int> compare;

  CLI::App app{"Hecke algebras of level-0 GL_2k blocks over F_l"};
  app.require_subcommand(1);

  auto* fpoly = app.add_subcommand("fpoly", "characteristic polynomial F");
  add_common(fpoly, cfg);
  fpoly->add_option("--rep", rep, "trivial | char N | pair [N]")->expected(1, 2);
  fpoly->add_option("--compare", compare, "compare F for (q, a*b) with (q^a, b)")->expected(2);
  fpoly->add_option("--degree-bound", cfg.degree_bound, "search bound on deg F");

  auto* mul = app.add_subcommand("mul", "multiply symbols [t^a w w' ...]_f^j");
  add_common(mul, cfg);
  std::string lhs, rhs;
  // plain strings: a vector option would read "[w]" as a bracketed list
  mul->add_option("lhs", lhs, "left symbol")->required();
  mul->add_option("rhs", rhs, "right symbol")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg);
  verify->add_option("--suite", cfg.suite, "cases | oracle | iso | iwahori | assoc | all");
  verify->add_option("--rep", rep, "trivial | char N | pair [N]")->expected(1, 2);
  verify->add_option("--seed", cfg.seed, "seed for random checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.symbols = {lhs, rhs};

  try {
    if (rep[0] == "trivial") {
      cfg.rep = RepKind::Trivial;
    } else if (rep[0] == "char") {
      cfg.rep = RepKind::Character;
    } else if (rep[0] == "pair") {
      cfg.rep = RepKind::Pair;
    } else {
      throw hecke::Error(hecke::ErrorKind::InvalidArgument, "unknown representation '" + rep[0] + "'");
    }
    if (rep.size() > 1) cfg.rep_index = std::stoi(rep[1]);
    if (compare.size() == 2) {
      cfg.compare_a = compare[0];
      cfg.compare_b = compare[1];
    }
    validate(cfg);
    if (cfg.command == "fpoly") return cmd_fpoly(cfg, std::cout);
    if (cfg.command == "mul") return cmd_mul(cfg, std::cout);
    return cmd_verify(cfg, std::cout);
  } catch (const hecke::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
