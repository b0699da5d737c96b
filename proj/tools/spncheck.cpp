#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "spncheck/cli.hpp"
#include "spncheck/parallel.hpp"

using namespace spncheck;

namespace {

int emit(const cli::CommandOutput& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

std::uint32_t parse_poly(const std::string& s) {
  return static_cast<std::uint32_t>(gf2::parse_hex(s, 32));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spncheck: group-theoretic checks for key-alternating block ciphers"};
  app.require_subcommand(1);
  unsigned threads = threads_from_env();
  app.add_option("--threads", threads, "worker threads (default: SPNCHECK_THREADS or 1)")->check(CLI::PositiveNumber);

  cli::AssumptionsArgs a_args;
  int r_override = 0;
  auto* assumptions = app.add_subcommand("assumptions", "check the cipher conditions on a spec file");
  assumptions->add_option("spec", a_args.spec_path, "spec JSON")->required();
  auto* r_opt = assumptions->add_option("--r", r_override, "report only this r");

  cli::GroupArgs g_args;
  std::string method = "giant";
  std::string gen_mode = "trho";
  auto* group = app.add_subcommand("group", "compute and classify the round-function group");
  auto* blocks = app.add_subcommand("blocks", "primitivity only (group --with-blocks --method giant, no classification)");
  for (auto* sub : {group, blocks}) {
    sub->add_option("spec", g_args.spec_path, "spec JSON")->required();
    sub->add_option("--gen-mode", gen_mode, "trho | composed")->check(CLI::IsMember({"trho", "composed"}));
    sub->add_option("--rounds", g_args.rounds, "rounds per composed generator");
    sub->add_option("--count", g_args.count, "number of composed generators");
    sub->add_option("--seed", g_args.seed, "seed for composed keys and random elements");
    sub->add_option("--dump-perm", g_args.dump_perm, "write ρ as an SPNPERM1 binary table");
  }
  group->add_option("--method", method, "order | giant | both")->check(CLI::IsMember({"order", "giant", "both"}));
  group->add_option("--samples", g_args.samples, "random elements for the giant test");
  group->add_flag("--with-blocks", g_args.with_blocks, "also decide primitivity");

  cli::GenArgs gen_args;
  std::string kind;
  std::string poly;
  auto* gen = app.add_subcommand("gen", "write a generated cipher spec");
  gen->add_option("kind", kind, "toy | trapdoor | aes")->required()->check(CLI::IsMember({"toy", "trapdoor", "aes"}));
  gen->add_option("--m", gen_args.m, "S-box width");
  gen->add_option("--nt", gen_args.nt, "number of blocks");
  gen->add_option("--poly", poly, "field polynomial, hex (toy)");
  gen->add_option("--planted-dim", gen_args.planted_dim, "planted subspace dimension (trapdoor)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (assumptions->parsed()) {
    if (r_opt->count() > 0) a_args.r = r_override;
    a_args.threads = threads;
    return emit(cli::cmd_assumptions(a_args));
  }
  if (group->parsed() || blocks->parsed()) {
    static const std::map<std::string, Method> methods{
        {"order", Method::order}, {"giant", Method::giant}, {"both", Method::both}};
    g_args.method = methods.at(method);
    g_args.gen_mode = gen_mode == "trho" ? cli::GenMode::trho : cli::GenMode::composed;
    g_args.threads = threads;
    if (blocks->parsed()) {
      g_args.classify = false;
      g_args.with_blocks = true;
      g_args.method = Method::giant;
    }
    return emit(cli::cmd_group(g_args));
  }
  gen_args.kind = kind == "toy" ? cli::GenKind::toy : kind == "trapdoor" ? cli::GenKind::trapdoor : cli::GenKind::aes;
  try {
    if (!poly.empty()) gen_args.poly = parse_poly(poly);
  } catch (const std::exception& e) {
    std::cerr << cli::error_json("input", e.what());
    return 2;
  }
  return emit(cli::cmd_gen(gen_args));
}
