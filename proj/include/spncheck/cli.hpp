#pragma once

// Command implementations behind the spncheck executable. Each returns the
// exit code and the text destined for stdout and stderr, so they can be
// driven directly from tests.
//
// Exit codes: 0 success / pass, 1 negative verdict, 2 input error,
// 3 the request exceeds a degree cap.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spncheck/assumptions.hpp"
#include "spncheck/cipher.hpp"
#include "spncheck/generators.hpp"
#include "spncheck/permgrp.hpp"
#include "spncheck/report.hpp"
#include "spncheck/specfile.hpp"

namespace spncheck::cli {

struct CommandOutput {
  int exit_code = 0;
  std::string out;
  std::string err;
};

enum class GenMode { trho, composed };

struct AssumptionsArgs {
  std::string spec_path;
  std::optional<int> r;
  unsigned threads = 1;
};

struct GroupArgs {
  std::string spec_path;
  Method method = Method::giant;
  GenMode gen_mode = GenMode::trho;
  int rounds = 2;
  int count = 50;
  std::uint64_t seed = 0;
  std::size_t samples = 500;
  bool with_blocks = false;
  bool classify = true;  // false for the `blocks` verb
  std::optional<std::string> dump_perm;
  unsigned threads = 1;
};

enum class GenKind { toy, trapdoor, aes };

struct GenArgs {
  GenKind kind = GenKind::toy;
  int m = 5;
  int nt = 2;
  std::optional<std::uint32_t> poly;
  int planted_dim = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
};

inline std::string error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() + "\n";
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

inline Json header(const char* command, const SpecFile& f) {
  return Json{{"command", command},
              {"tool_version", kToolVersion},
              {"input_digest", digest_hex(f)},
              {"spec", {{"m", f.spec.m()}, {"nt", f.spec.nt()}, {"d", f.spec.d()}}}};
}

inline CommandOutput cmd_assumptions(const AssumptionsArgs& args) {
  CommandOutput res;
  try {
    const SpecFile f = load_spec(args.spec_path);
    const auto report = full_report(f.spec, args.r, args.threads);
    Json j = header("assumptions", f);
    j["assumptions"] = to_json(report);
    res.out = render(j);
    res.exit_code = report.overall ? 0 : 1;
  } catch (const SpecError& e) {
    res = {2, "", error_json("input", e.what())};
  } catch (const std::invalid_argument& e) {
    res = {2, "", error_json("input", e.what())};
  }
  return res;
}

/// 8-byte magic "SPNPERM1", then 2^d little-endian 4-byte images.
inline void write_perm_dump(const std::string& path, const Permutation& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write permutation dump '" + path + "'");
  out.write("SPNPERM1", 8);
  for (Point x : p.images()) {
    const unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                                static_cast<unsigned char>(x >> 16), static_cast<unsigned char>(x >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
  }
}

inline std::string perm_digest(const Permutation& p) {
  std::string bytes;
  bytes.reserve(p.degree() * 4);
  for (Point x : p.images())
    for (int k = 0; k < 4; ++k) bytes.push_back(static_cast<char>((x >> (8 * k)) & 0xFF));
  return gf2::to_hex(static_cast<Vec>(fnv1a64(bytes)), 64);
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::order: return "order";
    case Method::giant: return "giant";
    case Method::both: return "both";
  }
  return "?";
}

inline CommandOutput cmd_group(const GroupArgs& args) {
  CommandOutput res;
  try {
    const SpecFile f = load_spec(args.spec_path);
    Json j = header(args.classify ? "group" : "blocks", f);
    j["seed"] = args.seed;
    j["method"] = args.classify ? Json(method_name(args.method)) : Json(nullptr);
    j["gen_mode"] = args.gen_mode == GenMode::trho
                        ? Json{{"mode", "trho"}}
                        : Json{{"mode", "composed"}, {"rounds", args.rounds}, {"count", args.count}};
    try {
      require_materializable(f.spec);
    } catch (const CapExceeded& e) {
      j["error"] = e.what();
      res.out = render(j);
      res.err = error_json("cap", e.what());
      res.exit_code = 3;
      return res;
    }
    const GeneratorMode mode = args.gen_mode == GenMode::trho
                                   ? GeneratorMode{TAndRho{}}
                                   : GeneratorMode{Composed{args.rounds, args.count, args.seed}};
    auto gens = group_generators(f.spec, mode);
    if (args.dump_perm) write_perm_dump(*args.dump_perm, round_permutation(f.spec, 0));
    const std::size_t degree = std::size_t{1} << f.spec.d();
    j["degree"] = degree;
    Json digests = Json::array();
    for (const auto& g : gens) digests.push_back(perm_digest(g));
    j["generator_digests"] = digests;

    GroupHandle handle(degree, std::move(gens), args.seed);
    if (!args.classify) {
      // Primitivity only.
      Json a{{"transitive", is_transitive(handle)}};
      PrimitivityResult p;
      if (a["transitive"].get<bool>()) p = is_primitive(handle, args.threads);
      else p.note = "group is intransitive";
      a["primitivity"] = to_json(p, degree);
      j["analysis"] = a;
      res.out = render(j);
      res.exit_code = p.verdict == PrimitivityVerdict::primitive ? 0
                      : p.verdict == PrimitivityVerdict::imprimitive ? 1
                      : a["transitive"].get<bool>() ? 3 : 1;
      return res;
    }
    ClassifyOptions opt;
    opt.method = args.method;
    opt.samples = args.samples;
    opt.check_primitivity = args.with_blocks;
    opt.threads = args.threads;
    const auto analysis = classify(handle, opt);
    j["analysis"] = to_json(analysis, degree);
    res.out = render(j);
    if (analysis.classification == Classification::alternating) res.exit_code = 0;
    else if (analysis.capped && analysis.classification == Classification::inconclusive) res.exit_code = 3;
    else res.exit_code = 1;
  } catch (const SpecError& e) {
    res = {2, "", error_json("input", e.what())};
  } catch (const std::invalid_argument& e) {
    res = {2, "", error_json("input", e.what())};
  }
  return res;
}

inline CommandOutput cmd_gen(const GenArgs& args) {
  CommandOutput res;
  try {
    std::optional<SpecFile> f;
    switch (args.kind) {
      case GenKind::toy: {
        const std::uint32_t poly = args.poly.value_or(gf::default_poly(args.m));
        auto toy = gen_toy_inversion_cipher(args.m, args.nt, poly, args.seed);
        Json meta{{"generator", "toy"}, {"seed", args.seed}, {"accepted_attempt", toy.attempts}};
        if (check_a2(toy.spec).valid_r.empty())
          meta["warning"] = "no valid r: the inversion S-box has an invariant subfield of codimension <= 2r for every admissible r";
        f = SpecFile{std::move(toy.spec), poly, std::move(meta)};
        break;
      }
      case GenKind::trapdoor: {
        auto t = gen_trapdoor_cipher(args.m, args.nt, args.planted_dim, args.seed);
        Json meta{{"generator", "trapdoor"},
                  {"seed", args.seed},
                  {"planted_dim", args.planted_dim},
                  {"planted", subspace_json(t.planted)}};
        f = SpecFile{std::move(t.spec), std::nullopt, std::move(meta)};
        break;
      }
      case GenKind::aes:
        f = SpecFile{gen_aes_cipher(), 0x11B, Json{{"generator", "aes"}}};
        break;
    }
    const std::string text = serialize_spec(*f);
    if (args.out_path) {
      std::ofstream out(*args.out_path, std::ios::binary);
      if (!out) throw SpecError("cannot write '" + *args.out_path + "'");
      out << text;
    } else {
      res.out = text;
    }
  } catch (const std::runtime_error& e) {
    // SpecError is an input problem; anything else is an exhausted retry budget.
    if (dynamic_cast<const SpecError*>(&e)) res = {2, "", error_json("input", e.what())};
    else res = {1, "", error_json("generator", e.what())};
  } catch (const std::invalid_argument& e) {
    res = {2, "", error_json("input", e.what())};
  }
  return res;
}

}  // namespace spncheck::cli
