#pragma once

// JSON renderings of assumption reports and group analyses. Objects use
// sorted keys and integers or strings only, so equal inputs give equal bytes.

#include <bit>
#include <string>
#include <vector>

#include "json.hpp"
#include "spncheck/assumptions.hpp"
#include "spncheck/gf2lin.hpp"
#include "spncheck/permgrp.hpp"

namespace spncheck {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";

inline Json subspace_json(const gf2::Subspace& s) {
  Json basis = Json::array();
  for (Vec b : s.basis()) basis.push_back(gf2::to_hex(b, s.ambient_dim()));
  return Json{{"basis", basis}, {"dim", s.dim()}, {"codim", s.codim()}};
}

inline Json to_json(const A1Result& a1) {
  Json w = Json::array();
  for (const auto& x : a1.witnesses)
    w.push_back({{"block", x.block},
                 {"element", x.element},
                 {"image", x.image},
                 {"kind", x.kind == A1Witness::Kind::zero_not_fixed ? "zero_not_fixed" : "not_involution"}});
  return Json{{"pass", a1.pass}, {"witnesses", w}};
}

inline Json to_json(const A2Result& a2) {
  Json cands = Json::array();
  for (const auto& c : a2.candidates) {
    Json j{{"r", c.r}, {"a2a", c.a2a}, {"a2b", c.a2b}};
    if (c.a2a_block)
      j["a2a_witness"] = {{"block", *c.a2a_block},
                          {"v", c.a2a_v},
                          {"image_size", c.a2a_size},
                          {"reason", c.a2a_coset ? "coset" : "too_small"}};
    if (c.a2b_block)
      j["a2b_witness"] = {{"block", *c.a2b_block}, {"subspace", subspace_json(*c.a2b_subspace)}};
    cands.push_back(std::move(j));
  }
  Json blocks = Json::array();
  for (std::size_t i = 0; i < a2.profiles.size(); ++i) {
    const auto& p = a2.profiles[i];
    Json inv = Json::array();
    for (const auto& w : p.invariant) inv.push_back(subspace_json(w));
    Json b{{"block", i + 1},
           {"min_image_size", p.min_image_size},
           {"min_image_v", p.min_image_v},
           {"invariant_subspaces", inv}};
    b["coset_v"] = p.coset_v ? Json(*p.coset_v) : Json(nullptr);
    blocks.push_back(std::move(b));
  }
  return Json{{"candidates", cands}, {"blocks", blocks}, {"valid_r", a2.valid_r}};
}

inline Json to_json(const A3Result& a3) {
  Json j{{"pass", a3.pass}};
  if (a3.chain)
    j["chain"] = {{"U", block_list(a3.chain->u)},
                  {"U1", block_list(a3.chain->u1)},
                  {"U2", block_list(a3.chain->u2)}};
  return j;
}

inline Json to_json(const AssumptionReport& r) {
  Json j{{"a1", to_json(r.a1)},
         {"a2", to_json(r.a2)},
         {"a3", to_json(r.a3)},
         {"valid_r", r.valid_r},
         {"overall", r.overall}};
  j["r_override"] = r.r_override ? Json(*r.r_override) : Json(nullptr);
  return j;
}

inline std::string big_to_string(const BigInt& v) { return v.str(); }

inline Json to_json(const PrimitivityResult& p, std::size_t degree) {
  Json j{{"verdict", to_string(p.verdict)}, {"runs", p.runs}};
  if (!p.note.empty()) j["note"] = p.note;
  if (p.verdict != PrimitivityVerdict::imprimitive) return j;
  const auto& b0 = p.blocks.front();
  j["block_size"] = b0.size();
  j["num_blocks"] = p.blocks.size();
  j["block_through_0"] = b0;
  j["blocks"] = p.blocks;
  // When the degree is a power of two, report whether the block is a subspace.
  if (degree != 0 && (degree & (degree - 1)) == 0) {
    const int d = std::countr_zero(degree);
    std::vector<Vec> pts(b0.begin(), b0.end());
    if (auto c = gf2::as_coset(pts, d); c && c->offset == 0)
      j["block_subspace"] = subspace_json(c->direction);
  }
  return j;
}

inline Json to_json(const GroupAnalysis& a, std::size_t degree) {
  Json j{{"transitive", a.transitive},
         {"all_generators_even", a.all_generators_even},
         {"classification", to_string(a.classification)},
         {"notes", a.notes},
         {"primitivity", to_json(a.primitivity, degree)}};
  if (a.order) {
    j["order"] = big_to_string(*a.order);
    const BigInt full = factorial(degree);
    j["order_is_half_factorial"] = *a.order * 2 == full;
    j["order_is_factorial"] = *a.order == full;
  } else {
    j["order"] = nullptr;
  }
  if (a.giant)
    j["giant"] = {{"verdict", a.giant->verdict == GiantVerdict::contains_alt ? "contains_alt" : "inconclusive"},
                  {"samples_drawn", a.giant->samples_drawn},
                  {"cycle_length", a.giant->cycle_length}};
  else
    j["giant"] = nullptr;
  return j;
}

}  // namespace spncheck
