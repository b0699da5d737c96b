#pragma once

// Cipher spec files (JSON).
//
//   {"m": 5, "nt": 2,
//    "sboxes": [[0, 1, ...], ...],          nt permutations of [0, 2^m)
//    "lambda": ["0123", ...],               d big-endian hex masks; entry j = image of e_j
//    "field_poly": "25",                    optional, hex
//    "meta": {...}}                         optional, free-form provenance

#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spncheck/cipher.hpp"
#include "spncheck/gf2field.hpp"
#include "spncheck/gf2lin.hpp"

namespace spncheck {

using Json = nlohmann::json;

/// Malformed input: bad JSON, schema violation, or an invalid cipher.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecFile {
  CipherSpec spec;
  std::optional<std::uint32_t> field_poly;
  Json meta;  // null when absent
};

inline std::string hex_u32(std::uint32_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

inline Json to_json(const SpecFile& f) {
  const CipherSpec& s = f.spec;
  Json j;
  j["m"] = s.m();
  j["nt"] = s.nt();
  Json boxes = Json::array();
  for (const auto& b : s.sboxes()) boxes.push_back(b.table());
  j["sboxes"] = std::move(boxes);
  Json cols = Json::array();
  for (Vec c : s.lambda().cols()) cols.push_back(gf2::to_hex(c, s.d()));
  j["lambda"] = std::move(cols);
  if (f.field_poly) j["field_poly"] = hex_u32(*f.field_poly);
  if (!f.meta.is_null()) j["meta"] = f.meta;
  return j;
}

namespace detail {

inline int require_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("missing key '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw SpecError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace detail

inline SpecFile spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "m" && key != "nt" && key != "sboxes" && key != "lambda" && key != "field_poly" &&
        key != "meta")
      throw SpecError("unknown key '" + key + "'");
  const int m = detail::require_int(j, "m");
  const int nt = detail::require_int(j, "nt");
  if (m < 1 || m > 16 || nt < 1 || m * nt > gf2::kMaxDim)
    throw SpecError("m and nt out of range (need m*nt <= 128)");
  const int d = m * nt;

  if (!j.contains("sboxes") || !j["sboxes"].is_array()) throw SpecError("'sboxes' must be an array");
  if (j["sboxes"].size() != static_cast<std::size_t>(nt)) throw SpecError("'sboxes' must have nt entries");
  std::vector<SBox> sboxes;
  for (std::size_t i = 0; i < j["sboxes"].size(); ++i) {
    const Json& t = j["sboxes"][i];
    if (!t.is_array()) throw SpecError("sboxes[" + std::to_string(i) + "] must be an array");
    std::vector<std::uint32_t> table;
    for (const Json& e : t) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
        throw SpecError("sboxes[" + std::to_string(i) + "] entries must be non-negative integers");
      table.push_back(e.get<std::uint32_t>());
    }
    try {
      sboxes.emplace_back(m, std::move(table));
    } catch (const std::invalid_argument& e) {
      throw SpecError("sboxes[" + std::to_string(i) + "]: " + e.what());
    }
  }

  if (!j.contains("lambda") || !j["lambda"].is_array()) throw SpecError("'lambda' must be an array");
  if (j["lambda"].size() != static_cast<std::size_t>(d)) throw SpecError("'lambda' must have d = m*nt entries");
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < j["lambda"].size(); ++i) {
    const Json& c = j["lambda"][i];
    if (!c.is_string()) throw SpecError("lambda[" + std::to_string(i) + "] must be a hex string");
    try {
      cols.push_back(gf2::parse_hex(c.get<std::string>(), d));
    } catch (const std::invalid_argument& e) {
      throw SpecError("lambda[" + std::to_string(i) + "]: " + e.what());
    }
  }

  SpecFile f{[&] {
               try {
                 return CipherSpec(m, nt, std::move(sboxes), MixingLayer(d, std::move(cols)));
               } catch (const std::invalid_argument& e) {
                 throw SpecError(e.what());
               }
             }(),
             std::nullopt, nullptr};

  if (j.contains("field_poly")) {
    if (!j["field_poly"].is_string()) throw SpecError("'field_poly' must be a hex string");
    try {
      const auto poly = static_cast<std::uint32_t>(gf2::parse_hex(j["field_poly"].get<std::string>(), 32));
      gf::FieldSpec check(m, poly);
      f.field_poly = poly;
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("field_poly: ") + e.what());
    }
  }
  if (j.contains("meta")) f.meta = j["meta"];
  return f;
}

inline SpecFile parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  return spec_from_json(j);
}

inline SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot read spec file '" + path + "'");
  return parse_spec(std::string(std::istreambuf_iterator<char>(in), {}));
}

/// Spec files are written as 2-space-indented JSON with sorted keys and a
/// trailing newline.
inline std::string serialize_spec(const SpecFile& f) { return to_json(f).dump(2) + "\n"; }

/// Compact, key-sorted serialization; the input to the report digest.
inline std::string canonical_bytes(const SpecFile& f) { return to_json(f).dump(); }

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string digest_hex(const SpecFile& f) {
  const std::uint64_t h = fnv1a64(canonical_bytes(f));
  return gf2::to_hex(static_cast<Vec>(h), 64);
}

}  // namespace spncheck
