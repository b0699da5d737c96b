#pragma once

// Seeded cipher specimens: desk-scale inversion ciphers, ciphers with a
// planted block system, and the AES-128 round in the γλ normal form.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spncheck/assumptions.hpp"
#include "spncheck/cipher.hpp"
#include "spncheck/gf2field.hpp"
#include "spncheck/gf2lin.hpp"

namespace spncheck {

namespace detail {

inline std::vector<Vec> columns_of(int d, auto&& fn) {
  std::vector<Vec> cols;
  for (int j = 0; j < d; ++j) cols.push_back(fn(gf2::unit(j)));
  return cols;
}

}  // namespace detail

struct ToyCipher {
  CipherSpec spec;
  std::uint64_t seed;
  int attempts;  // candidates drawn, the last one accepted
};

inline constexpr int kToyRetryBudget = 1000;

/// Inversion S-boxes in every block; λ is a block-circulant matrix over
/// GF(2^m) with nonzero entries followed by a rotation of the blocks.
/// Candidates are drawn until λ is invertible and A3 holds.
inline ToyCipher gen_toy_inversion_cipher(int m, int nt, std::uint32_t poly, std::uint64_t mix_seed) {
  const gf::FieldSpec field(m, poly);
  const SBox inv = gf::inversion_sbox(field);
  const std::vector<SBox> sboxes(static_cast<std::size_t>(nt), inv);
  const int d = m * nt;
  if (nt < 2 || d > gf2::kMaxDim) throw std::invalid_argument("toy cipher needs nt >= 2 and m*nt <= 128");
  std::mt19937_64 rng(mix_seed);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, field.size() - 1);
  for (int attempt = 1; attempt <= kToyRetryBudget; ++attempt) {
    std::vector<std::uint32_t> row(static_cast<std::size_t>(nt));
    for (auto& c : row) c = nonzero(rng);
    // Block i of the input feeds block (j + 1) mod nt with coefficient row[(j - i) mod nt].
    auto apply = [&](Vec x) {
      Vec out = 0;
      for (int j = 0; j < nt; ++j) {
        std::uint32_t acc = 0;
        for (int i = 0; i < nt; ++i) {
          const auto xi = static_cast<std::uint32_t>((x >> (i * m)) & gf2::low_mask(m));
          acc ^= field.mul(xi, row[static_cast<std::size_t>(((j - i) % nt + nt) % nt)]);
        }
        out |= Vec{acc} << (((j + 1) % nt) * m);
      }
      return out;
    };
    auto cols = detail::columns_of(d, apply);
    if (gf2::Subspace::span(cols, d).dim() != d) continue;
    CipherSpec spec(m, nt, sboxes, MixingLayer(d, std::move(cols)));
    if (!check_a3(spec).pass) continue;
    return ToyCipher{std::move(spec), mix_seed, attempt};
  }
  throw std::runtime_error("toy generator: no candidate passed within the retry budget");
}

struct TrapdoorCipher {
  CipherSpec spec;
  gf2::Subspace planted;
};

namespace detail {

inline gf2::Subspace random_subspace(int d, int dim, std::mt19937_64& rng) {
  gf2::Subspace s(d);
  while (s.dim() < dim) s.insert(static_cast<Vec>(rng()) & gf2::low_mask(d));
  return s;
}

// Involution on `points` chosen uniformly among pairings; keeps `fixed` fixed
// when it is a member.
inline void random_involution_on(std::vector<std::uint32_t> points, std::vector<std::uint32_t>& table,
                                 std::mt19937_64& rng, std::optional<std::uint32_t> fixed) {
  if (fixed) std::erase(points, *fixed);
  std::shuffle(points.begin(), points.end(), rng);
  for (std::size_t k = 0; k + 1 < points.size(); k += 2) {
    table[points[k]] = points[k + 1];
    table[points[k + 1]] = points[k];
  }
  if (points.size() % 2 == 1) table[points.back()] = points.back();
  if (fixed) table[*fixed] = *fixed;
}

// An involution on GF(2)^m fixing 0 that permutes the cosets of u.
inline SBox coset_preserving_sbox(int m, const gf2::Subspace& u, std::mt19937_64& rng) {
  const std::uint32_t size = std::uint32_t{1} << m;
  std::vector<std::vector<std::uint32_t>> cosets;
  std::vector<std::uint32_t> rep_index(size, UINT32_MAX);
  for (std::uint32_t x = 0; x < size; ++x) {
    const auto rep = static_cast<std::uint32_t>(u.reduce(x));
    if (rep_index[rep] == UINT32_MAX) {
      rep_index[rep] = static_cast<std::uint32_t>(cosets.size());
      cosets.emplace_back();
    }
    cosets[rep_index[rep]].push_back(x);
  }
  // cosets[0] is u itself (it contains 0 and is discovered first).
  std::vector<std::uint32_t> table(size);
  std::vector<std::uint32_t> quotient(cosets.size());
  for (std::uint32_t c = 0; c < quotient.size(); ++c) quotient[c] = c;
  std::vector<std::uint32_t> pairing(cosets.size());
  random_involution_on(quotient, pairing, rng, 0u);
  for (std::uint32_t c = 0; c < cosets.size(); ++c) {
    const std::uint32_t partner = pairing[c];
    if (partner == c) {
      random_involution_on(cosets[c], table, rng,
                           c == 0 ? std::optional<std::uint32_t>(0) : std::nullopt);
    } else if (c < partner) {
      auto target = cosets[partner];
      std::shuffle(target.begin(), target.end(), rng);
      for (std::size_t k = 0; k < target.size(); ++k) {
        table[cosets[c][k]] = target[k];
        table[target[k]] = cosets[c][k];
      }
    }
  }
  return SBox(m, std::move(table));
}

// Rows of a uniformly random invertible n×n matrix; bit j of row i is entry (i, j).
inline std::vector<Vec> random_invertible(int n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) rows.push_back(static_cast<Vec>(rng()) & gf2::low_mask(n));
    if (gf2::Subspace::span(rows, n).dim() == n) return rows;
  }
}

}  // namespace detail

/// Cipher whose group preserves the cosets of a planted subspace U, a sum of
/// subspaces of the individual blocks: each γ_i permutes the cosets of
/// U ∩ V_i and λ maps U onto itself.
inline TrapdoorCipher gen_trapdoor_cipher(int m, int nt, int planted_dim, std::uint64_t seed) {
  const int d = m * nt;
  if (m < CipherSpec::kMinM || m > CipherSpec::kMaxM || nt < 2 || d > gf2::kMaxDim)
    throw std::invalid_argument("trapdoor cipher: unsupported m or nt");
  if (planted_dim <= 0 || planted_dim >= d)
    throw std::invalid_argument("trapdoor cipher: need 0 < planted_dim < d");
  std::mt19937_64 rng(seed);

  // Spread the planted dimension over the blocks as evenly as possible.
  std::vector<SBox> sboxes;
  std::vector<Vec> u_basis;
  for (int i = 0; i < nt; ++i) {
    const int dim_i = planted_dim / nt + (i < planted_dim % nt ? 1 : 0);
    const auto u_i = detail::random_subspace(m, dim_i, rng);
    sboxes.push_back(detail::coset_preserving_sbox(m, u_i, rng));
    for (Vec b : u_i.basis()) u_basis.push_back(b << (i * m));
  }
  const auto planted = gf2::Subspace::span(u_basis, d);

  // Adapted basis: U's rows, then the unit vectors at non-pivot columns.
  std::vector<Vec> basis = planted.basis();
  Vec pivots = 0;
  for (Vec b : basis) pivots |= gf2::unit(gf2::highest_bit(b));
  for (int j = 0; j < d; ++j)
    if (!gf2::test_bit(pivots, j)) basis.push_back(gf2::unit(j));
  const int k = planted.dim();

  // Block upper-triangular in that basis: U → U invertibly, complement → complement + U.
  const auto a = detail::random_invertible(k, rng);
  const auto c = detail::random_invertible(d - k, rng);
  std::vector<Vec> image(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (gf2::test_bit(a[static_cast<std::size_t>(i)], j)) image[static_cast<std::size_t>(i)] ^= basis[static_cast<std::size_t>(j)];
  for (int i = 0; i < d - k; ++i) {
    Vec& img = image[static_cast<std::size_t>(k + i)];
    for (int j = 0; j < d - k; ++j)
      if (gf2::test_bit(c[static_cast<std::size_t>(i)], j)) img ^= basis[static_cast<std::size_t>(k + j)];
    for (int j = 0; j < k; ++j)
      if (rng() & 1) img ^= basis[static_cast<std::size_t>(j)];
  }
  auto cols = detail::columns_of(d, [&](Vec e) {
    const Vec coords = *gf2::coordinates(basis, e);
    Vec out = 0;
    for (int t = 0; t < d; ++t)
      if (gf2::test_bit(coords, t)) out ^= image[static_cast<std::size_t>(t)];
    return out;
  });
  CipherSpec spec(m, nt, std::move(sboxes), MixingLayer(d, std::move(cols)));
  return TrapdoorCipher{std::move(spec), planted};
}

namespace detail {

inline std::uint8_t xtime(std::uint8_t a) {
  return static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1B : 0));
}

// Linear part of the AES S-box affine map: b_i ^ b_{i+4} ^ b_{i+5} ^ b_{i+6} ^ b_{i+7}.
inline std::uint8_t aes_affine_linear(std::uint8_t b) {
  std::uint8_t out = 0;
  for (int i = 0; i < 8; ++i) {
    const int bit = ((b >> i) ^ (b >> ((i + 4) % 8)) ^ (b >> ((i + 5) % 8)) ^
                     (b >> ((i + 6) % 8)) ^ (b >> ((i + 7) % 8))) & 1;
    out |= static_cast<std::uint8_t>(bit << i);
  }
  return out;
}

}  // namespace detail

/// The AES round map on the state written as 16 bytes, byte r + 4c holding
/// row r, column c, byte i in block i + 1. γ is inversion in GF(2^8)/0x11B;
/// λ applies the S-box's linear part to every byte, then ShiftRows, then
/// MixColumns. The affine constant 0x63 belongs to the round key.
inline CipherSpec gen_aes_cipher() {
  const gf::FieldSpec field(8, 0x11B);
  const std::vector<SBox> sboxes(16, gf::inversion_sbox(field));
  auto apply = [](Vec v) {
    std::array<std::uint8_t, 16> s{};
    for (int i = 0; i < 16; ++i) s[static_cast<std::size_t>(i)] = detail::aes_affine_linear(static_cast<std::uint8_t>(v >> (8 * i)));
    std::array<std::uint8_t, 16> t{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t[static_cast<std::size_t>(r + 4 * c)] = s[static_cast<std::size_t>(r + 4 * ((c + r) % 4))];
    std::array<std::uint8_t, 16> u{};
    for (int c = 0; c < 4; ++c) {
      const std::uint8_t* a = &t[static_cast<std::size_t>(4 * c)];
      for (int r = 0; r < 4; ++r) {
        const std::uint8_t x0 = a[r], x1 = a[(r + 1) % 4], x2 = a[(r + 2) % 4], x3 = a[(r + 3) % 4];
        // 2·x0 ⊕ 3·x1 ⊕ x2 ⊕ x3
        u[static_cast<std::size_t>(4 * c + r)] =
            static_cast<std::uint8_t>(detail::xtime(x0) ^ detail::xtime(x1) ^ x1 ^ x2 ^ x3);
      }
    }
    Vec out = 0;
    for (int i = 0; i < 16; ++i) out |= Vec{u[static_cast<std::size_t>(i)]} << (8 * i);
    return out;
  };
  return CipherSpec(8, 16, sboxes, MixingLayer(128, detail::columns_of(128, apply)));
}

}  // namespace spncheck
