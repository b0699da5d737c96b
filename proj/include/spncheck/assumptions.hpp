#pragma once

// Decision procedures for the cryptographic conditions on a cipher:
//   A1   0γ = 0 and γ² = 1;
//   A2a  every difference image of every S-box is large and not a coset;
//   A2b  no S-box has an invariant proper subspace of codimension <= 2r;
//   A3   no chain of walls U -> U' -> U'' under λ, all nonempty and proper.
// Every failure carries a concrete witness.

#include <algorithm>
#include <bit>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spncheck/cipher.hpp"
#include "spncheck/gf2lin.hpp"
#include "spncheck/parallel.hpp"
#include "spncheck/sbox.hpp"

namespace spncheck {

// ---------------------------------------------------------------- A1

struct A1Witness {
  int block;  // 1-based
  std::uint32_t element;
  std::uint32_t image;
  enum class Kind { zero_not_fixed, not_involution } kind;
};

struct A1Result {
  bool pass = true;
  std::vector<A1Witness> witnesses;  // first violation per failing S-box
};

inline A1Result check_a1(const CipherSpec& spec) {
  A1Result out;
  for (int i = 0; i < spec.nt(); ++i) {
    const SBox& s = spec.sboxes()[static_cast<std::size_t>(i)];
    if (s[0] != 0) {
      out.witnesses.push_back({i + 1, 0, s[0], A1Witness::Kind::zero_not_fixed});
      continue;
    }
    for (std::uint32_t a = 0; a < s.size(); ++a)
      if (s[s[a]] != a) {
        out.witnesses.push_back({i + 1, a, s[a], A1Witness::Kind::not_involution});
        break;
      }
  }
  out.pass = out.witnesses.empty();
  return out;
}

// ---------------------------------------------------------------- A2

/// {s[x ⊕ v] ⊕ s[x]}, sorted.
inline std::vector<std::uint32_t> diff_image(const SBox& s, std::uint32_t v) {
  if (v == 0 || v >= s.size()) throw std::invalid_argument("diff_image: need 0 < v < 2^m");
  std::vector<bool> hit(s.size(), false);
  for (std::uint32_t x = 0; x < s.size(); ++x) hit[s[x ^ v] ^ s[x]] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < s.size(); ++y)
    if (hit[y]) out.push_back(y);
  return out;
}

inline bool is_invariant(const SBox& s, const gf2::Subspace& w) {
  std::bitset<256> member;
  std::vector<std::uint32_t> pts{0};
  for (Vec b : w.basis()) {
    const auto bv = static_cast<std::uint32_t>(b);
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < n; ++k) pts.push_back(pts[k] ^ bv);
  }
  for (auto p : pts) member.set(p);
  return std::all_of(pts.begin(), pts.end(), [&](std::uint32_t p) { return member.test(s[p]); });
}

/// Proper nonzero subspaces W of GF(2)^m with codim(W) <= max_codim and Wγ = W,
/// dimension ascending then lexicographic.
inline std::vector<gf2::Subspace> invariant_subspaces_up_to_codim(const SBox& s, int max_codim) {
  const int m = s.m();
  if (m > gf2::kEnumerationCap)
    throw std::invalid_argument("invariant subspace search needs m <= 8");
  if (max_codim < 0 || max_codim > m) throw std::invalid_argument("max_codim outside [0, m]");
  std::vector<gf2::Subspace> out;
  const int lo = std::max(1, m - max_codim);
  if (lo > m - 1) return out;
  gf2::for_each_subspace(m, lo, m - 1, [&](const gf2::Subspace& w) {
    if (is_invariant(s, w)) out.push_back(w);
  });
  return out;
}

/// Admissible r: 1 <= r and 2r < m.
inline std::vector<int> admissible_r(int m) {
  std::vector<int> rs;
  for (int r = 1; 2 * r < m; ++r) rs.push_back(r);
  return rs;
}

/// Everything A2a/A2b need from one S-box, independent of r.
struct SBoxProfile {
  std::size_t min_image_size = 0;
  std::uint32_t min_image_v = 0;
  std::optional<std::uint32_t> coset_v;  // first v whose image is a coset
  std::vector<gf2::Subspace> invariant;  // codim <= 2 * max admissible r
};

inline SBoxProfile profile_sbox(const SBox& s) {
  SBoxProfile p;
  p.min_image_size = SIZE_MAX;
  for (std::uint32_t v = 1; v < s.size(); ++v) {
    const auto img = diff_image(s, v);
    if (img.size() < p.min_image_size) {
      p.min_image_size = img.size();
      p.min_image_v = v;
    }
    if (!p.coset_v) {
      std::vector<Vec> pts(img.begin(), img.end());
      if (gf2::is_coset(pts, s.m())) p.coset_v = v;
    }
  }
  const auto rs = admissible_r(s.m());
  if (!rs.empty()) p.invariant = invariant_subspaces_up_to_codim(s, 2 * rs.back());
  return p;
}

struct A2Candidate {
  int r = 0;
  bool a2a = false;
  bool a2b = false;
  // A2a witness: block (1-based), v, image size, and whether it failed by being a coset.
  std::optional<int> a2a_block;
  std::uint32_t a2a_v = 0;
  std::size_t a2a_size = 0;
  bool a2a_coset = false;
  // A2b witness: block and invariant subspace.
  std::optional<int> a2b_block;
  std::optional<gf2::Subspace> a2b_subspace;
};

struct A2Result {
  std::vector<A2Candidate> candidates;
  std::vector<int> valid_r;
  std::vector<SBoxProfile> profiles;  // one per block, index 0 = block 1
};

inline A2Result check_a2(const CipherSpec& spec, unsigned threads = 1) {
  A2Result out;
  // Identical S-boxes share a profile.
  std::vector<std::size_t> rep(static_cast<std::size_t>(spec.nt()));
  std::vector<std::size_t> uniques;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    rep[i] = i;
    for (std::size_t u : uniques)
      if (spec.sboxes()[u] == spec.sboxes()[i]) {
        rep[i] = u;
        break;
      }
    if (rep[i] == i) uniques.push_back(i);
  }
  std::vector<SBoxProfile> computed(rep.size());
  parallel_for(uniques.size(), threads, [&](std::size_t k) {
    computed[uniques[k]] = profile_sbox(spec.sboxes()[uniques[k]]);
  });
  for (std::size_t i = 0; i < rep.size(); ++i) out.profiles.push_back(computed[rep[i]]);

  const int m = spec.m();
  for (int r : admissible_r(m)) {
    A2Candidate c;
    c.r = r;
    const std::size_t threshold = std::size_t{1} << (m - r - 1);
    c.a2a = c.a2b = true;
    for (std::size_t i = 0; i < out.profiles.size(); ++i) {
      const auto& p = out.profiles[i];
      const int block = static_cast<int>(i) + 1;
      if (c.a2a && p.min_image_size <= threshold) {
        c.a2a = false;
        c.a2a_block = block;
        c.a2a_v = p.min_image_v;
        c.a2a_size = p.min_image_size;
      } else if (c.a2a && p.coset_v) {
        c.a2a = false;
        c.a2a_block = block;
        c.a2a_v = *p.coset_v;
        c.a2a_size = diff_image(spec.sboxes()[i], *p.coset_v).size();
        c.a2a_coset = true;
      }
      if (c.a2b) {
        for (const auto& w : p.invariant)
          if (w.codim() <= 2 * r) {
            c.a2b = false;
            c.a2b_block = block;
            c.a2b_subspace = w;
            break;
          }
      }
    }
    if (c.a2a && c.a2b) out.valid_r.push_back(r);
    out.candidates.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- A3

/// Set of blocks as a bit mask; bit i is block i (0-based).
using BlockSet = std::uint64_t;

inline std::vector<int> block_list(BlockSet s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1) out.push_back(i + 1);
  return out;
}

inline Vec wall_mask(const CipherSpec& spec, BlockSet s) {
  Vec mask = 0;
  for (int i = 0; i < spec.nt(); ++i)
    if ((s >> i) & 1) mask |= spec.block_mask(i);
  return mask;
}

/// Blocks on which any vector of V_i λ is nonzero, for each i.
inline std::vector<BlockSet> block_supports(const CipherSpec& spec) {
  std::vector<BlockSet> sup(static_cast<std::size_t>(spec.nt()), 0);
  for (int i = 0; i < spec.nt(); ++i)
    for (int b = 0; b < spec.m(); ++b) {
      const Vec img = spec.lambda().cols()[static_cast<std::size_t>(i * spec.m() + b)];
      for (int j = 0; j < spec.nt(); ++j)
        if (spec.block(img, j) != 0) sup[static_cast<std::size_t>(i)] |= BlockSet{1} << j;
    }
  return sup;
}

struct WallImage {
  gf2::Subspace image;
  bool is_wall = false;
  std::optional<BlockSet> wall;  // blocks of the image when it is a wall
};

inline void require_block_set(const CipherSpec& spec, BlockSet s) {
  const BlockSet all = spec.nt() >= 64 ? ~BlockSet{0} : (BlockSet{1} << spec.nt()) - 1;
  if (s == 0 || (s & ~all) != 0 || s == all)
    throw std::invalid_argument("block set must be a nonempty proper subset of the blocks");
}

/// Image of U = ⊕_{i∈S} V_i under λ. The image lies in the wall over the
/// union of the blocks it touches and has dimension m|S|, so it is itself a
/// wall iff it touches exactly |S| blocks.
inline WallImage wall_image(const CipherSpec& spec, BlockSet s) {
  require_block_set(spec, s);
  std::vector<Vec> imgs;
  BlockSet touched = 0;
  for (int i = 0; i < spec.nt(); ++i) {
    if (!((s >> i) & 1)) continue;
    for (int b = 0; b < spec.m(); ++b) {
      const Vec img = spec.lambda().cols()[static_cast<std::size_t>(i * spec.m() + b)];
      imgs.push_back(img);
      for (int j = 0; j < spec.nt(); ++j)
        if (spec.block(img, j) != 0) touched |= BlockSet{1} << j;
    }
  }
  WallImage out{gf2::Subspace::span(imgs, spec.d()), false, std::nullopt};
  if (std::popcount(touched) == std::popcount(s)) {
    out.is_wall = true;
    out.wall = touched;
  }
  return out;
}

struct WallChain {
  BlockSet u, u1, u2;
};

struct A3Result {
  bool pass = true;
  std::optional<WallChain> chain;  // first violating chain in increasing order of U
};

inline constexpr int kA3BlockCap = 24;

inline A3Result check_a3(const CipherSpec& spec) {
  if (spec.nt() > kA3BlockCap)
    throw std::invalid_argument("check_a3 scans 2^nt subsets; nt above cap 24");
  const auto sup = block_supports(spec);
  const BlockSet all = (BlockSet{1} << spec.nt()) - 1;
  auto image_of = [&](BlockSet s) {
    BlockSet t = 0;
    for (int i = 0; i < spec.nt(); ++i)
      if ((s >> i) & 1) t |= sup[static_cast<std::size_t>(i)];
    return t;
  };
  A3Result out;
  for (BlockSet u = 1; u < all; ++u) {
    const BlockSet u1 = image_of(u);
    if (std::popcount(u1) != std::popcount(u) || u1 == all) continue;
    const BlockSet u2 = image_of(u1);
    if (std::popcount(u2) != std::popcount(u1) || u2 == all) continue;
    out.pass = false;
    out.chain = WallChain{u, u1, u2};
    return out;
  }
  return out;
}

// ---------------------------------------------------------------- report

struct AssumptionReport {
  A1Result a1;
  A2Result a2;
  A3Result a3;
  std::optional<int> r_override;
  std::vector<int> valid_r;  // a2.valid_r, restricted to r_override when given
  bool overall = false;
};

inline AssumptionReport full_report(const CipherSpec& spec, std::optional<int> r_override = {},
                                    unsigned threads = 1) {
  if (r_override) {
    const auto rs = admissible_r(spec.m());
    if (std::find(rs.begin(), rs.end(), *r_override) == rs.end())
      throw std::invalid_argument("r=" + std::to_string(*r_override) +
                                  " is not admissible (need 1 <= r and 2r < m)");
  }
  AssumptionReport rep;
  rep.a1 = check_a1(spec);
  rep.a2 = check_a2(spec, threads);
  rep.a3 = check_a3(spec);
  rep.r_override = r_override;
  for (int r : rep.a2.valid_r)
    if (!r_override || r == *r_override) rep.valid_r.push_back(r);
  rep.overall = rep.a1.pass && !rep.valid_r.empty() && rep.a3.pass;
  return rep;
}

}  // namespace spncheck
