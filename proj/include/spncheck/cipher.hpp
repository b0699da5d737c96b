#pragma once

// Key-alternating cipher model: V = V_1 ⊕ ... ⊕ V_nt, each block m bits wide.
// Block i (0-based here, 1-based in reports) occupies bits [i*m, (i+1)*m).
// A round is x ↦ (x γ) λ ⊕ k: bricklayer, then mixing layer, then key addition.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spncheck/gf2lin.hpp"
#include "spncheck/permutation.hpp"
#include "spncheck/sbox.hpp"

namespace spncheck {

using gf2::Vec;

/// Raised when a request needs explicit permutations beyond the degree cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invertible GF(2)-linear map on GF(2)^d given by the images of the unit
/// vectors: v·λ is the XOR of cols[j] over the set bits j of v.
class MixingLayer {
 public:
  MixingLayer() = default;

  MixingLayer(int d, std::vector<Vec> cols) : d_(d), cols_(std::move(cols)) {
    gf2::check_dim(d);
    if (cols_.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("mixing layer needs exactly d columns");
    for (Vec c : cols_)
      if (!gf2::fits(c, d)) throw std::invalid_argument("mixing column wider than d bits");
    if (gf2::Subspace::span(cols_, d).dim() != d)
      throw std::invalid_argument("mixing layer is not invertible");
  }

  static MixingLayer identity(int d) {
    std::vector<Vec> cols;
    for (int j = 0; j < d; ++j) cols.push_back(gf2::unit(j));
    return MixingLayer(d, std::move(cols));
  }

  int d() const { return d_; }
  const std::vector<Vec>& cols() const { return cols_; }

  Vec apply(Vec v) const {
    Vec out = 0;
    for (int j = 0; v != 0; ++j, v >>= 1)
      if (v & 1) out ^= cols_[static_cast<std::size_t>(j)];
    return out;
  }

  gf2::Subspace image(const gf2::Subspace& s) const {
    std::vector<Vec> imgs;
    for (Vec b : s.basis()) imgs.push_back(apply(b));
    return gf2::Subspace::span(imgs, d_);
  }

  friend bool operator==(const MixingLayer&, const MixingLayer&) = default;

 private:
  int d_ = 0;
  std::vector<Vec> cols_;
};

class CipherSpec {
 public:
  static constexpr int kMinM = 3;
  static constexpr int kMaxM = 8;

  CipherSpec(int m, int nt, std::vector<SBox> sboxes, MixingLayer lambda)
      : m_(m), nt_(nt), sboxes_(std::move(sboxes)), lambda_(std::move(lambda)) {
    if (m < kMinM || m > kMaxM)
      throw std::invalid_argument("block width m=" + std::to_string(m) +
                                  " outside supported range [3, 8]");
    if (nt < 2) throw std::invalid_argument("need at least two blocks (nt > 1)");
    if (m * nt > gf2::kMaxDim) throw std::invalid_argument("state width m*nt exceeds 128");
    if (sboxes_.size() != static_cast<std::size_t>(nt))
      throw std::invalid_argument("need exactly nt S-boxes");
    for (const auto& s : sboxes_)
      if (s.m() != m) throw std::invalid_argument("S-box width differs from m");
    if (lambda_.d() != m * nt) throw std::invalid_argument("mixing layer width differs from m*nt");
  }

  int m() const { return m_; }
  int nt() const { return nt_; }
  int d() const { return m_ * nt_; }
  const std::vector<SBox>& sboxes() const { return sboxes_; }
  const MixingLayer& lambda() const { return lambda_; }

  /// Projection π_i onto block i (0-based).
  std::uint32_t block(Vec x, int i) const {
    return static_cast<std::uint32_t>((x >> (i * m_)) & gf2::low_mask(m_));
  }

  /// The subspace V_i as a bit mask.
  Vec block_mask(int i) const { return gf2::low_mask(m_) << (i * m_); }

  friend bool operator==(const CipherSpec&, const CipherSpec&) = default;

 private:
  int m_;
  int nt_;
  std::vector<SBox> sboxes_;
  MixingLayer lambda_;
};

inline Vec gamma_eval(const CipherSpec& spec, Vec x) {
  Vec out = 0;
  for (int i = 0; i < spec.nt(); ++i)
    out |= Vec{spec.sboxes()[static_cast<std::size_t>(i)][spec.block(x, i)]} << (i * spec.m());
  return out;
}

inline Vec round_function(const CipherSpec& spec, Vec k, Vec x) {
  if (!gf2::fits(k, spec.d()) || !gf2::fits(x, spec.d()))
    throw std::invalid_argument("round_function: argument wider than d bits");
  return spec.lambda().apply(gamma_eval(spec, x)) ^ k;
}

inline int kPermutationDimCap = 16;

inline void require_materializable(const CipherSpec& spec) {
  if (spec.d() > kPermutationDimCap)
    throw CapExceeded("state width d=" + std::to_string(spec.d()) +
                      " exceeds the permutation cap d <= " + std::to_string(kPermutationDimCap) +
                      "; group computations are infeasible, check the assumptions instead");
}

/// Image table of x ↦ round_function(k, x) over all 2^d states.
inline Permutation round_permutation(const CipherSpec& spec, Vec k) {
  require_materializable(spec);
  const std::size_t n = std::size_t{1} << spec.d();
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x)
    img[x] = static_cast<Point>(round_function(spec, k, static_cast<Vec>(x)));
  return Permutation::unchecked(std::move(img));
}

inline Permutation translation(int d, Vec v) {
  const std::size_t n = std::size_t{1} << d;
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(x ^ static_cast<std::size_t>(v));
  return Permutation::unchecked(std::move(img));
}

struct TAndRho {};

struct Composed {
  int rounds = 2;
  int count = 50;
  std::uint64_t seed = 0;
};

using GeneratorMode = std::variant<TAndRho, Composed>;

/// TAndRho: ρ followed by the d unit translations σ_{e_1} .. σ_{e_d}.
/// Composed: `count` products of `rounds` round permutations, keys drawn from
/// a generator seeded with `seed`.
inline std::vector<Permutation> group_generators(const CipherSpec& spec, const GeneratorMode& mode) {
  require_materializable(spec);
  std::vector<Permutation> gens;
  if (std::holds_alternative<TAndRho>(mode)) {
    gens.push_back(round_permutation(spec, 0));
    for (int j = 0; j < spec.d(); ++j) gens.push_back(translation(spec.d(), gf2::unit(j)));
    return gens;
  }
  const auto& c = std::get<Composed>(mode);
  if (c.rounds < 1 || c.count < 1) throw std::invalid_argument("composed mode needs rounds, count >= 1");
  std::mt19937_64 rng(c.seed);
  const Vec mask = gf2::low_mask(spec.d());
  const Permutation rho = round_permutation(spec, 0);
  for (int i = 0; i < c.count; ++i) {
    Permutation g = Permutation::identity(rho.degree());
    for (int r = 0; r < c.rounds; ++r) {
      g *= rho;
      g *= translation(spec.d(), static_cast<Vec>(rng()) & mask);
    }
    gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace spncheck
