#pragma once

// Base and strong generating set via Schreier–Sims with Schreier-vector
// transversals.
//
// The chain is grown in two phases. First, random elements are sifted and any
// nontrivial residue becomes a strong generator. Every transversal product is
// a distinct group element, so the product of basic orbit lengths is always a
// lower bound for |G|; once it reaches the a-priori upper bound (n!/2 when
// every generator is even, n! otherwise) the order is proved. Otherwise the
// deterministic phase sifts every Schreier generator of every level, which
// completes the chain and makes the order exact.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spncheck/group.hpp"
#include "spncheck/permutation.hpp"

namespace spncheck {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

class StabilizerChain {
 public:
  struct Level {
    Point base;
    std::vector<std::size_t> gens;  // indices into strong generators fixing earlier base points
    std::vector<Point> orbit;
    std::vector<std::int32_t> edge;  // generator reaching the point; kRoot, or kAbsent
  };

  static constexpr std::int32_t kAbsent = -1;
  static constexpr std::int32_t kRoot = -2;

  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Permutation>& strong_generators() const { return sgs_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  BigInt order() const {
    BigInt o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  /// Strips g through levels [from, ...). Returns the residue and the index of
  /// the level where it left the chain (levels().size() if it passed them all).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const {
    std::vector<Point> img(g.images().begin(), g.images().end());
    std::size_t i = from;
    for (; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      Point p = img[l.base];
      if (l.edge[p] == kAbsent) break;
      while (l.edge[p] != kRoot) {
        const Permutation& inv = sgs_inv_[static_cast<std::size_t>(l.edge[p])];
        for (Point& x : img) x = inv[x];
        p = inv[p];
      }
    }
    return {Permutation::unchecked(std::move(img)), i};
  }

  /// Coset representative u with base^u = p, or throws if p is not in the orbit.
  Permutation transversal(std::size_t level, Point p) const {
    const Level& l = levels_.at(level);
    if (l.edge.at(p) == kAbsent) throw std::invalid_argument("point not in basic orbit");
    Permutation u = Permutation::identity(degree_);
    // Walk back to the root collecting u^-1, then invert.
    while (l.edge[p] != kRoot) {
      const Permutation& inv = sgs_inv_[static_cast<std::size_t>(l.edge[p])];
      u *= inv;
      p = inv[p];
    }
    return u.inverse();
  }

  /// Adds a nontrivial residue that fixes the first `level` base points.
  void add(Permutation g, std::size_t level) {
    if (g.is_identity()) throw std::logic_error("identity as strong generator");
    const std::size_t idx = sgs_.size();
    sgs_inv_.push_back(g.inverse());
    sgs_.push_back(std::move(g));
    if (level == levels_.size()) {
      Point b = 0;
      while (sgs_[idx][b] == b) ++b;
      Level l{b, {}, {b}, std::vector<std::int32_t>(degree_, kAbsent)};
      l.edge[b] = kRoot;
      levels_.push_back(std::move(l));
    }
    for (std::size_t i = 0; i <= level; ++i) {
      levels_[i].gens.push_back(idx);
      extend_orbit(i, idx);
    }
  }

  bool contains(const Permutation& g) const {
    auto [residue, level] = sift(g);
    return level == levels_.size() && residue.is_identity();
  }

 private:
  void extend_orbit(std::size_t i, std::size_t new_gen) {
    Level& l = levels_[i];
    // Level i fixes i base points, so a basic orbit never exceeds degree - i.
    if (l.orbit.size() + i >= degree_) return;
    const Permutation& s = sgs_[new_gen];
    const std::size_t old = l.orbit.size();
    for (std::size_t k = 0; k < old; ++k) {
      const Point q = s[l.orbit[k]];
      if (l.edge[q] == kAbsent) {
        l.edge[q] = static_cast<std::int32_t>(new_gen);
        l.orbit.push_back(q);
      }
    }
    for (std::size_t k = old; k < l.orbit.size(); ++k)
      for (std::size_t gi : l.gens) {
        const Point q = sgs_[gi][l.orbit[k]];
        if (l.edge[q] == kAbsent) {
          l.edge[q] = static_cast<std::int32_t>(gi);
          l.orbit.push_back(q);
        }
      }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<Permutation> sgs_;
  std::vector<Permutation> sgs_inv_;
};

struct SchreierSimsOptions {
  std::uint64_t seed = 0x5eed;
  // Consecutive trivial random sifts before switching to the deterministic phase.
  int quiet_rounds = 32;
};

inline std::size_t kOrderDegreeCap = 4096;

/// Builds a complete stabilizer chain for the group.
inline StabilizerChain schreier_sims(const GroupHandle& g, SchreierSimsOptions opt = {}) {
  const std::size_t n = g.degree();
  StabilizerChain chain(n);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators())
    if (!s.is_identity()) gens.push_back(s);
  if (gens.empty()) return chain;

  BigInt bound = factorial(n);
  if (g.all_generators_even()) bound /= 2;

  auto absorb = [&chain](Permutation h, std::size_t from) {
    auto [residue, level] = chain.sift(std::move(h), from);
    if (level == chain.levels().size() && residue.is_identity()) return false;
    chain.add(std::move(residue), level);
    return true;
  };

  for (const auto& s : gens) absorb(s, 0);
  if (chain.order() == bound) return chain;

  ProductReplacer walk(gens, opt.seed);
  for (int quiet = 0; quiet < opt.quiet_rounds;) {
    if (absorb(walk.next(), 0)) {
      quiet = 0;
      if (chain.order() == bound) return chain;
    } else {
      ++quiet;
    }
  }

  // Deterministic completion: every Schreier generator u_p s u_{p^s}^-1 of
  // level i must sift to the identity through levels below i.
  std::size_t i = chain.levels().size();
  while (i-- > 0) {
    bool restarted = false;
    for (std::size_t k = 0; k < chain.levels()[i].orbit.size() && !restarted; ++k) {
      const Point p = chain.levels()[i].orbit[k];
      const Permutation up = chain.transversal(i, p);
      const auto level_gens = chain.levels()[i].gens;
      for (std::size_t gi : level_gens) {
        const Permutation& s = chain.strong_generators()[gi];
        Permutation h = up * s * chain.transversal(i, s[p]).inverse();
        if (h.is_identity()) continue;
        auto [residue, level] = chain.sift(std::move(h), i + 1);
        if (level == chain.levels().size() && residue.is_identity()) continue;
        chain.add(std::move(residue), level);
        if (chain.order() == bound) return chain;
        // Re-verify from the level that grew.
        i = level + 1;
        restarted = true;
        break;
      }
    }
  }
  return chain;
}

/// Exact group order.
inline BigInt bsgs_order(const GroupHandle& g, SchreierSimsOptions opt = {}) {
  if (g.degree() > kOrderDegreeCap)
    throw std::invalid_argument("bsgs_order: degree " + std::to_string(g.degree()) +
                                " above cap " + std::to_string(kOrderDegreeCap));
  return schreier_sims(g, opt).order();
}

}  // namespace spncheck
