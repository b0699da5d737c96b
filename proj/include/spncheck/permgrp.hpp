#pragma once

// Group analysis on the points of V: transitivity, primitivity, parity,
// exact order and alternating/symmetric recognition.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spncheck/blocks.hpp"
#include "spncheck/group.hpp"
#include "spncheck/permutation.hpp"
#include "spncheck/schreier_sims.hpp"

namespace spncheck {

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// A cycle of prime length p with n/2 < p < n - 2 certifies Alt(n) in a
/// transitive group of degree n. Returns the first such cycle length.
inline std::optional<std::size_t> jordan_cycle(const Permutation& g) {
  const std::size_t n = g.degree();
  for (std::size_t len : g.cycle_lengths())
    if (2 * len > n && len + 2 < n && is_prime(len)) return len;
  return std::nullopt;
}

enum class GiantVerdict { contains_alt, inconclusive };

struct GiantResult {
  GiantVerdict verdict = GiantVerdict::inconclusive;
  std::size_t samples_drawn = 0;
  std::size_t cycle_length = 0;  // witness prime when contains_alt
};

inline std::size_t kGiantDegreeCap = 65536;

/// One-sided Monte Carlo: never claims the group is not a giant.
inline GiantResult recognize_giant(GroupHandle& g, std::size_t samples = 500) {
  GiantResult out;
  if (g.degree() < 8) return out;
  if (g.degree() > kGiantDegreeCap)
    throw std::invalid_argument("recognize_giant: degree above cap");
  if (!is_transitive(g)) throw std::invalid_argument("recognize_giant: group is intransitive");
  for (std::size_t i = 0; i < samples; ++i) {
    const Permutation x = g.random_element();
    out.samples_drawn = i + 1;
    if (auto p = jordan_cycle(x)) {
      out.verdict = GiantVerdict::contains_alt;
      out.cycle_length = *p;
      return out;
    }
  }
  return out;
}

enum class Classification { alternating, symmetric, contains_alt_parity_mixed, inconclusive, other };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::alternating: return "alternating";
    case Classification::symmetric: return "symmetric";
    case Classification::contains_alt_parity_mixed: return "contains_alt_parity_mixed";
    case Classification::inconclusive: return "inconclusive";
    case Classification::other: return "other";
  }
  return "?";
}

enum class Method { order, giant, both };

struct ClassifyOptions {
  Method method = Method::both;
  std::size_t samples = 500;
  bool check_primitivity = false;
  unsigned threads = 1;
};

struct GroupAnalysis {
  bool transitive = false;
  PrimitivityResult primitivity;
  bool all_generators_even = false;
  Classification classification = Classification::inconclusive;
  std::optional<BigInt> order;
  std::optional<GiantResult> giant;
  // True when a requested method could not run at this degree.
  bool capped = false;
  std::vector<std::string> notes;
};

/// Transitivity, optional primitivity, generator parity and the requested
/// certification. Alt is certified by order n!/2 (or n!) or by the giant
/// test; the generators' parity then decides between Alt and Sym.
inline GroupAnalysis classify(GroupHandle& g, const ClassifyOptions& opt = {}) {
  GroupAnalysis a;
  const std::size_t n = g.degree();
  a.transitive = is_transitive(g);
  a.all_generators_even = g.all_generators_even();

  if (opt.check_primitivity) {
    if (a.transitive) {
      a.primitivity = is_primitive(g, opt.threads);
      if (a.primitivity.verdict == PrimitivityVerdict::skipped) {
        a.capped = true;
        a.notes.push_back(a.primitivity.note);
      }
    } else {
      a.notes.push_back("primitivity skipped: group is intransitive");
    }
  }

  const bool want_order = opt.method != Method::giant;
  const bool want_giant = opt.method != Method::order;
  bool alt_by_order = false;
  bool alt_by_giant = false;

  if (want_order) {
    if (n > kOrderDegreeCap) {
      a.capped = true;
      a.notes.push_back("order skipped: degree " + std::to_string(n) + " above cap " +
                        std::to_string(kOrderDegreeCap));
    } else {
      a.order = bsgs_order(g);
      const BigInt full = factorial(n);
      alt_by_order = n >= 2 && (*a.order == full || *a.order == full / 2);
    }
  }

  if (want_giant) {
    if (!a.transitive) {
      a.notes.push_back("giant test skipped: group is intransitive");
    } else if (n > kGiantDegreeCap) {
      a.capped = true;
      a.notes.push_back("giant test skipped: degree above cap");
    } else if (n < 8) {
      a.notes.push_back("giant test inconclusive: no prime window below degree 8");
    } else {
      a.giant = recognize_giant(g, opt.samples);
      alt_by_giant = a.giant->verdict == GiantVerdict::contains_alt;
    }
  }

  if (a.order && a.giant && alt_by_giant && !alt_by_order)
    a.notes.push_back("giant test and exact order disagree; exact order wins");

  if (a.order) {
    const BigInt full = factorial(n);
    if (alt_by_order)
      a.classification = *a.order == full && !a.all_generators_even ? Classification::symmetric
                                                                     : Classification::alternating;
    else
      a.classification = Classification::other;
  } else if (alt_by_giant) {
    a.classification = a.all_generators_even ? Classification::alternating
                                             : Classification::contains_alt_parity_mixed;
  } else {
    a.classification = Classification::inconclusive;
  }
  return a;
}

}  // namespace spncheck
