#pragma once

#include <optional>
#include <span>
#include <vector>

#include "capdigits/zp.hpp"

namespace capdigits {

/// Sorted circular gaps between consecutive digits, wrap-around gap included.
/// Invariant under translations and x -> -x; general scalings change it.
std::vector<int> difference_multiset(std::span<const int> digits, int p);

/// Circular gap sequence in its least rotation/reflection: the gap order
/// information beyond the multiset.
std::vector<int> gap_cycle(std::span<const int> digits, int p);

/// x -> a*x + b over Z_p.
struct AffineMap {
  int a = 1;
  int b = 0;

  int operator()(int x, int p) const { return mod(static_cast<std::int64_t>(a) * x + b, p); }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

DigitSet apply(const AffineMap& f, std::span<const int> digits, int p);

/// Scans all p(p-1) maps (a ascending, then b) for one with f(D1) = D2.
/// Throws std::invalid_argument when the sizes differ.
std::optional<AffineMap> affine_equivalent(std::span<const int> d1, std::span<const int> d2, Prime p);

/// Affine-invariant fingerprint: the least difference multiset and the least
/// gap cycle over all scalings a*D. Different fingerprints refute equivalence.
struct Fingerprint {
  std::vector<int> multiset;
  std::vector<int> cycle;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  auto operator<=>(const Fingerprint&) const = default;
};

Fingerprint fingerprint(std::span<const int> digits, Prime p);

struct EquivalenceClass {
  std::size_t id = 0;
  DigitSet canonical;  // normalize_digit_set of the members
  std::vector<DigitSet> members;  // input order
  Fingerprint fingerprint;
};

struct Classification {
  std::vector<EquivalenceClass> classes;  // ordered by first appearance
  /// Pairs of inputs whose fingerprints agree but no affine map relates them.
  std::size_t fingerprint_collisions = 0;
};

/// Groups digit sets into affine orbits. Fingerprints only ever refute;
/// membership is decided by the exhaustive map scan.
Classification classify(std::span<const DigitSet> sets, Prime p);

}  // namespace capdigits
