#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "capdigits/cone.hpp"
#include "capdigits/reducibility.hpp"

namespace capdigits {

/// All ascending `size`-subsets of Z_p that contain 0 and 1, in lexicographic
/// order. With `dedup`, only sets equal to their affine normal form are kept.
std::vector<DigitSet> candidates(Prime p, int size, bool dedup = false);

/// Streams the same sequence; stops early when `visit` returns false.
void for_each_candidate(Prime p, int size, const std::function<bool(const DigitSet&)>& visit);

/// How one equation-class representative was settled.
struct RepresentativeVerdict {
  int b = 0;
  bool trivial = false;  // the cone is {0} for this representative
  Method method = Method::Cone;
  std::optional<DigitTrace> digit;
  std::optional<MatrixTrace> matrix;
  std::optional<ConeCertificate> cone;
};

struct PairVerdict {
  DigitSetPair pair;
  bool admissible = false;
  std::vector<RepresentativeVerdict> representatives;
};

struct CheckOptions {
  /// Stop at the first representative with a nontrivial cone.
  bool stop_at_refutation = false;
  /// Attach a cone certificate even when a reduction already closed a case.
  bool always_cone = true;
};

/// Digit reduction, then matrix reduction, then the exact cone test, per
/// representative. Throws std::logic_error if a reduction and the cone disagree.
PairVerdict check_pair(const DigitSetPair& pair, const CheckOptions& options = {});

/// Re-checks one representative's traces and certificate against a freshly
/// built system, and its claimed method and status against them.
bool verify_representative(const DigitSetPair& pair, const RepresentativeVerdict& rep);

/// Re-checks every trace and certificate in the verdict against freshly built
/// systems, and the verdict's claims against them.
bool verify_pair_verdict(const PairVerdict& verdict);

/// Smallest D' ⊆ D (by size, then lexicographically) with (D, D') admissible.
/// Throws std::invalid_argument unless (D, D) is admissible.
DigitSet minimize_fixed_digits(const DigitSet& digits, Prime p);

enum class Maximality { Proven, NotAttempted };

struct AdmissibleEntry {
  DigitSet digits;
  DigitSet minimal_fixed;
  PairVerdict verdict;  // for (digits, minimal_fixed)
};

/// A size-(max+1) candidate with a nontrivial cone at representative `b`.
struct Refutation {
  DigitSet digits;
  int b = 0;
  ConeCertificate witness;
};

struct SearchOptions {
  /// First size to examine; when nothing of that size is admissible the sweep
  /// descends, otherwise it ascends. Defaults to 2.
  std::optional<int> start_size;
  double max_seconds = 0.0;        // 0: unlimited
  std::size_t max_candidates = 0;  // fresh checks allowed in this run; 0: unlimited
  unsigned workers = 1;
  std::filesystem::path checkpoint;  // JSON lines; empty disables checkpointing
  bool minimize_fixed = true;
  /// Admissible sets reported at the maximum size; 0 scans the size fully and
  /// reports all of them.
  std::size_t max_reported = 1;
};

struct SearchReport {
  int p = 0;
  int max_size = 0;  // largest size with an admissible candidate found
  std::size_t candidates_examined = 0;
  std::vector<AdmissibleEntry> admissible;
  Maximality maximality = Maximality::NotAttempted;
  std::vector<Refutation> refutations;  // every size-(max_size+1) candidate when proven
  bool budget_exhausted = false;
};

/// Sweeps candidate sizes with D' = D. Enlarging D' only adds constraints, so
/// (D, D) admissible is the weakest requirement, and a refutation of (D, D)
/// refutes every (D, D'). A superset of a refuted set is refuted too, so one
/// fully refuted size bounds the maximum.
SearchReport max_admissible_size(Prime p, const SearchOptions& options = {});

}  // namespace capdigits
