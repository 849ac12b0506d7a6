#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "capdigits/progressions.hpp"
#include "capdigits/rational_matrix.hpp"

namespace capdigits {

enum class ConeKind { Trivial, Nontrivial };

/// Proof of the status of the cone {chi >= 0 : A chi = 0}.
///
/// Trivial: a dual vector y with A^T y >= 1 componentwise, scaled so that the
/// smallest component of A^T y is exactly 1 (no columns: y = 0).
/// Nontrivial: a nonzero nonnegative integer chi with A chi = 0 and gcd 1.
struct ConeCertificate {
  ConeKind kind = ConeKind::Trivial;
  std::vector<Rational> dual;
  std::vector<Integer> witness;

  friend bool operator==(const ConeCertificate&, const ConeCertificate&) = default;
};

/// Decides whether {chi >= 0 : A chi = 0} = {0} with an exact phase-one
/// simplex on {A chi = 0, sum chi = 1, chi >= 0} under Bland's rule.
ConeCertificate cone_trivial(const IntMatrix& matrix);
ConeCertificate cone_trivial(const ConstraintSystem& system);

/// Throws std::invalid_argument when the certificate's length does not match.
bool verify_certificate(const IntMatrix& matrix, const ConeCertificate& cert);
bool verify_certificate(const ConstraintSystem& system, const ConeCertificate& cert);

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search over chi in {0..bound}^cols \ {0}, odometer order with the
/// first column fastest. Throws InstanceTooLarge when (bound+1)^cols > 1e8.
std::optional<std::vector<int>> integer_oracle(const IntMatrix& matrix, int bound);

struct RepresentativeCertificate {
  int b = 0;
  ConeCertificate certificate;
};

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<RepresentativeCertificate> representatives;
};

/// Cone test on every equation-class representative.
AdmissibilityReport admissible(const DigitSetPair& pair);

/// Same verdict as admissible(), stopping at the first nontrivial cone.
bool is_admissible(const DigitSetPair& pair);

}  // namespace capdigits
