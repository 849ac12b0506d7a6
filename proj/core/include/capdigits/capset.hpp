#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "capdigits/progressions.hpp"
#include "capdigits/rational_matrix.hpp"
#include "capdigits/zp.hpp"

namespace capdigits {

/// Points of Z_p^n stored contiguously, one byte per coordinate (p < 256).
class PointSet {
 public:
  PointSet(int p, std::size_t dimension);

  int modulus() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const std::uint8_t> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }

  void push_back(std::span<const int> point);
  void push_back(std::span<const std::uint8_t> point);
  void reserve(std::size_t points) { coords_.reserve(points * dim_); }

  /// Sorts points lexicographically and drops duplicates.
  void canonicalize();

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int p_;
  std::size_t dim_;
  std::vector<std::uint8_t> coords_;
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S(D, D', n): vectors over D in which every fixed digit occurs n/|D| times.
struct CapPointSet {
  DigitSetPair pair;
  std::size_t n;
  PointSet points;  // lexicographic order
};

inline constexpr std::size_t kDefaultEnumerationCap = 20'000'000;

/// Throws std::invalid_argument unless |D| divides n, and EnumerationTooLarge
/// when the exact count exceeds `max_points`.
CapPointSet build_cap(const DigitSetPair& pair, std::size_t n, std::size_t max_points = kDefaultEnumerationCap);

/// Indices of three distinct collinear points; `third` lies on the line
/// through `first` and `second`.
struct CollinearTriple {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t third = 0;

  friend bool operator==(const CollinearTriple&, const CollinearTriple&) = default;
};

/// Walks the line through every pair of distinct points and looks each further
/// point up in a hash index. Returns the violation with the smallest `first`
/// index (then smallest `second`), or nullopt when the set is a cap.
/// workers = 0 uses the hardware concurrency.
std::optional<CollinearTriple> verify_cap(const PointSet& points, unsigned workers = 0);

/// Turns a nonzero cone witness for `table` into three distinct collinear
/// points of S(D, D', n): progression v contributes witness[v] coordinates and
/// constant columns (d, d, d) pad the fixed-digit frequencies to n/|D|.
/// The points are x, y, z in that order, with x + b y + c z = 0.
PointSet witness_points(const ProgressionTable& table, std::span<const Integer> witness);

struct SizeEstimate {
  Integer exact_count;
  int delta = 0;
  double c = 0.0;
  std::size_t digits = 0;  // |D|
};

SizeEstimate size_estimate(const DigitSetPair& pair, std::size_t n);

/// exact_count * n^{delta/2} / |D|^n, which tends to c.
double normalized_count(const SizeEstimate& est, std::size_t n);

/// Smallest a with x^2 + x + a irreducible over Z_q.
int bose_parameter(int q);

/// The elliptic-quadric cap {(t^2 + st + as^2, s, t)} of size q^2 in AG(3, q);
/// the projective variant appends a homogenizing 1 and the point (1, 0, 0, 0).
PointSet bose_cap(int q, bool projective = false);

/// J(p) = (1/p) min_{0<t<1} (1 - t^p) / ((1 - t) t^{(p-1)/3}).
double eg_constant(int p);

struct BoundTableRow {
  int p = 0;
  double bose_bound = 0.0;  // p^{2/3}
  double edel_bound = 0.0;  // (p^4 + p^2 - 1)^{1/6}
  int new_bound = 0;        // |D|
  double mu = 0.0;          // log_p |D|
  double improvement_percent = 0.0;
};

BoundTableRow bound_table(int p, int best_digit_set_size);

/// Truncates (does not round) to `decimals` places, as printed tables do.
double truncate_decimals(double value, int decimals);

/// One point per line, coordinates space-separated.
void write_points(std::ostream& os, const PointSet& points);
/// Throws std::runtime_error on malformed input.
PointSet read_points(std::istream& is, int p);

}  // namespace capdigits
