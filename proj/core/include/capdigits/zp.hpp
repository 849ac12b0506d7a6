#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace capdigits {

/// Ascending residues modulo a prime.
using DigitSet = std::vector<int>;

bool is_prime(std::int64_t n);

/// Least nonnegative residue of `a` modulo `m`.
int mod(std::int64_t a, int m);

/// Multiplicative inverse modulo a prime; throws std::domain_error for 0.
int inverse_mod(int a, int p);

/// An odd prime p >= 5, the modulus the digit construction targets.
class Prime {
 public:
  explicit Prime(int value);

  int value() const noexcept { return value_; }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  int value_;
};

/// Digits D and the frequency-fixed digits D' ⊆ D. Both stored ascending.
class DigitSetPair {
 public:
  DigitSetPair(Prime p, DigitSet digits, DigitSet fixed);

  /// Shorthand for (D, D).
  static DigitSetPair all_fixed(Prime p, DigitSet digits);

  Prime prime() const noexcept { return p_; }
  int modulus() const noexcept { return p_.value(); }
  const DigitSet& digits() const noexcept { return digits_; }
  const DigitSet& fixed() const noexcept { return fixed_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool contains(int d) const;
  bool is_fixed(int d) const;

  friend bool operator==(const DigitSetPair&, const DigitSetPair&) = default;

 private:
  Prime p_;
  DigitSet digits_;
  DigitSet fixed_;
};

/// x + b*y + c*z = 0 with b + c = -1 (mod p) and b ∉ {0, p-1}.
struct LineEquation {
  int p = 0;
  int b = 0;
  int c = 0;

  friend bool operator==(const LineEquation&, const LineEquation&) = default;
};

LineEquation make_line_equation(Prime p, int b);

/// b' = c^{-1} b: the equation whose progressions are the mirror images.
int mirror_coefficient(const LineEquation& eq);
/// b' = c: the equation whose progressions have the last two entries swapped.
int swap_coefficient(const LineEquation& eq);

/// Renders as "x + kz = (k+1)y".
std::string describe(const LineEquation& eq);

struct EquationClass {
  int representative = 0;    // smallest b in the class
  std::vector<int> members;  // ascending b values
};

struct EquationClassPartition {
  Prime p;
  std::vector<EquationClass> classes;  // ordered by representative

  std::vector<int> representatives() const;
  /// Index of the class containing b.
  std::size_t class_index(int b) const;
};

/// Closure of {1, ..., p-2} under the mirror and swap moves.
EquationClassPartition equation_classes(Prime p);

/// Sorts and validates a digit sequence: residues in [0, p), no repeats.
DigitSet make_digit_set(std::span<const int> digits, int p);

/// Lexicographically least image of `digits` under x -> a*x + b, a != 0.
/// Requires at least two digits; the result always starts with 0, 1.
DigitSet normalize_digit_set(std::span<const int> digits, Prime p);

/// True when `digits` is ascending and equals its affine normal form.
bool is_normal_form(std::span<const int> digits, Prime p);

std::string format_digits(std::span<const int> digits);

}  // namespace capdigits
