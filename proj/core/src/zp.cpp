#include "capdigits/zp.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace capdigits {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int mod(std::int64_t a, int m) {
  auto r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

int inverse_mod(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw std::domain_error("0 has no inverse modulo " + std::to_string(p));
  // Extended Euclid.
  int t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    int q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return mod(t, p);
}

Prime::Prime(int value) : value_(value) {
  if (value < 5 || !is_prime(value)) {
    throw std::invalid_argument("modulus must be a prime >= 5, got " + std::to_string(value));
  }
}

DigitSet make_digit_set(std::span<const int> digits, int p) {
  DigitSet out(digits.begin(), digits.end());
  for (int d : out) {
    if (d < 0 || d >= p) {
      throw std::invalid_argument("digit " + std::to_string(d) + " is not a residue modulo " +
                                  std::to_string(p));
    }
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("repeated digit in " + format_digits(out));
  }
  return out;
}

DigitSetPair::DigitSetPair(Prime p, DigitSet digits, DigitSet fixed)
    : p_(p),
      digits_(make_digit_set(digits, p.value())),
      fixed_(make_digit_set(fixed, p.value())) {
  if (digits_.size() < 2) throw std::invalid_argument("a digit set needs at least two digits");
  if (!std::includes(digits_.begin(), digits_.end(), fixed_.begin(), fixed_.end())) {
    throw std::invalid_argument("fixed digits " + format_digits(fixed_) + " are not a subset of " +
                                format_digits(digits_));
  }
}

DigitSetPair DigitSetPair::all_fixed(Prime p, DigitSet digits) {
  DigitSet copy = digits;
  return DigitSetPair(p, std::move(digits), std::move(copy));
}

bool DigitSetPair::contains(int d) const {
  return std::binary_search(digits_.begin(), digits_.end(), d);
}

bool DigitSetPair::is_fixed(int d) const {
  return std::binary_search(fixed_.begin(), fixed_.end(), d);
}

LineEquation make_line_equation(Prime p, int b) {
  const int q = p.value();
  if (b < 1 || b > q - 2) {
    throw std::invalid_argument("coefficient b must lie in [1, p-2], got " + std::to_string(b));
  }
  return LineEquation{q, b, mod(-(static_cast<std::int64_t>(b) + 1), q)};
}

int mirror_coefficient(const LineEquation& eq) {
  return mod(static_cast<std::int64_t>(inverse_mod(eq.c, eq.p)) * eq.b, eq.p);
}

int swap_coefficient(const LineEquation& eq) { return eq.c; }

std::string describe(const LineEquation& eq) {
  // x + b y + c z = 0  <=>  x + c z = (c+1) y, since -b = c + 1.
  const std::string lhs = eq.c == 1 ? "x + z" : "x + " + std::to_string(eq.c) + "z";
  return lhs + " = " + std::to_string(eq.c + 1) + "y";
}

std::vector<int> EquationClassPartition::representatives() const {
  std::vector<int> reps;
  reps.reserve(classes.size());
  for (const auto& cls : classes) reps.push_back(cls.representative);
  return reps;
}

std::size_t EquationClassPartition::class_index(int b) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::binary_search(classes[i].members.begin(), classes[i].members.end(), b)) return i;
  }
  throw std::out_of_range("coefficient " + std::to_string(b) + " is in no class");
}

EquationClassPartition equation_classes(Prime p) {
  const int q = p.value();
  std::vector<bool> seen(q, false);
  EquationClassPartition out{p, {}};
  for (int b = 1; b <= q - 2; ++b) {
    if (seen[b]) continue;
    EquationClass cls;
    std::vector<int> stack{b};
    seen[b] = true;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      cls.members.push_back(cur);
      const auto eq = make_line_equation(p, cur);
      for (int next : {mirror_coefficient(eq), swap_coefficient(eq)}) {
        if (!seen[next]) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    out.classes.push_back(std::move(cls));
  }
  return out;
}

namespace {

// Calls visit(image) for every affine image of `input` containing 0 and 1;
// the lexicographic minimum is always among them. Stops when visit is false.
template <class Visit>
void for_each_pinned_image(const DigitSet& input, int q, Visit&& visit) {
  DigitSet image(input.size());
  for (const int u : input) {
    for (const int v : input) {
      if (u == v) continue;
      const int a = inverse_mod(mod(v - u, q), q);
      const int shift = mod(-static_cast<std::int64_t>(a) * u, q);
      for (std::size_t i = 0; i < input.size(); ++i) {
        image[i] = mod(static_cast<std::int64_t>(a) * input[i] + shift, q);
      }
      std::sort(image.begin(), image.end());
      if (!visit(image)) return;
    }
  }
}

}  // namespace

DigitSet normalize_digit_set(std::span<const int> digits, Prime p) {
  const DigitSet input = make_digit_set(digits, p.value());
  if (input.size() < 2) throw std::invalid_argument("normalization needs at least two digits");
  DigitSet best;
  for_each_pinned_image(input, p.value(), [&](const DigitSet& image) {
    if (best.empty() || image < best) best = image;
    return true;
  });
  return best;
}

bool is_normal_form(std::span<const int> digits, Prime p) {
  const DigitSet input = make_digit_set(digits, p.value());
  if (input.size() < 2) throw std::invalid_argument("normalization needs at least two digits");
  if (!std::ranges::equal(input, digits)) return false;
  bool minimal = true;
  for_each_pinned_image(input, p.value(), [&](const DigitSet& image) {
    minimal = !(image < input);
    return minimal;
  });
  return minimal;
}

std::string format_digits(std::span<const int> digits) {
  std::string out = "{";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(digits[i]);
  }
  return out + "}";
}

}  // namespace capdigits
