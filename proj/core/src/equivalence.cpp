#include "capdigits/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

namespace capdigits {

namespace {

std::vector<int> circular_gaps(const DigitSet& sorted, int p) {
  std::vector<int> gaps;
  gaps.reserve(sorted.size());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps.push_back(sorted[i + 1] - sorted[i]);
  gaps.push_back(sorted.front() + p - sorted.back());
  return gaps;
}

std::vector<int> least_rotation_or_reflection(std::vector<int> gaps) {
  std::vector<int> best = gaps;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < gaps.size(); ++r) {
      std::rotate(gaps.begin(), gaps.begin() + 1, gaps.end());
      best = std::min(best, gaps);
    }
    std::reverse(gaps.begin(), gaps.end());
  }
  return best;
}

}  // namespace

std::vector<int> difference_multiset(std::span<const int> digits, int p) {
  const auto sorted = make_digit_set(digits, p);
  if (sorted.empty()) throw std::invalid_argument("difference multiset needs at least one digit");
  auto gaps = circular_gaps(sorted, p);
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

std::vector<int> gap_cycle(std::span<const int> digits, int p) {
  const auto sorted = make_digit_set(digits, p);
  if (sorted.empty()) throw std::invalid_argument("gap cycle needs at least one digit");
  return least_rotation_or_reflection(circular_gaps(sorted, p));
}

DigitSet apply(const AffineMap& f, std::span<const int> digits, int p) {
  DigitSet out;
  out.reserve(digits.size());
  for (int d : digits) out.push_back(f(d, p));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<AffineMap> affine_equivalent(std::span<const int> d1, std::span<const int> d2, Prime p) {
  const int q = p.value();
  const auto from = make_digit_set(d1, q);
  const auto to = make_digit_set(d2, q);
  if (from.size() != to.size()) throw std::invalid_argument("digit sets differ in size");
  for (int a = 1; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const AffineMap f{a, b};
      if (apply(f, from, q) == to) return f;
    }
  }
  return std::nullopt;
}

Fingerprint fingerprint(std::span<const int> digits, Prime p) {
  const int q = p.value();
  Fingerprint best;
  bool first = true;
  for (int a = 1; a < q; ++a) {
    const auto scaled = apply(AffineMap{a, 0}, digits, q);
    auto ms = difference_multiset(scaled, q);
    auto cyc = gap_cycle(scaled, q);
    if (first || ms < best.multiset) best.multiset = std::move(ms);
    if (first || cyc < best.cycle) best.cycle = std::move(cyc);
    first = false;
  }
  return best;
}

Classification classify(std::span<const DigitSet> sets, Prime p) {
  Classification out;
  std::vector<DigitSet> representatives;
  for (const auto& raw : sets) {
    const auto set = make_digit_set(raw, p.value());
    const auto fp = fingerprint(set, p);
    std::optional<std::size_t> home;
    for (std::size_t k = 0; k < out.classes.size() && !home; ++k) {
      auto& cls = out.classes[k];
      if (cls.fingerprint != fp || representatives[k].size() != set.size()) continue;
      if (affine_equivalent(set, representatives[k], p)) {
        home = k;
      } else {
        ++out.fingerprint_collisions;
      }
    }
    if (home) {
      out.classes[*home].members.push_back(set);
    } else {
      EquivalenceClass cls;
      cls.id = out.classes.size();
      cls.canonical = set.size() >= 2 ? normalize_digit_set(set, p) : DigitSet{0};
      cls.members.push_back(set);
      cls.fingerprint = fp;
      out.classes.push_back(std::move(cls));
      representatives.push_back(set);
    }
  }
  return out;
}

}  // namespace capdigits
