#include "capdigits/progressions.hpp"

#include <algorithm>
#include <stdexcept>

namespace capdigits {

int Progression::at(int position) const {
  switch (position) {
    case 1:
      return x;
    case 2:
      return y;
    case 3:
      return z;
    default:
      throw std::out_of_range("progression positions are 1, 2 and 3");
  }
}

std::string to_string(const Progression& v) {
  return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
}

ProgressionTable enumerate_progressions(const DigitSetPair& pair, const LineEquation& eq) {
  if (pair.modulus() != eq.p) throw std::invalid_argument("digit set and equation use different moduli");
  ProgressionTable t{eq, pair, {}};
  const auto& digits = pair.digits();
  const int p = eq.p;
  // For fixed (x, y) the congruence determines z, since c is a unit.
  const int c_inv = inverse_mod(eq.c, p);
  for (int x : digits) {
    for (int y : digits) {
      const int z = mod(-static_cast<std::int64_t>(c_inv) * (x + static_cast<std::int64_t>(eq.b) * y), p);
      if (x == y && y == z) continue;
      if (pair.contains(z)) t.rows.push_back({x, y, z});
    }
  }
  std::sort(t.rows.begin(), t.rows.end());
  return t;
}

ProgressionTable reverse_table(const ProgressionTable& t) {
  const auto eq = make_line_equation(t.pair.prime(), mirror_coefficient(t.equation));
  ProgressionTable out{eq, t.pair, {}};
  out.rows.reserve(t.rows.size());
  for (const auto& v : t.rows) out.rows.push_back({v.z, v.y, v.x});
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

ProgressionTable swap_table(const ProgressionTable& t) {
  const auto eq = make_line_equation(t.pair.prime(), swap_coefficient(t.equation));
  ProgressionTable out{eq, t.pair, {}};
  out.rows.reserve(t.rows.size());
  for (const auto& v : t.rows) out.rows.push_back({v.x, v.z, v.y});
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

ConstraintSystem build_constraint_system(const ProgressionTable& t) {
  const auto& fixed = t.pair.fixed();
  ConstraintSystem sys;
  sys.matrix = IntMatrix(2 * fixed.size(), t.rows.size());
  sys.column_labels = t.rows;
  std::size_t r = 0;
  for (auto [positions, other] : {std::pair{PositionPair::FirstSecond, 2}, std::pair{PositionPair::FirstThird, 3}}) {
    for (int d : fixed) {
      sys.row_labels.push_back({positions, d});
      for (std::size_t j = 0; j < t.rows.size(); ++j) {
        const auto& v = t.rows[j];
        sys.matrix(r, j) = (v.x == d ? 1 : 0) - (v.at(other) == d ? 1 : 0);
      }
      ++r;
    }
  }
  return sys;
}

}  // namespace capdigits
