// Slow, independent reference implementations used to cross-check the
// library. Nothing here calls into the code it checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Triple = std::array<int, 3>;

inline int md(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

inline int inv(int a, int p) {
  for (int x = 1; x < p; ++x)
    if (md(static_cast<long long>(a) * x, p) == 1) return x;
  return 0;
}

/// Every (x, y, z) in D^3 with x + b y + c z = 0, c = p - 1 - b, not all equal.
inline std::vector<Triple> progressions(int p, const std::vector<int>& digits, int b) {
  const int c = p - 1 - b;
  std::vector<Triple> out;
  for (int x : digits)
    for (int y : digits)
      for (int z : digits)
        if (!(x == y && y == z) && md(x + static_cast<long long>(b) * y + static_cast<long long>(c) * z, p) == 0)
          out.push_back({x, y, z});
  std::sort(out.begin(), out.end());
  return out;
}

/// Closure of b under b -> c^{-1} b and b -> c, by breadth-first search.
inline std::vector<std::set<int>> equation_classes(int p) {
  std::vector<std::set<int>> classes;
  std::vector<bool> seen(p, false);
  for (int start = 1; start <= p - 2; ++start) {
    if (seen[start]) continue;
    std::set<int> cls{start};
    std::vector<int> todo{start};
    seen[start] = true;
    while (!todo.empty()) {
      const int b = todo.back();
      todo.pop_back();
      const int c = p - 1 - b;
      for (int next : {md(static_cast<long long>(inv(c, p)) * b, p), c}) {
        if (!seen[next]) {
          seen[next] = true;
          cls.insert(next);
          todo.push_back(next);
        }
      }
    }
    classes.push_back(cls);
  }
  return classes;
}

/// All images a*D + s, a != 0, each sorted.
inline std::set<std::vector<int>> affine_orbit(const std::vector<int>& digits, int p) {
  std::set<std::vector<int>> orbit;
  for (int a = 1; a < p; ++a)
    for (int s = 0; s < p; ++s) {
      std::vector<int> img;
      for (int d : digits) img.push_back(md(static_cast<long long>(a) * d + s, p));
      std::sort(img.begin(), img.end());
      orbit.insert(img);
    }
  return orbit;
}

inline std::vector<int> normal_form(const std::vector<int>& digits, int p) { return *affine_orbit(digits, p).begin(); }

/// O(N^3) scan: three distinct points are collinear iff every 2x2 minor of
/// (y - x, z - x) vanishes mod p.
inline bool has_collinear_triple(const std::vector<std::vector<int>>& pts, int p) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::size_t dim = pts[i].size();
        bool dependent = true;
        for (std::size_t r = 0; r < dim && dependent; ++r)
          for (std::size_t s = r + 1; s < dim && dependent; ++s) {
            const long long u1 = pts[j][r] - pts[i][r], u2 = pts[j][s] - pts[i][s];
            const long long v1 = pts[k][r] - pts[i][r], v2 = pts[k][s] - pts[i][s];
            if (md(u1 * v2 - u2 * v1, p) != 0) dependent = false;
          }
        if (dim == 1) dependent = true;
        if (dependent) return true;
      }
  return false;
}

/// |S(D, D', n)| = n! / ((n/|D|)!^{|D'|} (n - |D'| n/|D|)!) * (|D| - |D'|)^{n - |D'| n/|D|}.
inline mpz_class cap_count(std::size_t digits, std::size_t fixed, std::size_t n) {
  const std::size_t k = n / digits;
  const std::size_t rest = n - fixed * k;
  mpz_class num, den, fk, fr, power;
  mpz_fac_ui(num.get_mpz_t(), n);
  mpz_fac_ui(fk.get_mpz_t(), k);
  mpz_fac_ui(fr.get_mpz_t(), rest);
  mpz_pow_ui(den.get_mpz_t(), fk.get_mpz_t(), fixed);
  den *= fr;
  mpz_ui_pow_ui(power.get_mpz_t(), digits - fixed, rest);
  return num / den * power;
}

/// (1/p) min over a uniform grid of (0, 1) of sum_{k<p} t^k / t^{(p-1)/3}.
inline double eg_grid(int p, int points) {
  double best = HUGE_VAL;
  for (int i = 1; i < points; ++i) {
    const double t = static_cast<double>(i) / points;
    double s = 0, tk = 1;
    for (int k = 0; k < p; ++k, tk *= t) s += tk;
    best = std::min(best, s / std::pow(t, (p - 1) / 3.0));
  }
  return best / p;
}

}  // namespace oracle
