#include "capdigits/capset.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

namespace capdigits {

PointSet::PointSet(int p, std::size_t dimension) : p_(p), dim_(dimension) {
  if (p < 2 || p > 255) throw std::invalid_argument("point sets support moduli in [2, 255]");
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
}

void PointSet::push_back(std::span<const int> point) {
  if (point.size() != dim_) throw std::invalid_argument("point has the wrong dimension");
  for (int v : point) {
    if (v < 0 || v >= p_) throw std::invalid_argument("coordinate " + std::to_string(v) + " is not a residue");
    coords_.push_back(static_cast<std::uint8_t>(v));
  }
}

void PointSet::push_back(std::span<const std::uint8_t> point) {
  if (point.size() != dim_) throw std::invalid_argument("point has the wrong dimension");
  for (auto v : point) {
    if (v >= p_) throw std::invalid_argument("coordinate " + std::to_string(v) + " is not a residue");
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

void PointSet::canonicalize() {
  std::vector<std::size_t> order(size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = (*this)[a], pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    auto pa = (*this)[a], pb = (*this)[b];
    return std::equal(pa.begin(), pa.end(), pb.begin());
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), equal), order.end());
  std::vector<std::uint8_t> out;
  out.reserve(order.size() * dim_);
  for (auto i : order) {
    auto pt = (*this)[i];
    out.insert(out.end(), pt.begin(), pt.end());
  }
  coords_ = std::move(out);
}

namespace {

void require_divisible(const DigitSetPair& pair, std::size_t n) {
  if (n == 0 || n % pair.size() != 0) {
    throw std::invalid_argument("dimension n = " + std::to_string(n) + " must be a positive multiple of |D| = " +
                                std::to_string(pair.size()));
  }
}

struct CapEnumerator {
  const DigitSetPair& pair;
  std::size_t n;
  std::vector<int> remaining;  // per digit of D; free digits hold -1
  std::size_t required = 0;    // fixed-digit slots still owed
  std::vector<std::uint8_t> current;
  PointSet& out;

  void run(std::size_t pos) {
    if (pos == n) {
      out.push_back(std::span<const std::uint8_t>(current));
      return;
    }
    const auto& digits = pair.digits();
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (remaining[k] > 0) {
        --remaining[k];
        --required;
      } else if (remaining[k] < 0 && n - pos - 1 >= required) {
        // free digit, leaves enough room for the owed fixed digits
      } else {
        continue;
      }
      current[pos] = static_cast<std::uint8_t>(digits[k]);
      run(pos + 1);
      if (remaining[k] >= 0) {
        ++remaining[k];
        ++required;
      }
    }
  }
};

}  // namespace

CapPointSet build_cap(const DigitSetPair& pair, std::size_t n, std::size_t max_points) {
  require_divisible(pair, n);
  const auto est = size_estimate(pair, n);
  if (est.exact_count > Integer(std::to_string(max_points))) {
    throw EnumerationTooLarge("cap has " + est.exact_count.get_str() + " points, above the enumeration cap of " +
                              std::to_string(max_points));
  }
  CapPointSet cap{pair, n, PointSet(pair.modulus(), n)};
  cap.points.reserve(est.exact_count.get_ui());
  const int share = static_cast<int>(n / pair.size());
  CapEnumerator e{pair, n, {}, 0, std::vector<std::uint8_t>(n), cap.points};
  for (int d : pair.digits()) {
    e.remaining.push_back(pair.is_fixed(d) ? share : -1);
    if (pair.is_fixed(d)) e.required += share;
  }
  e.run(0);
  return cap;
}

namespace {

// Open-addressing map from packed point keys to point indices.
class PackedIndex {
 public:
  explicit PackedIndex(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n + 2) cap <<= 1;
    mask_ = cap - 1;
    keys_.assign(cap, kEmpty);
    values_.assign(cap, 0);
  }

  void insert(std::uint64_t key, std::size_t value) {
    for (std::size_t h = slot(key);; h = (h + 1) & mask_) {
      if (keys_[h] == key) return;  // keep the first occurrence
      if (keys_[h] == kEmpty) {
        keys_[h] = key;
        values_[h] = value;
        return;
      }
    }
  }

  std::optional<std::size_t> find(std::uint64_t key) const {
    for (std::size_t h = slot(key);; h = (h + 1) & mask_) {
      if (keys_[h] == key) return values_[h];
      if (keys_[h] == kEmpty) return std::nullopt;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();
  std::size_t slot(std::uint64_t key) const { return (key * 0x9E3779B97F4A7C15ULL >> 17) & mask_; }

  std::size_t mask_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::size_t> values_;
};

bool packable(int p, std::size_t dim) { return static_cast<double>(dim) * std::log2(p) < 63.0; }

std::uint64_t pack(std::span<const std::uint8_t> pt, int p) {
  std::uint64_t key = 0;
  for (auto it = pt.rbegin(); it != pt.rend(); ++it) key = key * static_cast<std::uint64_t>(p) + *it;
  return key;
}

// Sorted fallback for dimensions whose points do not fit in 64 bits.
class SortedIndex {
 public:
  explicit SortedIndex(const PointSet& pts) : pts_(pts), order_(pts.size()) {
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return less(pts_[a], pts_[b]); });
  }

  std::optional<std::size_t> find(std::span<const std::uint8_t> pt) const {
    auto it = std::lower_bound(order_.begin(), order_.end(), pt,
                               [&](std::size_t a, std::span<const std::uint8_t> v) { return less(pts_[a], v); });
    if (it != order_.end() && std::equal(pt.begin(), pt.end(), pts_[*it].begin())) return *it;
    return std::nullopt;
  }

 private:
  static bool less(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
  const PointSet& pts_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::optional<CollinearTriple> verify_cap(const PointSet& points, unsigned workers) {
  const std::size_t count = points.size();
  if (count < 3) return std::nullopt;
  const int p = points.modulus();
  const std::size_t dim = points.dimension();
  const bool use_packed = packable(p, dim);

  std::optional<PackedIndex> packed;
  std::optional<SortedIndex> sorted;
  std::vector<std::uint64_t> pow(dim, 1);
  if (use_packed) {
    for (std::size_t c = 1; c < dim; ++c) pow[c] = pow[c - 1] * static_cast<std::uint64_t>(p);
    packed.emplace(count);
    for (std::size_t i = 0; i < count; ++i) packed->insert(pack(points[i], p), i);
  } else {
    sorted.emplace(points);
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  std::atomic<std::size_t> best_first{count};
  std::vector<std::optional<CollinearTriple>> found(workers);

  auto scan = [&](unsigned tid) {
    std::vector<int> step(dim), cur(dim);
    std::vector<std::uint8_t> buf(dim);
    for (std::size_t i = tid; i < count; i += workers) {
      if (i > best_first.load(std::memory_order_relaxed)) return;
      const auto x = points[i];
      for (std::size_t j = i + 1; j < count; ++j) {
        const auto y = points[j];
        bool same = true;
        for (std::size_t c = 0; c < dim; ++c) {
          step[c] = y[c] >= x[c] ? y[c] - x[c] : y[c] + p - x[c];
          cur[c] = y[c];
          same = same && step[c] == 0;
        }
        if (same) continue;  // duplicate entry, not a pair of distinct points
        for (int t = 2; t < p; ++t) {
          std::optional<std::size_t> hit;
          if (use_packed) {
            std::uint64_t key = 0;
            for (std::size_t c = 0; c < dim; ++c) {
              cur[c] += step[c];
              if (cur[c] >= p) cur[c] -= p;
              key += static_cast<std::uint64_t>(cur[c]) * pow[c];
            }
            hit = packed->find(key);
          } else {
            for (std::size_t c = 0; c < dim; ++c) {
              cur[c] += step[c];
              if (cur[c] >= p) cur[c] -= p;
              buf[c] = static_cast<std::uint8_t>(cur[c]);
            }
            hit = sorted->find(buf);
          }
          if (hit) {
            found[tid] = CollinearTriple{i, j, *hit};
            std::size_t expected = best_first.load();
            while (i < expected && !best_first.compare_exchange_weak(expected, i)) {
            }
            return;
          }
        }
      }
    }
  };

  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(scan, t);
  }

  std::optional<CollinearTriple> best;
  for (const auto& f : found) {
    if (f && (!best || f->first < best->first)) best = f;
  }
  return best;
}

PointSet witness_points(const ProgressionTable& table, std::span<const Integer> witness) {
  if (witness.size() != table.rows.size()) throw std::invalid_argument("witness length does not match the table");
  const auto& pair = table.pair;
  std::vector<std::array<int, 3>> columns;
  for (std::size_t v = 0; v < witness.size(); ++v) {
    if (witness[v] < 0) throw std::invalid_argument("witness entries must be nonnegative");
    for (unsigned long k = 0; k < witness[v].get_ui(); ++k) columns.push_back({table.rows[v].x, table.rows[v].y, table.rows[v].z});
  }
  if (columns.empty()) throw std::invalid_argument("witness is zero");

  const std::size_t digits = pair.size();
  const std::size_t fixed = pair.fixed().size();
  std::vector<std::size_t> count(static_cast<std::size_t>(pair.modulus()), 0);
  std::size_t free_columns = 0;
  for (const auto& col : columns) {
    if (pair.is_fixed(col[0])) {
      ++count[col[0]];
    } else {
      ++free_columns;
    }
  }
  std::size_t m = 0;
  for (const int d : pair.fixed()) m = std::max(m, count[d]);
  if (fixed < digits) m = std::max(m, (free_columns + digits - fixed - 1) / (digits - fixed));
  for (const int d : pair.fixed()) columns.insert(columns.end(), m - count[d], {d, d, d});
  if (fixed < digits) {
    const int filler = *std::ranges::find_if(pair.digits(), [&](int d) { return !pair.is_fixed(d); });
    columns.insert(columns.end(), m * (digits - fixed) - free_columns, {filler, filler, filler});
  }

  PointSet out(pair.modulus(), columns.size());
  std::vector<int> point(columns.size());
  for (int pos = 0; pos < 3; ++pos) {
    for (std::size_t i = 0; i < columns.size(); ++i) point[i] = columns[i][pos];
    out.push_back(point);
  }
  return out;
}

SizeEstimate size_estimate(const DigitSetPair& pair, std::size_t n) {
  require_divisible(pair, n);
  const std::size_t k = pair.size();
  const std::size_t fixed = pair.fixed().size();
  const std::size_t share = n / k;
  SizeEstimate est;
  est.digits = k;
  est.exact_count = 1;
  Integer binom;
  for (std::size_t l = 0; l < fixed; ++l) {
    mpz_bin_uiui(binom.get_mpz_t(), n - l * share, share);
    est.exact_count *= binom;
  }
  Integer free_part;
  mpz_ui_pow_ui(free_part.get_mpz_t(), k - fixed, n - fixed * share);  // 0^0 = 1
  est.exact_count *= free_part;
  est.delta = static_cast<int>(std::min(fixed, k - 1));
  const double d = static_cast<double>(k);
  est.c = std::pow(1.0 - est.delta / d, -0.5) * std::pow(d / (2.0 * std::numbers::pi), est.delta / 2.0);
  return est;
}

double normalized_count(const SizeEstimate& est, std::size_t n) {
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, est.exact_count.get_mpz_t());
  const double log_count = std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
  const double log_ratio =
      log_count + est.delta / 2.0 * std::log(static_cast<double>(n)) - static_cast<double>(n) * std::log(static_cast<double>(est.digits));
  return std::exp(log_ratio);
}

namespace {

bool is_square_mod(int v, int q) {
  v = mod(v, q);
  for (int x = 0; x < q; ++x) {
    if (x * x % q == v) return true;
  }
  return false;
}

}  // namespace

int bose_parameter(int q) {
  if (q < 3 || !is_prime(q)) throw std::invalid_argument("Bose cap needs an odd prime, got " + std::to_string(q));
  // x^2 + x + a is irreducible iff its discriminant 1 - 4a is a non-square.
  for (int a = 0; a < q; ++a) {
    if (!is_square_mod(1 - 4 * a, q)) return a;
  }
  throw std::logic_error("no irreducible quadratic found");
}

PointSet bose_cap(int q, bool projective) {
  const int a = bose_parameter(q);
  PointSet out(q, projective ? 4 : 3);
  out.reserve(static_cast<std::size_t>(q) * q + 1);
  for (int s = 0; s < q; ++s) {
    for (int t = 0; t < q; ++t) {
      const int first = mod(static_cast<std::int64_t>(t) * t + s * t + static_cast<std::int64_t>(a) * s * s, q);
      if (projective) {
        const int pt[] = {first, s, t, 1};
        out.push_back(pt);
      } else {
        const int pt[] = {first, s, t};
        out.push_back(pt);
      }
    }
  }
  if (projective) {
    const int apex[] = {1, 0, 0, 0};
    out.push_back(apex);
  }
  out.canonicalize();
  return out;
}

double eg_constant(int p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("J(p) needs a prime p >= 3");
  const double expo = (p - 1) / 3.0;
  // (1 - t^p) / (1 - t) = 1 + t + ... + t^{p-1}, stable near t = 1.
  auto f = [&](double t) {
    double sum = 0.0, term = 1.0;
    for (int k = 0; k < p; ++k) {
      sum += term;
      term *= t;
    }
    return sum / std::pow(t, expo);
  };
  constexpr double eps = 1e-9;
  constexpr int grid = 10'000;
  const double h = (1.0 - 2 * eps) / grid;
  int best = 0;
  double best_val = f(eps);
  for (int i = 1; i <= grid; ++i) {
    const double v = f(eps + i * h);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = eps + std::max(0, best - 1) * h;
  double hi = eps + std::min(grid, best + 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-10 * std::max(1.0, std::abs(lo))) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, best_val}) / p;
}

BoundTableRow bound_table(int p, int best_digit_set_size) {
  if (p < 2) throw std::invalid_argument("bound table needs p >= 2");
  if (best_digit_set_size < 1) throw std::invalid_argument("digit set size must be positive");
  const double dp = p;
  BoundTableRow row;
  row.p = p;
  row.bose_bound = std::cbrt(dp * dp);
  row.edel_bound = std::pow(dp * dp * dp * dp + dp * dp - 1.0, 1.0 / 6.0);
  row.new_bound = best_digit_set_size;
  row.mu = std::log(static_cast<double>(best_digit_set_size)) / std::log(dp);
  row.improvement_percent = (best_digit_set_size / row.edel_bound - 1.0) * 100.0;
  return row;
}

double truncate_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // Nudge by a few ulps so values that are exact in decimal are not pushed down.
  return std::floor(value * scale * (1.0 + 1e-15)) / scale;
}

void write_points(std::ostream& os, const PointSet& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto pt = points[i];
    for (std::size_t c = 0; c < pt.size(); ++c) os << (c ? " " : "") << static_cast<int>(pt[c]);
    os << '\n';
  }
}

PointSet read_points(std::istream& is, int p) {
  std::optional<PointSet> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> coords;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw std::runtime_error("line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
      coords.push_back(v);
    }
    if (!out) out.emplace(p, coords.size());
    try {
      out->push_back(coords);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!out) throw std::runtime_error("point file is empty");
  return std::move(*out);
}

}  // namespace capdigits
