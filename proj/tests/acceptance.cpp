// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "capdigits/capset.hpp"
#include "capdigits/cone.hpp"
#include "capdigits/equivalence.hpp"
#include "capdigits/progressions.hpp"
#include "capdigits/rational_matrix.hpp"
#include "capdigits/reducibility.hpp"
#include "capdigits/search.hpp"
#include "capdigits/serialize.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace capdigits;
using Clock = std::chrono::steady_clock;

namespace {

// Wall-clock limits in seconds.
constexpr double kGoldenListsLimit = 1.0;
constexpr double kGoldenMatrixLimit = 1.0;
constexpr double kReducibilityLimit = 10.0;
constexpr double kClassesLimit = 1.0;
constexpr double kCapSmallLimit = 1.0;
constexpr double kCapCountLimit = 30.0;
constexpr double kCapSeventeenLimit = 180.0;
constexpr double kSweep7Limit = 60.0;
constexpr double kSweep11Limit = 300.0;
constexpr double kSweep13Limit = 900.0;
constexpr double kSweep17Limit = 7200.0;
constexpr double kSweep23Limit = 7200.0;

// Numeric tolerances.
constexpr int kTableDecimals = 5;
constexpr double kEgTarget = 0.8414;
constexpr double kEgTolerance = 0.02;
constexpr double kAsymptoticTolerance = 0.05;

constexpr int kFuzzSystems = 1000;
constexpr int kOracleBound = 3;
constexpr int kImplicationPairs = 500;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects sub-check failures and timings for one criterion.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  /// Runs `body` and fails the criterion when it exceeds `limit` seconds.
  template <class F>
  void timed(const std::string& label, double limit, F&& body) {
    const auto start = Clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      failures_.push_back(label + " threw: " + e.what());
    }
    const double t = seconds_since(start);
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << label << " " << t << "s/" << limit << "s";
    timings_.push_back(os.str());
    if (t > limit) failures_.push_back(label + " over time limit");
  }

  void note(const std::string& s) { timings_.push_back(s); }
  bool ok() const { return failures_.empty(); }

  std::string detail() const {
    std::string out;
    for (const auto& t : timings_) out += (out.empty() ? "" : "; ") + t;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + std::string("FAILED: ") + f;
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> timings_;
};

const DigitSet kD11{0, 1, 3, 4, 5};
const DigitSet kD17{0, 1, 2, 4, 8, 9, 13};
const DigitSet kD23{0, 1, 3, 4, 8, 9, 10, 12, 17};
const DigitSet kD29{0, 1, 2, 3, 4, 6, 14, 16, 22, 26};
const DigitSet kD41{1, 2, 4, 5, 6, 9, 15, 16, 27, 32, 33, 35};

DigitSetPair pair11() { return DigitSetPair(Prime(11), kD11, {0, 1, 3}); }
DigitSetPair pair17() { return DigitSetPair(Prime(17), kD17, {0, 1, 2, 4, 8}); }
DigitSetPair pair23_small() { return DigitSetPair(Prime(23), kD23, {0, 1, 3, 4, 8, 10, 17}); }
DigitSetPair pair29() { return DigitSetPair(Prime(29), kD29, {1, 2, 3, 4, 6, 16, 22, 26}); }
DigitSetPair pair41() { return DigitSetPair(Prime(41), kD41, {1, 2, 4, 5, 6, 9, 15, 27, 32, 33}); }

void golden_lists(Report& r) {
  r.timed("lists", kGoldenListsLimit, [&] {
    int cases = 0;
    for (const char* file : {"p11_progressions.json", "p17_progressions.json"}) {
      const auto g = load_golden(file);
      const Prime p(g["p"].get<int>());
      const auto pair = DigitSetPair::all_fixed(p, g["digits"].get<DigitSet>());
      for (const auto& [b, list] : g["cases"].items()) {
        const auto table = enumerate_progressions(pair, make_line_equation(p, std::stoi(b)));
        r.expect(table.rows == golden_progressions(list), std::string(file) + " b=" + b);
        ++cases;
      }
    }
    const auto g = load_golden("p23_matrix.json");
    const auto table = enumerate_progressions(DigitSetPair::all_fixed(Prime(23), g["digits"].get<DigitSet>()),
                                              make_line_equation(Prime(23), g["b"].get<int>()));
    r.expect(table.rows == golden_progressions(g["progressions"]), "p=23 triples");
    r.expect(table.rows.size() == 22, "p=23 has 22 triples");
    r.expect(cases == 5, "five printed p=11/p=17 cases");
  });
}

void golden_matrix_check(Report& r) {
  r.timed("matrix", kGoldenMatrixLimit, [&] {
    const auto g = load_golden("p23_matrix.json");
    const auto table = enumerate_progressions(DigitSetPair::all_fixed(Prime(23), g["digits"].get<DigitSet>()),
                                              make_line_equation(Prime(23), g["b"].get<int>()));
    const auto system = build_constraint_system(table);
    r.expect(system.matrix.rows() == 18 && system.matrix.cols() == 22, "A is 18x22");
    r.expect(system.matrix == golden_matrix(g["A"]), "A entry-exact");
    const RationalMatrix a(system.matrix);
    const RationalMatrix printed(golden_matrix(g["A_r"]));
    r.expect(reduced_row_echelon(a).rank() == 15, "rank 15");
    r.expect(rank(printed) == 15, "printed A_r rank 15");
    r.expect(same_row_space(a, printed), "row space equals printed A_r");
  });
}

void reducibility(Report& r) {
  r.timed("verdicts", kReducibilityLimit, [&] {
    for (const auto& pair : {pair11(), pair17(), pair29(), pair41()})
      r.expect(digit_reducible(pair).reducible, "digit-reducible p=" + std::to_string(pair.modulus()));
    r.expect(matrix_reducible(DigitSetPair::all_fixed(Prime(23), kD23)).reducible, "matrix-reducible p=23 D'=D");
    r.expect(!matrix_reducible(pair17()).reducible, "p=17 pair not matrix-reducible");
    const auto small = pair23_small();
    r.expect(!digit_reducible(small).reducible, "p=23 |D'|=7 not digit-reducible");
    r.expect(!matrix_reducible(small).reducible, "p=23 |D'|=7 not matrix-reducible");
    const auto report = admissible(small);
    r.expect(report.admissible, "p=23 |D'|=7 admissible");
    r.expect(report.representatives.size() == 4, "four representatives");
    for (const auto& rep : report.representatives) {
      const auto system =
          build_constraint_system(enumerate_progressions(small, make_line_equation(Prime(23), rep.b)));
      r.expect(rep.certificate.kind == ConeKind::Trivial && verify_certificate(system, rep.certificate),
               "certified trivial b=" + std::to_string(rep.b));
    }
  });
}

void classes(Report& r) {
  r.timed("classes", kClassesLimit, [&] {
    const auto golden = load_golden("equation_classes.json");
    for (const auto& [key, printed] : golden.items()) {
      const int p = std::stoi(key);
      std::set<std::set<int>> expected, got;
      for (const auto& cls : printed) {
        std::set<int> bs;
        for (const auto& k : cls) bs.insert(b_from_z_coefficient(p, k.get<int>()));
        expected.insert(bs);
      }
      for (const auto& cls : equation_classes(Prime(p)).classes)
        got.insert(std::set<int>(cls.members.begin(), cls.members.end()));
      r.expect(got == expected, "printed classes p=" + key);
    }
    for (int p = 5; p <= 41; p += 6) {
      if (!is_prime(p)) continue;
      r.expect(equation_classes(Prime(p)).classes.size() == static_cast<std::size_t>((p + 1) / 6),
               "(p+1)/6 classes p=" + std::to_string(p));
    }
  });
}

void caps(Report& r) {
  r.timed("p=11 n=5", kCapSmallLimit, [&] {
    const auto cap = build_cap(pair11(), 5);
    r.expect(cap.points.size() == 240, "240 points");
    r.expect(!verify_cap(cap.points).has_value(), "p=11 n=5 is a cap");
  });
  r.timed("p=11 n=10 count", kCapCountLimit, [&] {
    const auto cap = build_cap(pair11(), 10);
    r.expect(cap.points.size() == 302400, "302400 points");
    r.expect(size_estimate(pair11(), 10).exact_count == Integer(302400), "closed-form count");
    r.expect(oracle::cap_count(5, 3, 10) == Integer(302400), "oracle count");
  });
  r.timed("p=17 n=7", kCapSeventeenLimit, [&] {
    const auto cap = build_cap(pair17(), 7);
    r.expect(cap.points.size() == 10080, "10080 points");
    r.expect(!verify_cap(cap.points).has_value(), "p=17 n=7 is a cap");
  });
  const auto cap = build_cap(pair11(), 5).points;
  PointSet corrupted(11, 5);
  for (std::size_t i = 0; i < cap.size(); ++i) corrupted.push_back(cap[i]);
  std::vector<int> extra(5);
  for (std::size_t k = 0; k < 5; ++k) extra[k] = mod(2 * cap[1][k] - cap[0][k], 11);
  corrupted.push_back(extra);
  const auto triple = verify_cap(corrupted);
  r.expect(triple.has_value(), "corrupted set rejected");
  if (triple) {
    std::ostringstream os;
    os << "corrupted witness (" << triple->first << "," << triple->second << "," << triple->third << ")";
    r.note(os.str());
    std::vector<std::vector<int>> pts;
    for (auto i : {triple->first, triple->second, triple->third})
      pts.emplace_back(corrupted[i].begin(), corrupted[i].end());
    r.expect(oracle::has_collinear_triple(pts, 11), "reported triple is collinear");
  }
}

void table(Report& r) {
  struct Row {
    int p;
    double bose;
    double edel;
  };
  const std::vector<Row> rows{{5, 2.92401, 2.94243},   {7, 3.65930, 3.67139},   {11, 4.94608, 4.95282},
                              {13, 5.52877, 5.53418},  {17, 6.61148, 6.61528},  {19, 7.12036, 7.12364},
                              {23, 8.08757, 8.09012},  {29, 9.43913, 9.44099},  {31, 9.86827, 9.86998},
                              {37, 11.10370, 11.10505}, {41, 11.89020, 11.89138}};
  for (const auto& row : rows) {
    const auto t = bound_table(row.p, 3);
    r.expect(truncate_decimals(t.bose_bound, kTableDecimals) == row.bose, "p^(2/3) p=" + std::to_string(row.p));
    r.expect(truncate_decimals(t.edel_bound, kTableDecimals) == row.edel, "edel p=" + std::to_string(row.p));
  }
  const std::vector<std::tuple<int, int, double>> mus{{11, 5, 0.67118}, {17, 7, 0.68682}, {23, 9, 0.70075}};
  for (const auto& [p, size, mu] : mus)
    r.expect(truncate_decimals(bound_table(p, size).mu, kTableDecimals) == mu, "mu p=" + std::to_string(p));
  r.note("11 rows, 3 mu values");
}

void sweeps(Report& r) {
  const std::vector<std::tuple<int, int, double>> targets{
      {7, 3, kSweep7Limit}, {11, 5, kSweep11Limit}, {13, 4, kSweep13Limit}, {17, 7, kSweep17Limit}, {23, 9, kSweep23Limit}};
  for (const auto& [p, expected, limit] : targets) {
    r.timed("p=" + std::to_string(p), limit, [&] {
      const auto report = max_admissible_size(Prime(p));
      r.expect(report.max_size == expected && report.maximality == Maximality::Proven,
               "max for p=" + std::to_string(p) + " is " + std::to_string(report.max_size));
      for (const auto& e : report.admissible)
        r.expect(verify_pair_verdict(e.verdict), "admissible certificate p=" + std::to_string(p));
    });
  }
}

void certificates(Report& r) {
  int emitted = 0;
  for (int p : {7, 11, 13}) {
    const auto report = max_admissible_size(Prime(p));
    for (const auto& e : report.admissible) {
      const auto check = verify_certificate_document(to_json(e.verdict));
      r.expect(check.ok, "bundle p=" + std::to_string(p));
      for (const auto& rep : e.verdict.representatives)
        r.expect(verify_certificate_document(representative_certificate(e.verdict.pair, rep)).ok, "single cert");
      ++emitted;
    }
    for (const auto& ref : report.refutations) {
      const auto system =
          build_constraint_system(enumerate_progressions(DigitSetPair::all_fixed(Prime(p), ref.digits),
                                                         make_line_equation(Prime(p), ref.b)));
      r.expect(ref.witness.kind == ConeKind::Nontrivial && verify_certificate(system, ref.witness), "refutation");
      ++emitted;
    }
  }
  for (const auto& pair : {pair11(), pair17(), pair23_small(), pair29(), pair41()}) {
    r.expect(verify_certificate_document(to_json(check_pair(pair))).ok, "printed pair bundle");
    ++emitted;
  }

  std::mt19937 rng(2024);
  int agree = 0, beyond_bound = 0, nontrivial = 0;
  for (int i = 0; i < kFuzzSystems; ++i) {
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t cols = 1 + rng() % 7;
    std::vector<int> data(rows * cols);
    for (auto& v : data) v = static_cast<int>(rng() % 5) - 2;
    const IntMatrix a(rows, cols, std::move(data));
    const auto cert = cone_trivial(a);
    r.expect(verify_certificate(a, cert), "fuzz certificate verifies");
    const auto found = integer_oracle(a, kOracleBound);
    if (cert.kind == ConeKind::Trivial) {
      r.expect(!found.has_value(), "oracle found a point in a trivial cone");
      ++agree;
      continue;
    }
    ++nontrivial;
    const bool small = std::ranges::all_of(cert.witness, [](const Integer& v) { return v <= kOracleBound; });
    if (found) {
      ++agree;
    } else if (small) {
      r.expect(false, "oracle missed a witness within its bound");
    } else {
      ++beyond_bound;
    }
  }
  r.note(std::to_string(emitted) + " certificates; fuzz agree " + std::to_string(agree) + "/" +
         std::to_string(kFuzzSystems) + " (" + std::to_string(nontrivial) + " nontrivial, " +
         std::to_string(beyond_bound) + " need entries > " + std::to_string(kOracleBound) + ")");
}

void implications(Report& r) {
  std::mt19937 rng(17);
  const std::vector<int> primes{5, 7, 11, 13, 17};
  int reduced_reps = 0, enlarged = 0;
  for (int trial = 0; trial < kImplicationPairs; ++trial) {
    const Prime p(primes[rng() % primes.size()]);
    std::vector<int> all(p.value());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t k = 2 + rng() % std::min<std::size_t>(5, p.value() - 1);
    DigitSet d(all.begin(), all.begin() + k);
    std::ranges::sort(d);
    DigitSet f;
    for (int x : d)
      if (rng() % 2) f.push_back(x);
    if (f.empty()) f.push_back(d[rng() % d.size()]);
    const DigitSetPair pair(p, d, f);
    const std::string tag = "p=" + std::to_string(p.value()) + " trial " + std::to_string(trial);

    const auto cone = admissible(pair);
    const auto trivial_for = [&](int b) {
      for (const auto& rep : cone.representatives)
        if (rep.b == b) return rep.certificate.kind == ConeKind::Trivial;
      return false;
    };
    for (const auto& rep : digit_reducible(pair).representatives)
      if (rep.closed_by) r.expect(trivial_for(rep.b), "digit success without trivial cone " + tag), ++reduced_reps;
    for (const auto& rep : matrix_reducible(pair).representatives)
      if (rep.closed_by) r.expect(trivial_for(rep.b), "matrix success without trivial cone " + tag), ++reduced_reps;

    if (cone.admissible && f.size() < d.size()) {
      DigitSet bigger = f;
      for (int x : d)
        if (std::ranges::find(f, x) == f.end()) {
          bigger.push_back(x);
          break;
        }
      std::ranges::sort(bigger);
      r.expect(is_admissible(DigitSetPair(p, d, bigger)), "enlarging D' broke admissibility " + tag);
      ++enlarged;
    }

    const AffineMap map{1 + static_cast<int>(rng() % (p.value() - 1)), static_cast<int>(rng() % p.value())};
    const DigitSetPair image(p, apply(map, d, p.value()), apply(map, f, p.value()));
    r.expect(is_admissible(image) == cone.admissible, "affine image changed admissibility " + tag);
  }
  r.note(std::to_string(reduced_reps) + " reduced representatives, " + std::to_string(enlarged) + " enlargements");
}

void constants(Report& r) {
  const double j101 = eg_constant(101);
  r.expect(std::abs(j101 - kEgTarget) <= kEgTolerance, "J(101)");
  double prev = eg_constant(5);
  for (int p = 7; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    const double j = eg_constant(p);
    r.expect(j < prev, "J decreasing at p=" + std::to_string(p));
    prev = j;
  }
  const auto pair = pair11();
  const std::size_t n = 40 * pair.digits().size();
  const auto est = size_estimate(pair, n);
  const double ratio = normalized_count(est, n) / est.c;
  r.expect(std::abs(ratio - 1.0) <= kAsymptoticTolerance, "asymptotic ratio");
  std::ostringstream os;
  os.precision(6);
  os << "J(101)=" << j101 << ", ratio at n=" << n << " is " << ratio;
  r.note(os.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria{
      {"golden progression lists", golden_lists},
      {"golden constraint matrix", golden_matrix_check},
      {"reducibility verdicts", reducibility},
      {"equation classes", classes},
      {"cap verification", caps},
      {"bound table", table},
      {"maximality sweeps", sweeps},
      {"certificate soundness", certificates},
      {"cross-module implications", implications},
      {"analysis constants", constants}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report report;
    try {
      criteria[i].second(report);
    } catch (const std::exception& e) {
      report.expect(false, std::string("threw: ") + e.what());
    }
    if (!report.ok()) ++failed;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (report.ok() ? "PASS" : "FAIL")
              << " (" << report.detail() << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed;
}
