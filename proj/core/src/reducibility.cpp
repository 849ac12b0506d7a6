#include "capdigits/reducibility.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace capdigits {

namespace {

bool occurs_at(std::span<const Progression> rows, int position, int digit) {
  return std::any_of(rows.begin(), rows.end(), [&](const Progression& v) { return v.at(position) == digit; });
}

bool occurs_anywhere(std::span<const Progression> rows, int digit) {
  return std::any_of(rows.begin(), rows.end(), [&](const Progression& v) { return v.contains(digit); });
}

bool rule_applies(std::span<const Progression> rows, const DigitRuleCandidate& cand) {
  return !occurs_at(rows, cand.position, cand.digit) && occurs_anywhere(rows, cand.digit);
}

std::vector<Progression> remove_digit(std::vector<Progression>& rows, int digit) {
  std::vector<Progression> removed;
  std::vector<Progression> kept;
  for (const auto& v : rows) (v.contains(digit) ? removed : kept).push_back(v);
  rows = std::move(kept);
  return removed;
}

enum class Sign { Nonnegative, Nonpositive, Mixed };

Sign row_sign(std::span<const Rational> row) {
  bool pos = false, neg = false;
  for (const auto& v : row) {
    const int s = sgn(v);
    pos |= s > 0;
    neg |= s < 0;
  }
  if (pos && neg) return Sign::Mixed;
  return pos ? Sign::Nonnegative : Sign::Nonpositive;
}

std::vector<std::size_t> all_columns(std::size_t n) {
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  return cols;
}

}  // namespace

std::vector<DigitRuleCandidate> default_scan_order(const DigitSetPair& pair) {
  std::vector<DigitRuleCandidate> order;
  for (int position = 1; position <= 3; ++position) {
    for (int d : pair.fixed()) order.push_back({position, d});
  }
  return order;
}

DigitTrace digit_reduce(const ProgressionTable& table, std::span<const DigitRuleCandidate> scan_order) {
  DigitTrace trace;
  trace.remaining = table.rows;
  bool fired = true;
  while (fired) {
    fired = false;
    for (const auto& cand : scan_order) {
      if (!table.pair.is_fixed(cand.digit)) throw std::invalid_argument("scan order names a digit outside D'");
      if (rule_applies(trace.remaining, cand)) {
        trace.steps.push_back({cand.position, cand.digit, remove_digit(trace.remaining, cand.digit)});
        fired = true;
        break;
      }
    }
  }
  trace.verdict = trace.remaining.empty() ? Verdict::ReducedToEmpty : Verdict::Stuck;
  return trace;
}

DigitTrace digit_reduce(const ProgressionTable& table) {
  const auto order = default_scan_order(table.pair);
  return digit_reduce(table, order);
}

DigitTrace digit_reduce(const DigitSetPair& pair, const LineEquation& eq) {
  return digit_reduce(enumerate_progressions(pair, eq));
}

bool replay_digit_trace(const ProgressionTable& table, const DigitTrace& trace) {
  std::vector<Progression> rows = table.rows;
  for (const auto& step : trace.steps) {
    if (step.position < 1 || step.position > 3 || !table.pair.is_fixed(step.digit)) return false;
    if (!rule_applies(rows, {step.position, step.digit})) return false;
    if (remove_digit(rows, step.digit) != step.removed) return false;
  }
  if (rows != trace.remaining) return false;
  // A stuck verdict must be a genuine fixpoint.
  if (trace.verdict == Verdict::Stuck) {
    for (const auto& cand : default_scan_order(table.pair)) {
      if (rule_applies(rows, cand)) return false;
    }
    return !rows.empty();
  }
  return rows.empty();
}

MatrixTrace matrix_reduce(const ConstraintSystem& system) {
  MatrixTrace trace;
  const RationalMatrix full(system.matrix);
  trace.remaining_columns = all_columns(system.cols());
  for (std::size_t round = 0; !trace.remaining_columns.empty(); ++round) {
    const auto ech = reduced_row_echelon(full.select_columns(trace.remaining_columns));
    std::vector<bool> drop(trace.remaining_columns.size(), false);
    bool fired = false;
    for (std::size_t r = 0; r < ech.rank(); ++r) {
      const auto row = ech.matrix.row(r);
      if (row_sign(row) == Sign::Mixed) continue;
      MatrixStep step{round, r, {}};
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (sgn(row[j]) != 0) {
          step.columns.push_back(trace.remaining_columns[j]);
          drop[j] = true;
        }
      }
      trace.steps.push_back(std::move(step));
      fired = true;
    }
    if (!fired) break;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < drop.size(); ++j) {
      if (!drop[j]) kept.push_back(trace.remaining_columns[j]);
    }
    trace.remaining_columns = std::move(kept);
  }
  trace.verdict = trace.remaining_columns.empty() ? Verdict::ReducedToEmpty : Verdict::Stuck;
  return trace;
}

bool replay_matrix_trace(const ConstraintSystem& system, const MatrixTrace& trace) {
  const RationalMatrix full(system.matrix);
  auto remaining = all_columns(system.cols());
  std::size_t next = 0;
  for (std::size_t round = 0;; ++round) {
    const auto ech = reduced_row_echelon(full.select_columns(remaining));
    std::vector<std::size_t> dropped;
    for (; next < trace.steps.size() && trace.steps[next].round == round; ++next) {
      const auto& step = trace.steps[next];
      if (step.row >= ech.matrix.rows()) return false;
      const auto row = ech.matrix.row(step.row);
      if (ech.matrix.row_is_zero(step.row) || row_sign(row) == Sign::Mixed) return false;
      std::vector<std::size_t> support;
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (sgn(row[j]) != 0) support.push_back(remaining[j]);
      }
      if (support != step.columns) return false;
      dropped.insert(dropped.end(), support.begin(), support.end());
    }
    if (dropped.empty()) break;
    std::sort(dropped.begin(), dropped.end());
    std::vector<std::size_t> kept;
    std::set_difference(remaining.begin(), remaining.end(), dropped.begin(), dropped.end(),
                        std::back_inserter(kept));
    remaining = std::move(kept);
  }
  if (next != trace.steps.size() || remaining != trace.remaining_columns) return false;
  return (trace.verdict == Verdict::ReducedToEmpty) == remaining.empty();
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Digit:
      return "digit";
    case Method::Matrix:
      return "matrix";
    case Method::Cone:
      return "cone";
  }
  return "unknown";
}

namespace {

enum class Mode { DigitOnly, MatrixOnly, Either };

ReducibilityReport reduce_all(const DigitSetPair& pair, Mode mode) {
  ReducibilityReport report{true, {}};
  for (int b : equation_classes(pair.prime()).representatives()) {
    const auto table = enumerate_progressions(pair, make_line_equation(pair.prime(), b));
    RepresentativeReduction rep{b, std::nullopt, std::nullopt, std::nullopt};
    if (mode != Mode::MatrixOnly) {
      rep.digit = digit_reduce(table);
      if (rep.digit->verdict == Verdict::ReducedToEmpty) rep.closed_by = Method::Digit;
    }
    if (mode == Mode::MatrixOnly || (mode == Mode::Either && !rep.closed_by)) {
      rep.matrix = matrix_reduce(build_constraint_system(table));
      if (rep.matrix->verdict == Verdict::ReducedToEmpty) rep.closed_by = Method::Matrix;
    }
    report.reducible = report.reducible && rep.closed_by.has_value();
    report.representatives.push_back(std::move(rep));
  }
  return report;
}

}  // namespace

ReducibilityReport digit_reducible(const DigitSetPair& pair) { return reduce_all(pair, Mode::DigitOnly); }
ReducibilityReport matrix_reducible(const DigitSetPair& pair) { return reduce_all(pair, Mode::MatrixOnly); }
ReducibilityReport combined_reducible(const DigitSetPair& pair) { return reduce_all(pair, Mode::Either); }

namespace {

void list_rows(std::ostream& os, std::span<const Progression> rows) {
  if (rows.empty()) {
    os << "  (none)\n";
    return;
  }
  os << "  ";
  for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ", " : "") << to_string(rows[i]);
  os << "\n";
}

const char* ordinal(int position) {
  switch (position) {
    case 1:
      return "first";
    case 2:
      return "second";
    default:
      return "third";
  }
}

}  // namespace

std::string render_digit_trace(const ProgressionTable& table, const DigitTrace& trace) {
  std::ostringstream os;
  os << "Case " << describe(table.equation) << " (b = " << table.equation.b << ").\n";
  os << "Non-trivial weighted progressions:\n";
  list_rows(os, table.rows);
  std::vector<Progression> rows = table.rows;
  for (const auto& step : trace.steps) {
    std::vector<Progression> kept;
    for (const auto& v : rows) {
      if (!v.contains(step.digit)) kept.push_back(v);
    }
    rows = std::move(kept);
    os << "The digit " << step.digit << " never occurs in the " << ordinal(step.position)
       << " position, so we delete";
    for (std::size_t i = 0; i < step.removed.size(); ++i) os << (i ? ", " : " ") << to_string(step.removed[i]);
    os << ". Remaining:\n";
    list_rows(os, rows);
  }
  os << (trace.verdict == Verdict::ReducedToEmpty ? "No non-trivial progression remains.\n"
                                                  : "The rule no longer applies; the reduction is stuck.\n");
  return os.str();
}

std::string render_matrix_trace(const MatrixTrace& trace) {
  std::ostringstream os;
  std::size_t round = static_cast<std::size_t>(-1);
  for (const auto& step : trace.steps) {
    if (step.round != round) {
      round = step.round;
      os << "Round " << round + 1 << ":\n";
    }
    os << "  row " << step.row + 1 << " is single-signed; delete columns";
    for (auto c : step.columns) os << " " << c + 1;
    os << "\n";
  }
  os << (trace.verdict == Verdict::ReducedToEmpty ? "All columns deleted.\n"
                                                  : std::to_string(trace.remaining_columns.size()) +
                                                        " columns survive; the reduction is stuck.\n");
  return os.str();
}

}  // namespace capdigits
