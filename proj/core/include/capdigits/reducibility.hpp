#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capdigits/progressions.hpp"

namespace capdigits {

enum class Verdict { ReducedToEmpty, Stuck };

/// One firing of the digit rule: `digit` is absent from `position` in every
/// remaining progression, so every progression containing it is removed.
struct DigitStep {
  int position = 0;
  int digit = 0;
  std::vector<Progression> removed;

  friend bool operator==(const DigitStep&, const DigitStep&) = default;
};

struct DigitTrace {
  std::vector<DigitStep> steps;
  std::vector<Progression> remaining;
  Verdict verdict = Verdict::Stuck;
};

/// A (position, digit) candidate for the digit rule.
struct DigitRuleCandidate {
  int position = 0;
  int digit = 0;
};

/// Default scan order: positions 1, 2, 3 outer, fixed digits ascending inner.
std::vector<DigitRuleCandidate> default_scan_order(const DigitSetPair& pair);

/// Runs the digit rule to a fixpoint, firing the first applicable candidate of
/// `scan_order` and rescanning from the start after every firing.
DigitTrace digit_reduce(const ProgressionTable& table, std::span<const DigitRuleCandidate> scan_order);
DigitTrace digit_reduce(const ProgressionTable& table);
DigitTrace digit_reduce(const DigitSetPair& pair, const LineEquation& eq);

/// Re-applies the recorded steps to `table`, checking each step's
/// applicability, its removal set, the final state and the verdict.
/// Accepts any valid firing order, not only the default one.
bool replay_digit_trace(const ProgressionTable& table, const DigitTrace& trace);

/// One signed row of the reduced echelon form of the surviving columns.
/// `row` indexes that echelon form (0-based) in round `round`; `columns`
/// lists the original column indices where the row is nonzero.
struct MatrixStep {
  std::size_t round = 0;
  std::size_t row = 0;
  std::vector<std::size_t> columns;

  friend bool operator==(const MatrixStep&, const MatrixStep&) = default;
};

struct MatrixTrace {
  std::vector<MatrixStep> steps;
  std::vector<std::size_t> remaining_columns;
  Verdict verdict = Verdict::Stuck;
};

/// Sign-based column deletion on the rational reduced row echelon form.
///
/// Each round computes the echelon form of the surviving columns, fires every
/// nonzero row whose entries share one sign (lowest index first), deletes the
/// union of their supports and starts the next round.
MatrixTrace matrix_reduce(const ConstraintSystem& system);

/// Recomputes every round and checks each recorded row is single-signed with
/// exactly the recorded support.
bool replay_matrix_trace(const ConstraintSystem& system, const MatrixTrace& trace);

enum class Method { Digit, Matrix, Cone };

std::string to_string(Method m);

struct RepresentativeReduction {
  int b = 0;
  std::optional<Method> closed_by;  // Digit or Matrix when reduced
  std::optional<DigitTrace> digit;
  std::optional<MatrixTrace> matrix;
};

struct ReducibilityReport {
  bool reducible = false;
  std::vector<RepresentativeReduction> representatives;
};

ReducibilityReport digit_reducible(const DigitSetPair& pair);
ReducibilityReport matrix_reducible(const DigitSetPair& pair);
/// Reducible when every representative is closed by at least one method.
ReducibilityReport combined_reducible(const DigitSetPair& pair);

/// Narrates a digit trace in the style of a hand proof: the starting list,
/// each deletion with its reason, and what remains.
std::string render_digit_trace(const ProgressionTable& table, const DigitTrace& trace);

/// Narrates a matrix trace round by round (1-based row and column numbers).
std::string render_matrix_trace(const MatrixTrace& trace);

}  // namespace capdigits
