#include "capdigits/cone.hpp"

#include <algorithm>
#include <cmath>

namespace capdigits {

namespace {

// Dense phase-one tableau for  M chi + a = e,  chi, a >= 0,  minimize sum(a),
// where M stacks A over a row of ones and e = (0, ..., 0, 1).
class PhaseOne {
 public:
  explicit PhaseOne(const IntMatrix& a)
      : m_(a.rows() + 1), n_(a.cols()), width_(n_ + m_), tab_(m_ * width_), rhs_(m_), cost_(width_), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = i + 1 < m_ ? a(i, j) : 1;
      at(i, n_ + i) = 1;
      basis_[i] = n_ + i;
    }
    rhs_[m_ - 1] = 1;
    // Reduced costs with every artificial basic: d_j = -sum_i M_ij.
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < m_; ++i) cost_[j] -= at(i, j);
    }
    objective_ = 1;
  }

  void solve() {
    for (;;) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rational ratio = rhs_[i] / at(i, enter);
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      // The objective is bounded below by 0, so some row always limits the step.
      pivot(leave, enter);
    }
  }

  bool feasible() const { return sgn(objective_) == 0; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

  // Optimal duals w of the phase-one problem: w_i = 1 - d(artificial i).
  std::vector<Rational> duals() const {
    std::vector<Rational> w(m_);
    for (std::size_t i = 0; i < m_; ++i) w[i] = 1 - cost_[n_ + i];
    return w;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return tab_[i * width_ + j]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / at(row, col);
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(at(row, j)) != 0) at(row, j) *= inv;
    }
    rhs_[row] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || sgn(at(i, col)) == 0) continue;
      const Rational f = at(i, col);
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(at(row, j)) != 0) at(i, j) -= f * at(row, j);
      }
      rhs_[i] -= f * rhs_[row];
    }
    if (sgn(cost_[col]) != 0) {
      const Rational f = cost_[col];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(at(row, j)) != 0) cost_[j] -= f * at(row, j);
      }
      objective_ += f * rhs_[row];
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<Rational> tab_;
  std::vector<Rational> rhs_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  Rational objective_;
};

std::vector<Integer> integral_direction(const std::vector<Rational>& x) {
  Integer denom_lcm = 1;
  for (const auto& v : x) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> out(x.size());
  Integer g = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = x[j].get_num() * (denom_lcm / x[j].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

std::vector<Rational> transpose_times(const IntMatrix& a, const std::vector<Rational>& y) {
  std::vector<Rational> out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) out[j] += y[i] * a(i, j);
    }
  }
  return out;
}

}  // namespace

ConeCertificate cone_trivial(const IntMatrix& matrix) {
  ConeCertificate cert;
  if (matrix.cols() == 0) {
    cert.kind = ConeKind::Trivial;
    cert.dual.assign(matrix.rows(), Rational(0));
    return cert;
  }
  PhaseOne lp(matrix);
  lp.solve();
  if (lp.feasible()) {
    cert.kind = ConeKind::Nontrivial;
    cert.witness = integral_direction(lp.primal());
    return cert;
  }
  // Infeasible: -w is a Farkas ray; w_last equals the positive optimum.
  const auto w = lp.duals();
  const Rational scale = w.back();
  std::vector<Rational> y(matrix.rows());
  for (std::size_t i = 0; i < matrix.rows(); ++i) y[i] = -w[i] / scale;
  const auto aty = transpose_times(matrix, y);
  const Rational smallest = *std::min_element(aty.begin(), aty.end());
  for (auto& v : y) v /= smallest;
  cert.kind = ConeKind::Trivial;
  cert.dual = std::move(y);
  return cert;
}

ConeCertificate cone_trivial(const ConstraintSystem& system) { return cone_trivial(system.matrix); }

bool verify_certificate(const IntMatrix& matrix, const ConeCertificate& cert) {
  if (cert.kind == ConeKind::Trivial) {
    if (cert.dual.size() != matrix.rows()) throw std::invalid_argument("dual vector length does not match rows");
    const auto aty = transpose_times(matrix, cert.dual);
    return std::all_of(aty.begin(), aty.end(), [](const Rational& v) { return v >= 1; });
  }
  if (cert.witness.size() != matrix.cols()) throw std::invalid_argument("witness length does not match columns");
  bool nonzero = false;
  for (const auto& v : cert.witness) {
    if (sgn(v) < 0) return false;
    nonzero |= sgn(v) > 0;
  }
  if (!nonzero) return false;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (matrix(i, j) != 0) sum += cert.witness[j] * matrix(i, j);
    }
    if (sgn(sum) != 0) return false;
  }
  return true;
}

bool verify_certificate(const ConstraintSystem& system, const ConeCertificate& cert) {
  return verify_certificate(system.matrix, cert);
}

std::optional<std::vector<int>> integer_oracle(const IntMatrix& matrix, int bound) {
  if (bound < 1) throw std::invalid_argument("oracle bound must be positive");
  const double log_count = static_cast<double>(matrix.cols()) * std::log10(bound + 1.0);
  if (log_count > 8.0 + 1e-12) throw InstanceTooLarge("integer oracle instance exceeds 1e8 assignments");
  const std::size_t n = matrix.cols();
  const std::size_t m = matrix.rows();
  std::vector<int> chi(n, 0);
  std::vector<long long> image(m, 0);
  for (;;) {
    std::size_t j = 0;
    while (j < n && chi[j] == bound) {
      for (std::size_t i = 0; i < m; ++i) image[i] -= static_cast<long long>(bound) * matrix(i, j);
      chi[j] = 0;
      ++j;
    }
    if (j == n) return std::nullopt;
    ++chi[j];
    for (std::size_t i = 0; i < m; ++i) image[i] += matrix(i, j);
    if (std::all_of(image.begin(), image.end(), [](long long v) { return v == 0; })) return chi;
  }
}

AdmissibilityReport admissible(const DigitSetPair& pair) {
  AdmissibilityReport report{true, {}};
  for (int b : equation_classes(pair.prime()).representatives()) {
    const auto table = enumerate_progressions(pair, make_line_equation(pair.prime(), b));
    auto cert = cone_trivial(build_constraint_system(table));
    report.admissible = report.admissible && cert.kind == ConeKind::Trivial;
    report.representatives.push_back({b, std::move(cert)});
  }
  return report;
}

bool is_admissible(const DigitSetPair& pair) {
  for (int b : equation_classes(pair.prime()).representatives()) {
    const auto table = enumerate_progressions(pair, make_line_equation(pair.prime(), b));
    if (cone_trivial(build_constraint_system(table)).kind == ConeKind::Nontrivial) return false;
  }
  return true;
}

}  // namespace capdigits
