#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "riccimc/errors.hpp"
#include "riccimc/numeric.hpp"
#include "riccimc/simplex.hpp"

namespace riccimc {

/// The jump-rate multiplier c = 1 / (1 - min_k pi_k). It is the largest c
/// keeping the optimal weight diagonal (1-c) pi_i + c pi_i^2 nonnegative,
/// and satisfies c >= n/(n-1) > 1.
struct RateConstant {
  double value;
};

inline RateConstant optimal_c(const Distribution& pi) {
  return RateConstant{1.0 / (1.0 - pi.min_entry())};
}

/// Symmetric nonnegative edge weights with row sums equal to the target:
/// omega_ij = omega_ji >= 0 (self-loops allowed), sum_j omega_ij = pi_i.
/// The edge set is E = {(i,j), i != j : omega_ij > 0}.
class WeightMatrix {
public:
  WeightMatrix(Eigen::MatrixXd omega, Distribution pi, double row_tol = 1e-12)
      : omega_(std::move(omega)), pi_(std::move(pi)) {
    const Eigen::Index n = omega_.rows();
    if (omega_.cols() != n || n != pi_.size())
      throw DimensionMismatch("weight matrix must be n x n matching pi");
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double scale = std::max({std::abs(omega_(i, j)), std::abs(omega_(j, i)), 1.0});
        if (std::abs(omega_(i, j) - omega_(j, i)) > 1e-14 * scale)
          throw DomainError("weight matrix is not symmetric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        omega_(j, i) = omega_(i, j);  // exact symmetric storage
        if (omega_(i, j) < 0.0)
          throw DomainError("negative weight at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      }
      KahanSum row_acc;
      for (Eigen::Index j = 0; j < n; ++j) row_acc.add(omega_(i, j));
      const double row = row_acc.value();
      if (std::abs(row - pi_[static_cast<int>(i)]) > row_tol)
        throw DomainError("weight row " + std::to_string(i) +
                          " sums to " + std::to_string(row) +
                          " instead of pi_i");
    }
  }

  int size() const { return static_cast<int>(omega_.rows()); }
  double operator()(int i, int j) const { return omega_(i, j); }
  const Eigen::MatrixXd& omega() const { return omega_; }
  const Distribution& pi() const { return pi_; }
  bool is_edge(int i, int j) const { return i != j && omega_(i, j) > 0.0; }

private:
  Eigen::MatrixXd omega_;
  Distribution pi_;
};

/// Continuous-time Markov generator: nonnegative off-diagonal rates, zero
/// row sums, carrying the stationary law it was built for. Reversibility is
/// guaranteed by the builders below and checkable via
/// check_detailed_balance; it is not enforced at construction so that
/// non-reversible rate matrices can be inspected too.
class Generator {
public:
  Generator(Eigen::MatrixXd q, Distribution pi)
      : q_(std::move(q)), pi_(std::move(pi)) {
    const Eigen::Index n = q_.rows();
    if (q_.cols() != n || n != pi_.size())
      throw DimensionMismatch("generator must be n x n matching pi");
    for (Eigen::Index i = 0; i < n; ++i) {
      KahanSum row_acc;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j && q_(i, j) < 0.0)
          throw DomainError("negative off-diagonal rate at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        row_acc.add(q_(i, j));
      }
      if (std::abs(row_acc.value()) > 1e-12)
        throw DomainError("generator row " + std::to_string(i) +
                          " does not sum to zero");
    }
  }

  int size() const { return static_cast<int>(q_.rows()); }
  double operator()(int i, int j) const { return q_(i, j); }
  const Eigen::MatrixXd& q() const { return q_; }
  const Distribution& pi() const { return pi_; }

  /// Largest total jump rate max_i(-Q_ii); reciprocal is the forward-Euler
  /// positivity step bound.
  double max_exit_rate() const { return (-q_.diagonal()).maxCoeff(); }

private:
  Eigen::MatrixXd q_;
  Distribution pi_;
};

/// Rank-one optimal generator: Q_ij = c pi_j off the diagonal,
/// Q_ii = -c (1 - pi_i), i.e. Q = c (1 pi^T - I). Its law relaxes along
/// straight lines to pi at uniform rate c.
inline Generator build_optimal_q(const Distribution& pi) {
  const int n = pi.size();
  const double c = optimal_c(pi).value;
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q(i, j) = c * pi[j];
    q(i, i) = -c * (1.0 - pi[i]);
  }
  return Generator(std::move(q), pi);
}

/// The weights realizing the optimal generator: omega_ij = c pi_i pi_j off
/// the diagonal and (1-c) pi_i + c pi_i^2 on it. The diagonal entry of the
/// smallest state is exactly zero (that constraint pins c), so rounding is
/// clamped at zero.
inline WeightMatrix build_optimal_weights(const Distribution& pi) {
  const int n = pi.size();
  const double c = optimal_c(pi).value;
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = c * pi[i] * pi[j];
    w(i, i) = std::max(0.0, (1.0 - c) * pi[i] + c * pi[i] * pi[i]);
  }
  return WeightMatrix(std::move(w), pi);
}

/// General reversible generator from a weight matrix:
/// Q_ij = omega_ij / pi_i off the diagonal, diagonal balancing the row.
/// Detailed balance Q_ij pi_i = Q_ji pi_j = omega_ij holds by symmetry.
inline Generator build_q_from_weights(const WeightMatrix& w) {
  const int n = w.size();
  const Distribution& pi = w.pi();
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i) {
    double out = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      q(i, j) = w(i, j) / pi[i];
      out += q(i, j);
    }
    q(i, i) = -out;
  }
  return Generator(std::move(q), pi);
}

/// Metropolis-Hastings generator with the uniform proposal:
/// Q_ij = min(1, pi_j/pi_i) / (n-1) off the diagonal. At n = 2 the 1/(n-1)
/// factor is 1 and this coincides with the optimal generator.
inline Generator build_mh_q(const Distribution& pi) {
  const int n = pi.size();
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i) {
    double out = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      q(i, j) = std::min(1.0, pi[j] / pi[i]) / (n - 1);
      out += q(i, j);
    }
    q(i, i) = -out;
  }
  return Generator(std::move(q), pi);
}

/// Worst-pair reversibility residual max_ij |Q_ij pi_i - Q_ji pi_j|.
inline double check_detailed_balance(const Generator& g) {
  const int n = g.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      worst = std::max(worst,
                       std::abs(g(i, j) * g.pi()[i] - g(j, i) * g.pi()[j]));
  return worst;
}

/// Stationarity residual max_i |sum_j (Q_ji pi_j - Q_ij pi_i)|; zero when
/// pi is invariant for the forward equation.
inline double stationarity_residual(const Generator& g) {
  const int n = g.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double flux = 0.0;
    for (int j = 0; j < n; ++j)
      flux += g(j, i) * g.pi()[j] - g(i, j) * g.pi()[i];
    worst = std::max(worst, std::abs(flux));
  }
  return worst;
}

}  // namespace riccimc
