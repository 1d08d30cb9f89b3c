#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "riccimc/errors.hpp"
#include "riccimc/numeric.hpp"
#include "riccimc/rng.hpp"

namespace riccimc {

inline constexpr double kDefaultNormTol = 1e-12;

/// A strictly positive probability vector on n >= 2 states.
///
/// Strict positivity is part of the contract: the optimal rate constant
/// divides by 1 - min(pi), and the mobility/curvature formulas divide by
/// entries of both the target and the evolving law.
class Distribution {
public:
  /// Validates and (within `tol` of unit mass) renormalizes `raw`.
  explicit Distribution(Eigen::VectorXd raw, double tol = kDefaultNormTol)
      : values_(std::move(raw)) {
    const Eigen::Index n = values_.size();
    if (n < 2)
      throw TooFewStates("distribution needs at least 2 states, got " +
                         std::to_string(n));
    KahanSum acc;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(values_[i] > 0.0))
        throw NonPositiveEntry("distribution entry " + std::to_string(i) +
                               " is not strictly positive");
      acc.add(values_[i]);
    }
    const double sum = acc.value();
    if (std::abs(sum - 1.0) > tol)
      throw NotNormalized("distribution mass " + std::to_string(sum) +
                          " deviates from 1 by more than tolerance");
    values_ /= sum;
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const Eigen::VectorXd& values() const { return values_; }
  double min_entry() const { return values_.minCoeff(); }

private:
  Eigen::VectorXd values_;
};

inline Distribution validate_distribution(const Eigen::VectorXd& raw,
                                          double tol = kDefaultNormTol) {
  return Distribution(raw, tol);
}

/// Uniform draw from the open simplex: normalized i.i.d. standard
/// exponentials (equivalently a flat Dirichlet). Redraws on entries below
/// 1e-12 so the strict-positivity invariant holds with margin.
inline Distribution sample_uniform_simplex(int n, RandomSource& rng) {
  if (n < 2) throw TooFewStates("simplex sampling needs n >= 2");
  Eigen::VectorXd e(n);
  while (true) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      e[i] = rng.next_exponential();
      sum += e[i];
    }
    e /= sum;
    if (e.minCoeff() >= 1e-12) return Distribution(std::move(e), 1e-9);
  }
}

/// Total variation style distance: sum_i |p_i - q_i|, in [0, 2].
inline double l1_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size())
    throw DimensionMismatch("l1_distance: sizes " + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()));
  KahanSum acc;
  for (int i = 0; i < p.size(); ++i) acc.add(std::abs(p[i] - q[i]));
  return acc.value();
}

}  // namespace riccimc
