#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "riccimc/errors.hpp"
#include "riccimc/numeric.hpp"
#include "riccimc/simplex.hpp"

namespace riccimc {

enum class PhiKind { Alpha, Kl, ReverseKl, ChiSquared, Custom };

/// Convex divergence generator phi with phi(1) = 0 and phi'(1) = 0.
///
/// The alpha family is
///   (x^a - 1 - a(x-1)) / (a(a-1))   a not in {0, 1},
///   1 - x + x log x                 a = 0   (Kullback-Leibler),
///   x - 1 - log x                   a = 1   (reverse Kullback-Leibler),
/// with the chi-squared generator (x-1)^2/2 sitting at a = 2. Values of a
/// within 1e-9 of 0, 1 or 2 dispatch to the closed branches: the generic
/// quotient cancels catastrophically there.
///
/// Note the a = 0 and a = 1 branches are *labels*, not analytic limits: the
/// generic branch tends to x - 1 - log x as a -> 0 and to 1 - x + x log x as
/// a -> 1 (the two special branches swapped). The family is continuous across
/// each removable singularity, just onto the other named generator.
///
/// The third derivative is carried alongside (analytic for the built-in
/// kinds, finite-difference fallback for custom triples); the curvature
/// assembly needs it for the coincident-pair limit of the mobility partials.
class PhiFunction {
public:
  using Scalar = std::function<double(double)>;

  static PhiFunction kl() { return PhiFunction(PhiKind::Kl, 0.0); }
  static PhiFunction reverse_kl() { return PhiFunction(PhiKind::ReverseKl, 1.0); }
  static PhiFunction chi_squared() { return PhiFunction(PhiKind::ChiSquared, 2.0); }

  static PhiFunction alpha(double a) {
    if (!std::isfinite(a)) throw DomainError("alpha parameter must be finite");
    if (std::abs(a) <= 1e-9) return kl();
    if (std::abs(a - 1.0) <= 1e-9) return reverse_kl();
    if (std::abs(a - 2.0) <= 1e-9) return chi_squared();
    return PhiFunction(PhiKind::Alpha, a);
  }

  /// User-supplied (phi, phi', phi'') triple, optionally with phi'''.
  static PhiFunction custom(Scalar f, Scalar d1, Scalar d2,
                            std::optional<Scalar> d3 = std::nullopt) {
    PhiFunction p(PhiKind::Custom, 0.0);
    p.f_ = std::move(f);
    p.fd1_ = std::move(d1);
    p.fd2_ = std::move(d2);
    p.fd3_ = std::move(d3);
    return p;
  }

  PhiKind kind() const { return kind_; }
  double alpha_param() const { return alpha_; }

  double value(double x) const {
    check_domain(x);
    switch (kind_) {
      case PhiKind::Kl: return 1.0 - x + x * std::log(x);
      case PhiKind::ReverseKl: return x - 1.0 - std::log(x);
      case PhiKind::ChiSquared: return 0.5 * (x - 1.0) * (x - 1.0);
      case PhiKind::Alpha: {
        const double a = alpha_;
        const double v = (std::pow(x, a) - 1.0 - a * (x - 1.0)) / (a * (a - 1.0));
        if (!std::isfinite(v))
          throw DomainError("phi overflows at x = " + std::to_string(x));
        return v;
      }
      case PhiKind::Custom: return f_(x);
    }
    return 0.0;  // unreachable
  }

  double d1(double x) const {
    check_domain(x);
    switch (kind_) {
      case PhiKind::Kl: return std::log(x);
      case PhiKind::ReverseKl: return 1.0 - 1.0 / x;
      case PhiKind::ChiSquared: return x - 1.0;
      case PhiKind::Alpha: return (std::pow(x, alpha_ - 1.0) - 1.0) / (alpha_ - 1.0);
      case PhiKind::Custom: return fd1_(x);
    }
    return 0.0;
  }

  double d2(double x) const {
    check_domain(x);
    switch (kind_) {
      case PhiKind::Kl: return 1.0 / x;
      case PhiKind::ReverseKl: return 1.0 / (x * x);
      case PhiKind::ChiSquared: return 1.0;
      case PhiKind::Alpha: return std::pow(x, alpha_ - 2.0);
      case PhiKind::Custom: return fd2_(x);
    }
    return 0.0;
  }

  double d3(double x) const {
    check_domain(x);
    switch (kind_) {
      case PhiKind::Kl: return -1.0 / (x * x);
      case PhiKind::ReverseKl: return -2.0 / (x * x * x);
      case PhiKind::ChiSquared: return 0.0;
      case PhiKind::Alpha: return (alpha_ - 2.0) * std::pow(x, alpha_ - 3.0);
      case PhiKind::Custom: {
        if (fd3_) return (*fd3_)(x);
        const double h = 1e-6 * std::max(x, 1.0);
        return (fd2_(x + h) - fd2_(x - h)) / (2.0 * h);
      }
    }
    return 0.0;
  }

  struct Eval {
    double value, d1, d2;
  };

  /// (phi, phi', phi'') at x > 0 in one call.
  Eval eval(double x) const { return Eval{value(x), d1(x), d2(x)}; }

private:
  PhiFunction(PhiKind kind, double a) : kind_(kind), alpha_(a) {}

  static void check_domain(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw DomainError("phi requires x > 0, got " + std::to_string(x));
  }

  PhiKind kind_;
  double alpha_;
  Scalar f_, fd1_, fd2_;
  std::optional<Scalar> fd3_;
};

inline PhiFunction make_phi_alpha(double a) { return PhiFunction::alpha(a); }

inline PhiFunction::Eval phi_eval(const PhiFunction& phi, double x) {
  return phi.eval(x);
}

/// D_phi(p || pi) = sum_i phi(p_i / pi_i) pi_i. Zero iff p = pi for the
/// strictly convex built-in kinds.
inline double divergence(const PhiFunction& phi, const Distribution& p,
                         const Distribution& pi) {
  if (p.size() != pi.size())
    throw DimensionMismatch("divergence: sizes " + std::to_string(p.size()) +
                            " vs " + std::to_string(pi.size()));
  KahanSum acc;
  for (int i = 0; i < p.size(); ++i) acc.add(phi.value(p[i] / pi[i]) * pi[i]);
  return acc.value();
}

/// Pinsker: sum_i |p_i - pi_i| <= sqrt(2 KL(p || pi)).
inline double pinsker_l1_bound(double kl_value) {
  if (kl_value < 0.0)
    throw NegativeInput("pinsker_l1_bound needs a nonnegative KL value");
  return std::sqrt(2.0 * kl_value);
}

}  // namespace riccimc
