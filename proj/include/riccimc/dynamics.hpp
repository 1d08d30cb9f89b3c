#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "riccimc/csv.hpp"
#include "riccimc/divergence.hpp"
#include "riccimc/errors.hpp"
#include "riccimc/generator.hpp"
#include "riccimc/simplex.hpp"

namespace riccimc {

/// Named functional of (p, pi) recorded along a trajectory.
struct Observer {
  std::string name;
  std::function<double(const Eigen::VectorXd&, const Distribution&)> fn;
};

/// Builds one of the stock observers: "l1", "kl", "chi2", "reverse-kl",
/// or "alpha:<a>".
inline Observer make_observer(const std::string& name) {
  auto div_observer = [](std::string n, PhiFunction phi) {
    return Observer{std::move(n),
                    [phi](const Eigen::VectorXd& p, const Distribution& pi) {
                      KahanSum acc;
                      for (int i = 0; i < pi.size(); ++i)
                        acc.add(phi.value(p[i] / pi[i]) * pi[i]);
                      return acc.value();
                    }};
  };
  if (name == "l1")
    return Observer{name, [](const Eigen::VectorXd& p, const Distribution& pi) {
                      KahanSum acc;
                      for (int i = 0; i < pi.size(); ++i)
                        acc.add(std::abs(p[i] - pi[i]));
                      return acc.value();
                    }};
  if (name == "kl") return div_observer(name, PhiFunction::kl());
  if (name == "chi2") return div_observer(name, PhiFunction::chi_squared());
  if (name == "reverse-kl") return div_observer(name, PhiFunction::reverse_kl());
  if (name.rfind("alpha:", 0) == 0)
    return div_observer(name, PhiFunction::alpha(std::stod(name.substr(6))));
  throw ConfigError("unknown observer '" + name + "'");
}

struct IntegratorConfig {
  double dt = 0.01;
  double t_end = 10.0;
  int record_every = 0;  // 0 = auto: 1 for n <= 1000, 10 above
  bool enforce_positivity = true;
};

/// Time-stamped states plus the observer series evaluated on them.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<std::string> observer_names;
  std::vector<std::vector<double>> observations;  // aligned with observer_names

  const std::vector<double>& series(const std::string& name) const {
    for (std::size_t i = 0; i < observer_names.size(); ++i)
      if (observer_names[i] == name) return observations[i];
    throw ConfigError("no observer series named '" + name + "'");
  }
};

namespace detail {

/// One explicit-Euler update of the forward equation dp/dt = Q^T p
/// (row sums of Q are zero, so the flux form collapses to a transpose
/// product). Mass is conserved exactly up to rounding.
inline void euler_step_inplace(const Eigen::MatrixXd& q_transpose,
                               Eigen::VectorXd& p, Eigen::VectorXd& scratch,
                               double dt) {
  scratch.noalias() = q_transpose * p;
  p += dt * scratch;
}

inline void check_step(const Generator& g, double dt, bool enforce_positivity) {
  if (!(dt >= 0.0)) throw StepTooLarge("negative step size");
  const double bound = 1.0 / g.max_exit_rate();
  if (enforce_positivity && dt > bound * (1.0 + 4e-16))
    throw StepTooLarge("dt = " + std::to_string(dt) +
                       " exceeds the positivity bound 1/max(-Q_ii) = " +
                       std::to_string(bound));
}

}  // namespace detail

/// Single forward-Euler step p' = p + dt (Q^T p). With dt at or below
/// 1/max(-Q_ii) the update is a convex combination and stays nonnegative.
inline Distribution euler_step(const Generator& g, const Distribution& p,
                               double dt, bool enforce_positivity = true) {
  if (g.size() != p.size())
    throw DimensionMismatch("euler_step: generator and state sizes differ");
  detail::check_step(g, dt, enforce_positivity);
  Eigen::VectorXd v = p.values(), scratch(p.size());
  Eigen::MatrixXd qt = g.q().transpose();
  detail::euler_step_inplace(qt, v, scratch, dt);
  return Distribution(std::move(v), 1e-9);
}

/// Integrates the forward equation from p0 to t_end, recording every
/// record_every-th step (and always the final one) together with the
/// observer values. Throws NumericalBlowup if any component leaves
/// [-10, 10], which cannot happen under the positivity step bound.
inline Trajectory simulate(const Generator& g, const Distribution& p0,
                           const IntegratorConfig& cfg,
                           const std::vector<Observer>& observers = {}) {
  if (g.size() != p0.size())
    throw DimensionMismatch("simulate: generator and state sizes differ");
  if (!(cfg.dt > 0.0)) throw ConfigError("simulate needs dt > 0");
  if (!(cfg.t_end >= cfg.dt)) throw ConfigError("simulate needs t_end >= dt");
  detail::check_step(g, cfg.dt, cfg.enforce_positivity);

  const int n = g.size();
  const long steps = std::lround(cfg.t_end / cfg.dt);
  const int every = cfg.record_every > 0 ? cfg.record_every : (n <= 1000 ? 1 : 10);

  Trajectory traj;
  for (const auto& ob : observers) {
    traj.observer_names.push_back(ob.name);
    traj.observations.emplace_back();
  }

  Eigen::MatrixXd qt = g.q().transpose();
  Eigen::VectorXd p = p0.values(), scratch(n);
  auto record = [&](long step) {
    traj.times.push_back(static_cast<double>(step) * cfg.dt);
    traj.states.push_back(p);
    for (std::size_t k = 0; k < observers.size(); ++k)
      traj.observations[k].push_back(observers[k].fn(p, g.pi()));
  };
  record(0);
  for (long step = 1; step <= steps; ++step) {
    detail::euler_step_inplace(qt, p, scratch, cfg.dt);
    if (p.cwiseAbs().maxCoeff() > 10.0)
      throw NumericalBlowup("state left [-10,10] at step " + std::to_string(step));
    if (step % every == 0 || step == steps) record(step);
  }
  return traj;
}

/// Closed-form law of the optimal generator: p(t) = pi + e^{-ct} (p0 - pi).
/// It is the exact solution of dp/dt = c (pi - p), stays on the simplex, and
/// serves as the integration oracle.
inline Distribution exact_solution_optimal(const Distribution& pi,
                                           const Distribution& p0, double t) {
  if (pi.size() != p0.size())
    throw DimensionMismatch("exact_solution_optimal: sizes differ");
  if (!(t >= 0.0)) throw DomainError("exact_solution_optimal needs t >= 0");
  const double decay = std::exp(-optimal_c(pi).value * t);
  Eigen::VectorXd p = pi.values() + decay * (p0.values() - pi.values());
  return Distribution(std::move(p), 1e-9);
}

/// CSV export: optional '#' metadata lines, then `t,<observer names...>`.
inline void write_trajectory_csv(const Trajectory& traj,
                                 const std::filesystem::path& path,
                                 const std::vector<std::string>& metadata = {}) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& m : metadata) out << "# " << m << '\n';
  out << 't';
  for (const auto& name : traj.observer_names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out << format_double(traj.times[r]);
    for (const auto& series : traj.observations)
      out << ',' << format_double(series[r]);
    out << '\n';
  }
}

}  // namespace riccimc
