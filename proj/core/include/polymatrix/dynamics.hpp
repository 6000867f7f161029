#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "polymatrix/equilibrium.hpp"
#include "polymatrix/game.hpp"

namespace polymatrix {

enum class IntegratorMethod { ExactFlow, RungeKutta4 };

std::string to_string(IntegratorMethod m);
IntegratorMethod integrator_method_from_string(const std::string& s);

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::ExactFlow;
  double step = 1e-3;         // RK4 substep
  double horizon = 1e3;
  double record_every = 0.1;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Sampled solution of the gradient flow x' = Ax - b, together with the
/// running time-average xbar(t) = (1/t) Integral_0^t x(s) ds (xbar(0) is
/// defined as x(0)).
///
/// ExactFlow advances with the matrix exponential of one record step and
/// accumulates the time integral exactly through the augmented exponential
/// exp([[A, I], [0, 0]] h), so the averages carry no quadrature error. RK4
/// averages use the trapezoidal rule at the integrator substep.
struct Trajectory {
  std::vector<double> times;
  std::vector<StrategyProfile> states;
  std::vector<StrategyProfile> averages;
  std::string warning;  // empty, "no-equilibrium-drift" or "divergence"
};

Trajectory simulate(const PolymatrixGame& game, const StrategyProfile& x0,
                    const IntegratorConfig& config);

/// The running time-averages of a trajectory.
std::vector<StrategyProfile> time_average(const Trajectory& traj);

/// max over sampled t > 0 of ||A xbar(t) - b - (x(t) - x(0)) / t||. Exactly
/// zero in continuous time; bounded by quadrature error here.
double residual_identity_check(const PolymatrixGame& game,
                               const Trajectory& traj);

/// ||x(t_k) - xstar||^2 per sample.
std::vector<double> energy_series(const Trajectory& traj,
                                  const StrategyProfile& xstar);

struct ConvergenceReport {
  StrategyProfile closest;           // equilibrium nearest x(0)
  std::vector<double> distances;     // ||xbar(t_k) - closest||
  double final_distance = 0.0;
  double fitted_slope = 0.0;         // log-log decay of the distances
  double max_hyperplane_drift = 0.0; // max |d_w^T (x(t) - closest)|
  double max_energy_drift = 0.0;     // relative drift of ||x(t) - closest||^2

  nlohmann::json to_json() const;
};

ConvergenceReport convergence_report(const PolymatrixGame& game,
                                     const Trajectory& traj);

/// CSV: t, x_1..x_K, xbar_1..xbar_K, energy, max_hyperplane_drift,
/// avg_residual, one row per recorded sample. Diagnostics are taken
/// against the equilibrium closest to x(0).
std::string trajectory_csv(const PolymatrixGame& game, const Trajectory& traj);

}  // namespace polymatrix
