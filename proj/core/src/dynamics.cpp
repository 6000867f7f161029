#include "polymatrix/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace polymatrix {

using nlohmann::json;

std::string to_string(IntegratorMethod m) {
  return m == IntegratorMethod::ExactFlow ? "exact" : "rk4";
}

IntegratorMethod integrator_method_from_string(const std::string& s) {
  if (s == "exact") return IntegratorMethod::ExactFlow;
  if (s == "rk4") return IntegratorMethod::RungeKutta4;
  throw std::invalid_argument("unknown integrator method: " + s);
}

void IntegratorConfig::validate() const {
  if (step <= 0 || horizon <= 0 || record_every <= 0)
    throw std::invalid_argument("step, horizon, record_every must be > 0");
  if (!(step <= record_every && record_every <= horizon))
    throw std::invalid_argument("need step <= record_every <= horizon");
}

json IntegratorConfig::to_json() const {
  json j;
  j["method"] = to_string(method);
  j["step"] = step;
  j["horizon"] = horizon;
  j["record_every"] = record_every;
  return j;
}

namespace {

Trajectory simulate_exact(const Matrix& A, const StrategyProfile& x0,
                          const IntegratorConfig& cfg,
                          const EquilibriumSet& eqset) {
  const int K = static_cast<int>(A.rows());
  const double h = cfg.record_every;
  const int nrec = static_cast<int>(std::llround(cfg.horizon / h));

  StrategyProfile xc = closest_equilibrium(eqset, x0);
  Vector delta = x0 - xc;

  // exp([[A, I], [0, 0]] h) = [[e^{Ah}, Int_0^h e^{As} ds], [0, I]]
  Matrix aug = Matrix::Zero(2 * K, 2 * K);
  aug.topLeftCorner(K, K) = A * h;
  aug.topRightCorner(K, K) = Matrix::Identity(K, K) * h;
  Matrix E = aug.exp();
  Matrix phi = E.topLeftCorner(K, K);
  Matrix psi = E.topRightCorner(K, K);

  Trajectory traj;
  traj.times.reserve(nrec + 1);
  traj.states.reserve(nrec + 1);
  traj.averages.reserve(nrec + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  traj.averages.push_back(x0);

  Vector integral = Vector::Zero(K);  // Int_0^t (x(s) - xc) ds
  for (int k = 1; k <= nrec; ++k) {
    integral += psi * delta;
    delta = phi * delta;
    double t = k * h;
    traj.times.push_back(t);
    traj.states.push_back(xc + delta);
    traj.averages.push_back(xc + integral / t);
  }
  return traj;
}

Trajectory simulate_rk4(const Matrix& A, const Vector& b,
                        const StrategyProfile& x0,
                        const IntegratorConfig& cfg) {
  const int nsub = std::max(
      1, static_cast<int>(std::llround(cfg.record_every / cfg.step)));
  const double h = cfg.record_every / nsub;
  const int nrec = static_cast<int>(std::llround(cfg.horizon / cfg.record_every));

  auto field = [&](const Vector& x) -> Vector { return A * x - b; };

  Trajectory traj;
  traj.times.reserve(nrec + 1);
  traj.states.reserve(nrec + 1);
  traj.averages.reserve(nrec + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  traj.averages.push_back(x0);

  Vector x = x0;
  Vector integral = Vector::Zero(x0.size());
  for (int k = 1; k <= nrec; ++k) {
    for (int s = 0; s < nsub; ++s) {
      Vector k1 = field(x);
      Vector k2 = field(x + 0.5 * h * k1);
      Vector k3 = field(x + 0.5 * h * k2);
      Vector k4 = field(x + h * k3);
      Vector xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      integral += (h / 2.0) * (x + xn);
      x = xn;
    }
    double t = k * cfg.record_every;
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.averages.push_back(integral / t);
  }
  return traj;
}

}  // namespace

Trajectory simulate(const PolymatrixGame& game, const StrategyProfile& x0,
                    const IntegratorConfig& config) {
  config.validate();
  Matrix A = consolidate(game);
  if (x0.size() != A.rows())
    throw std::invalid_argument("initial profile length must equal K");
  auto eqset = equilibrium_set(game);

  Trajectory traj;
  if (config.method == IntegratorMethod::ExactFlow) {
    if (!eqset)
      throw std::runtime_error(
          "unbounded drift: no equilibrium exists (use rk4 to observe it)");
    traj = simulate_exact(A, x0, config, *eqset);
  } else {
    traj = simulate_rk4(A, game.costs(), x0, config);
    if (!eqset) traj.warning = "no-equilibrium-drift";
  }
  if (traj.warning.empty() && game.class_tag() != GameClass::ZeroSum) {
    // Symmetric or general A can have eigenvalues with positive real part,
    // in which case the flow diverges exponentially.
    Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    if (es.eigenvalues().real().maxCoeff() > 1e-12) traj.warning = "divergence";
  }
  return traj;
}

std::vector<StrategyProfile> time_average(const Trajectory& traj) {
  if (traj.times.empty()) throw std::invalid_argument("empty trajectory");
  return traj.averages;
}

double residual_identity_check(const PolymatrixGame& game,
                               const Trajectory& traj) {
  Matrix A = consolidate(game);
  double worst = 0.0;
  for (size_t k = 1; k < traj.times.size(); ++k) {
    double t = traj.times[k];
    Vector lhs = A * traj.averages[k] - game.costs();
    Vector rhs = (traj.states[k] - traj.states[0]) / t;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

std::vector<double> energy_series(const Trajectory& traj,
                                  const StrategyProfile& xstar) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& x : traj.states) out.push_back((x - xstar).squaredNorm());
  return out;
}

json ConvergenceReport::to_json() const {
  json j;
  j["closest_equilibrium"] =
      std::vector<double>(closest.data(), closest.data() + closest.size());
  j["final_distance"] = final_distance;
  j["fitted_slope"] = fitted_slope;
  j["max_hyperplane_drift"] = max_hyperplane_drift;
  j["max_energy_drift"] = max_energy_drift;
  return j;
}

ConvergenceReport convergence_report(const PolymatrixGame& game,
                                     const Trajectory& traj) {
  auto eqset = equilibrium_set(game);
  if (!eqset) throw std::runtime_error("no equilibrium exists");
  if (traj.times.empty()) throw std::invalid_argument("empty trajectory");

  ConvergenceReport rep;
  rep.closest = closest_equilibrium(*eqset, traj.states[0]);
  rep.distances.reserve(traj.times.size());
  for (const auto& xb : traj.averages)
    rep.distances.push_back((xb - rep.closest).norm());
  rep.final_distance = rep.distances.back();

  for (size_t k = 0; k < traj.states.size(); ++k) {
    Vector dev = traj.states[k] - rep.closest;
    for (const auto& d : eqset->basis)
      rep.max_hyperplane_drift =
          std::max(rep.max_hyperplane_drift, std::abs(d.dot(dev)));
  }

  double e0 = (traj.states[0] - rep.closest).squaredNorm();
  for (const auto& e : energy_series(traj, rep.closest))
    rep.max_energy_drift =
        std::max(rep.max_energy_drift, std::abs(e - e0) / std::max(e0, 1e-300));

  // Least-squares log-log fit of ||xbar - x*|| over t in [10, horizon];
  // falls back to [t_1, horizon] on short runs. Near-zero distances are
  // dropped (log blows up at exact hits).
  double tmin = std::min(10.0, traj.times.back());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t k = 1; k < traj.times.size(); ++k) {
    if (traj.times[k] < tmin) continue;
    if (rep.distances[k] < 1e-13) continue;
    double lx = std::log(traj.times[k]);
    double ly = std::log(rep.distances[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0)
    rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

std::string trajectory_csv(const PolymatrixGame& game, const Trajectory& traj) {
  Matrix A = consolidate(game);
  const int K = static_cast<int>(A.rows());
  auto eqset = equilibrium_set(game);
  StrategyProfile ref = eqset ? closest_equilibrium(*eqset, traj.states[0])
                              : StrategyProfile(Vector::Zero(K));

  std::ostringstream out;
  out.precision(17);
  out << "t";
  for (int i = 1; i <= K; ++i) out << ",x_" << i;
  for (int i = 1; i <= K; ++i) out << ",xbar_" << i;
  out << ",energy,max_hyperplane_drift,avg_residual\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    out << traj.times[k];
    for (int i = 0; i < K; ++i) out << ',' << traj.states[k](i);
    for (int i = 0; i < K; ++i) out << ',' << traj.averages[k](i);
    double drift = 0.0;
    if (eqset)
      for (const auto& d : eqset->basis)
        drift = std::max(drift, std::abs(d.dot(traj.states[k] - ref)));
    out << ',' << (traj.states[k] - ref).squaredNorm() << ',' << drift << ','
        << (A * traj.averages[k] - game.costs()).norm() << '\n';
  }
  return out.str();
}

}  // namespace polymatrix
