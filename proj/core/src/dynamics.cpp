#include "hodgewave/dynamics.hpp"

#include <cmath>

namespace hodgewave {

Eigen::VectorXd State::stacked() const {
  Eigen::VectorXd x(omega.size() + nu.size());
  x << omega, nu;
  return x;
}

State State::fromStacked(const Eigen::VectorXd& x, int n0, double time) {
  State s;
  s.omega = x.head(n0);
  s.nu = x.tail(x.size() - n0);
  s.time = time;
  return s;
}

namespace {

Generator assembleBlocks(const SimplicialComplex& cx, const HodgeMetric& metric,
                         const MaterialFields& fields, const TraceOperators& ops) {
  const int n0 = cx.count(0);
  const int n1 = cx.count(1);
  Generator gen;
  gen.n0 = n0;
  gen.n1 = n1;

  Eigen::SparseMatrix<double> d0 = cx.d(0).cast<double>();

  // delta01 = M0^{-1} (D0^T M1 - T^T Mb N): boundary-corrected degree-1
  // codifferential as a matrix.
  Eigen::SparseMatrix<double> delta01 = d0.transpose() * Eigen::SparseMatrix<double>(
      Eigen::SparseMatrix<double>(metric.m[1].asDiagonal()));
  if (ops.normalTrace.rows() > 0) {
    Eigen::SparseMatrix<double> mb(ops.normalTrace.rows(), ops.normalTrace.rows());
    mb = metric.mBoundary.asDiagonal();
    delta01 = delta01 - Eigen::SparseMatrix<double>(ops.trace.transpose() * mb *
                                                    ops.normalTrace);
  }
  delta01 = metric.m[0].cwiseInverse().asDiagonal() * delta01;

  // A = [[0, -delta young],[D0 / rho, 0]]
  Eigen::SparseMatrix<double> top = delta01 * Eigen::SparseMatrix<double>(
      Eigen::SparseMatrix<double>(fields.young.asDiagonal()));
  Eigen::SparseMatrix<double> bottom = d0 * Eigen::SparseMatrix<double>(
      Eigen::SparseMatrix<double>(fields.rho.cwiseInverse().asDiagonal()));

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(top.nonZeros() + bottom.nonZeros());
  for (int k = 0; k < top.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(top, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), n0 + static_cast<int>(it.col()),
                         -it.value());
  for (int k = 0; k < bottom.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(bottom, k); it; ++it)
      trips.emplace_back(n0 + static_cast<int>(it.row()), static_cast<int>(it.col()),
                         it.value());
  gen.a.resize(n0 + n1, n0 + n1);
  gen.a.setFromTriplets(trips.begin(), trips.end());

  gen.energyDiag.resize(n0 + n1);
  gen.energyDiag << metric.m[0].cwiseQuotient(fields.rho),
      metric.m[1].cwiseProduct(fields.young);
  return gen;
}

} // namespace

Generator assembleGenerator(const SimplicialComplex& cx, const HodgeMetric& metric,
                            const MaterialFields& fields, const TraceOperators& ops,
                            const BCSpec& bc) {
  Generator gen = assembleBlocks(cx, metric, fields, ops);
  gen.constraint = constraintMatrix(bc, ops, fields);
  return gen;
}

Generator assembleGenerator(const SimplicialComplex& cx, const HodgeMetric& metric,
                            const MaterialFields& fields, const TraceOperators& ops) {
  Generator gen = assembleBlocks(cx, metric, fields, ops);
  gen.constraint.resize(0, gen.n0 + gen.n1);
  return gen;
}

double energy(const State& state, const HodgeMetric& metric, const MaterialFields& fields) {
  double e0 = state.omega.dot(
      metric.m[0].cwiseQuotient(fields.rho).cwiseProduct(state.omega));
  double e1 = state.nu.dot(metric.m[1].cwiseProduct(fields.young).cwiseProduct(state.nu));
  return 0.5 * (e0 + e1);
}

double boundaryPower(const State& state, const HodgeMetric& metric,
                     const TraceOperators& ops, const MaterialFields& fields) {
  if (ops.normalTrace.rows() == 0) return 0.0;
  Eigen::VectorXd effort0 = ops.trace * state.omega.cwiseQuotient(fields.rho);
  Eigen::VectorXd effort1 = ops.normalTrace * fields.young.cwiseProduct(state.nu);
  return effort0.dot(metric.mBoundary.cwiseProduct(effort1));
}

State initialState(const SimplicialComplex& cx, const Eigen::VectorXd& u0,
                   const Eigen::VectorXd& v0, const MaterialFields& fields) {
  if (u0.size() != cx.count(0) || v0.size() != cx.count(0))
    throw DynamicsError("initial sample size mismatch");
  State s;
  s.omega = fields.rho.cwiseProduct(v0);
  s.nu = cx.d(0).cast<double>() * u0;
  s.time = 0.0;
  return s;
}

MidpointStepper::MidpointStepper(const Generator& gen, double dt) : gen_(&gen), dt_(dt) {
  if (dt <= 0.0) throw DynamicsError("time step must be positive");
  const int n = gen.n0 + gen.n1;
  const int m = static_cast<int>(gen.constraint.rows());

  // Midpoint y solves ((2/dt) E - E A) y - C' lambda = (2/dt) E x, C y = 0,
  // then x+ = 2y - x.
  Eigen::SparseMatrix<double> ea =
      Eigen::SparseMatrix<double>(gen.energyDiag.asDiagonal()) * gen.a;
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 2.0 / dt * gen.energyDiag[i]);
  for (int k = 0; k < ea.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(ea, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                         -it.value());
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      double v = gen.constraint(r, c);
      if (v != 0.0) {
        trips.emplace_back(c, n + r, -v); // -C'
        trips.emplace_back(n + r, c, v);  // C
      }
    }
  saddle_.resize(n + m, n + m);
  saddle_.setFromTriplets(trips.begin(), trips.end());
  solver_.compute(saddle_);
  if (solver_.info() != Eigen::Success)
    throw DynamicsError("singular saddle system: boundary condition yields an "
                        "inconsistent constraint");
}

State MidpointStepper::step(const State& state) const {
  const int n = gen_->n0 + gen_->n1;
  const int m = static_cast<int>(gen_->constraint.rows());
  Eigen::VectorXd x = state.stacked();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m);
  rhs.head(n) = (2.0 / dt_) * gen_->energyDiag.cwiseProduct(x);
  Eigen::VectorXd sol = solver_.solve(rhs);
  if (solver_.info() != Eigen::Success) throw DynamicsError("saddle solve failed");
  double rhsNorm = rhs.norm();
  lastResidual_ = rhsNorm > 0.0 ? (saddle_ * sol - rhs).norm() / rhsNorm : 0.0;
  Eigen::VectorXd y = sol.head(n);
  return State::fromStacked(2.0 * y - x, gen_->n0, state.time + dt_);
}

double defaultTimeStep(const SimplicialComplex& cx, const HodgeMetric& metric,
                       const MaterialFields& fields) {
  double minEdge = metric.primal[1].minCoeff();
  double minSlowness = std::numeric_limits<double>::infinity();
  for (int e = 0; e < cx.count(1); ++e) {
    const Simplex& edge = cx.simplices[1][e];
    double rho = 0.5 * (fields.rho[edge[0]] + fields.rho[edge[1]]);
    minSlowness = std::min(minSlowness, std::sqrt(rho / fields.young[e]));
  }
  return 0.5 * minEdge * minSlowness;
}

namespace {

Trajectory runSimulation(const SimplicialComplex& cx, const HodgeMetric& metric,
                         const MaterialFields& fields, const TraceOperators& ops,
                         const Generator& gen, const State& initial,
                         const SimulateOptions& opts) {
  double dt = opts.dt > 0.0 ? opts.dt : defaultTimeStep(cx, metric, fields);
  Trajectory traj;
  traj.dt = dt;

  State state = initial;
  auto record = [&](const State& s, double residual) {
    traj.times.push_back(s.time);
    traj.energies.push_back(energy(s, metric, fields));
    traj.boundaryPowers.push_back(boundaryPower(s, metric, ops, fields));
    traj.solverResiduals.push_back(residual);
  };
  record(state, 0.0);
  if (opts.snapshotStride > 0) {
    traj.snapshots.push_back(state);
    traj.snapshotSteps.push_back(0);
  }

  if (opts.steps == 0) return traj;

  MidpointStepper stepper(gen, dt);
  for (int i = 1; i <= opts.steps; ++i) {
    state = stepper.step(state);
    double residual = stepper.lastResidual();
    if (residual > opts.solverTolerance)
      throw DynamicsError("solver residual " + std::to_string(residual) +
                          " exceeds tolerance at step " + std::to_string(i));
    record(state, residual);
    if (traj.energies[i] > traj.energies[i - 1] + 1e-10 * traj.energies.front())
      traj.energyNonincreasing = false;
    if (opts.snapshotStride > 0 && i % opts.snapshotStride == 0) {
      traj.snapshots.push_back(state);
      traj.snapshotSteps.push_back(i);
    }
  }
  return traj;
}

} // namespace

Trajectory simulate(const SimplicialComplex& cx, const HodgeMetric& metric,
                    const MaterialFields& fields, const TraceOperators& ops,
                    const BCSpec& bc, const State& initial, const SimulateOptions& opts) {
  if (!opts.unsafe) {
    AdmissibilityReport rep = checkAdmissible(bc, metric.mBoundary);
    if (!rep.admissible())
      throw DynamicsError("boundary condition '" + bc.label +
                          "' fails the admissibility check (pass --unsafe to run anyway)");
  }
  Generator gen = assembleGenerator(cx, metric, fields, ops, bc);
  return runSimulation(cx, metric, fields, ops, gen, initial, opts);
}

Trajectory simulate(const SimplicialComplex& cx, const HodgeMetric& metric,
                    const MaterialFields& fields, const TraceOperators& ops,
                    const State& initial, const SimulateOptions& opts) {
  Generator gen = assembleGenerator(cx, metric, fields, ops);
  return runSimulation(cx, metric, fields, ops, gen, initial, opts);
}

} // namespace hodgewave
