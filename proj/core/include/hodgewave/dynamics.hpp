#pragma once

#include "hodgewave/boundary_conditions.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <memory>
#include <optional>
#include <vector>

namespace hodgewave {

class DynamicsError : public std::runtime_error {
public:
  explicit DynamicsError(const std::string& what) : std::runtime_error(what) {}
};

// (omega, nu) = (momentum density 0-cochain, strain 1-cochain).
struct State {
  Eigen::VectorXd omega;
  Eigen::VectorXd nu;
  double time = 0.0;

  Eigen::VectorXd stacked() const;
  static State fromStacked(const Eigen::VectorXd& x, int n0, double time);
};

// Block operator of the first-order system,
//   d/dt (omega, nu) = (-delta(young nu), D0 (omega/rho)),
// with the degree-1 boundary-corrected codifferential, plus the linear
// constraint C x = 0 realizing the boundary condition and the diagonal of
// the energy inner product.
struct Generator {
  Eigen::SparseMatrix<double> a;
  Eigen::MatrixXd constraint;
  Eigen::VectorXd energyDiag; // blockdiag(M0/rho, M1*young)
  int n0 = 0;
  int n1 = 0;
};

Generator assembleGenerator(const SimplicialComplex& cx, const HodgeMetric& metric,
                            const MaterialFields& fields, const TraceOperators& ops,
                            const BCSpec& bc);

// Generator for a closed mesh or for unconstrained dynamics (no boundary
// condition rows).
Generator assembleGenerator(const SimplicialComplex& cx, const HodgeMetric& metric,
                            const MaterialFields& fields, const TraceOperators& ops);

// E = (omega' M0 diag(1/rho) omega + nu' M1 diag(young) nu)/2.
double energy(const State& state, const HodgeMetric& metric, const MaterialFields& fields);

// P = (T omega/rho)' Mb (N young nu); satisfies dE/dt = P along the flow.
double boundaryPower(const State& state, const HodgeMetric& metric,
                     const TraceOperators& ops, const MaterialFields& fields);

// omega = diag(rho) v0, nu = D0 u0 (exact discrete gradient).
State initialState(const SimplicialComplex& cx, const Eigen::VectorXd& u0,
                   const Eigen::VectorXd& v0, const MaterialFields& fields);

// Implicit midpoint with the constraint enforced at the midpoint state via
// multipliers (constraint forces enter through the energy inner product).
// Factorizes the saddle system once per (generator, dt).
class MidpointStepper {
public:
  MidpointStepper(const Generator& gen, double dt);

  State step(const State& state) const;

  double lastResidual() const { return lastResidual_; }
  double dt() const { return dt_; }

private:
  const Generator* gen_;
  double dt_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver_;
  Eigen::SparseMatrix<double> saddle_;
  mutable double lastResidual_ = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> boundaryPowers;
  std::vector<double> solverResiduals;
  std::vector<State> snapshots;
  std::vector<int> snapshotSteps;
  double dt = 0.0;
  bool energyNonincreasing = true;
};

struct SimulateOptions {
  double dt = 0.0; // <= 0 picks the default heuristic
  int steps = 0;
  bool unsafe = false;          // skip the admissibility gate
  int snapshotStride = 0;       // 0 = no snapshots
  double solverTolerance = 1e-12;
};

double defaultTimeStep(const SimplicialComplex& cx, const HodgeMetric& metric,
                       const MaterialFields& fields);

Trajectory simulate(const SimplicialComplex& cx, const HodgeMetric& metric,
                    const MaterialFields& fields, const TraceOperators& ops,
                    const BCSpec& bc, const State& initial, const SimulateOptions& opts);

Trajectory simulate(const SimplicialComplex& cx, const HodgeMetric& metric,
                    const MaterialFields& fields, const TraceOperators& ops,
                    const State& initial, const SimulateOptions& opts); // closed mesh

} // namespace hodgewave
