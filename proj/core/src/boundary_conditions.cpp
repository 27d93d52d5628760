#include "hodgewave/boundary_conditions.hpp"

#include <Eigen/Dense>

#include <sstream>

namespace hodgewave {

BCSpec BCSpec::velocityZero(int nb) {
  return {Eigen::MatrixXd::Identity(nb, nb), Eigen::MatrixXd::Zero(nb, nb), "velocity_zero"};
}

BCSpec BCSpec::normalZero(int nb) {
  return {Eigen::MatrixXd::Zero(nb, nb), Eigen::MatrixXd::Identity(nb, nb), "normal_zero"};
}

BCSpec BCSpec::impedance(int nb, double c) {
  std::ostringstream label;
  label << "impedance(c=" << c << ")";
  return {Eigen::MatrixXd::Identity(nb, nb), c * Eigen::MatrixXd::Identity(nb, nb),
          label.str()};
}

BCSpec BCSpec::custom(Eigen::MatrixXd v1, Eigen::MatrixXd v2, std::string label) {
  if (v1.rows() != v2.rows() || v1.cols() != v2.cols())
    throw BoundaryConditionError("V1 and V2 must have identical shapes");
  if (v1.isZero(0.0) && v2.isZero(0.0))
    throw BoundaryConditionError("all-zero boundary operator pair imposes nothing");
  return {std::move(v1), std::move(v2), std::move(label)};
}

AdmissibilityReport checkAdmissible(const BCSpec& bc, const Eigen::VectorXd& mBoundary,
                                    double tolScale) {
  const int nb = bc.boundaryDim();
  const int k = bc.targetDim();
  if (mBoundary.size() != nb)
    throw BoundaryConditionError("boundary inner product size mismatch");
  if (bc.v1.isZero(0.0) && bc.v2.isZero(0.0))
    throw BoundaryConditionError("all-zero boundary operator pair imposes nothing");

  AdmissibilityReport rep;

  // Kernel condition: orthonormal basis of ker [V1 V2], split into theta and
  // sigma parts, pairing matrix S_ij = (theta_i' Mb sigma_j + theta_j' Mb
  // sigma_i)/2 must be negative semidefinite.
  Eigen::MatrixXd stacked(k, 2 * nb);
  stacked << bc.v1, bc.v2;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  double rankTol = 1e-12 * std::max(1.0, smax) * std::max(2 * nb, k);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > rankTol) ++rank;
  const int nullDim = 2 * nb - rank;

  double kernelMax = 0.0;
  double kernelMaxAbs = 0.0;
  if (nullDim > 0) {
    Eigen::MatrixXd basis = svd.matrixV().rightCols(nullDim);
    Eigen::MatrixXd theta = basis.topRows(nb);
    Eigen::MatrixXd sigma = basis.bottomRows(nb);
    Eigen::MatrixXd cross = theta.transpose() * mBoundary.asDiagonal() * sigma;
    Eigen::MatrixXd s = 0.5 * (cross + cross.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    kernelMax = es.eigenvalues().maxCoeff();
    kernelMaxAbs = es.eigenvalues().cwiseAbs().maxCoeff();
  }

  // Operator inequality: V1 V2* + V2 V1* >= 0 with adjoints in the
  // Mb inner product, so V* = Mb^{-1} V'.
  Eigen::VectorXd mbInv = mBoundary.cwiseInverse();
  Eigen::MatrixXd g = bc.v1 * mbInv.asDiagonal() * bc.v2.transpose() +
                      bc.v2 * mbInv.asDiagonal() * bc.v1.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(g);
  double gMin = eg.eigenvalues().minCoeff();
  double gMaxAbs = eg.eigenvalues().cwiseAbs().maxCoeff();

  double scale = std::max({1.0, kernelMaxAbs, gMaxAbs});
  rep.tolerance = 1e-10 * scale * tolScale;
  rep.kernelMaxEigenvalue = kernelMax;
  rep.inequalityMinEigenvalue = gMin;
  rep.kernelPass = kernelMax <= rep.tolerance;
  rep.inequalityPass = gMin >= -rep.tolerance;
  rep.conservative = kernelMaxAbs <= rep.tolerance;
  return rep;
}

Eigen::MatrixXd constraintMatrix(const BCSpec& bc, const TraceOperators& ops,
                                 const MaterialFields& fields) {
  const int nb = bc.boundaryDim();
  if (ops.trace.rows() != nb || ops.normalTrace.rows() != nb)
    throw BoundaryConditionError("boundary operator shape mismatch");
  const int n0 = static_cast<int>(ops.trace.cols());
  const int n1 = static_cast<int>(ops.normalTrace.cols());
  Eigen::MatrixXd effort0 = Eigen::MatrixXd(ops.trace) * fields.rho.cwiseInverse().asDiagonal();
  Eigen::MatrixXd effort1 = Eigen::MatrixXd(ops.normalTrace) * fields.young.asDiagonal();
  Eigen::MatrixXd c(bc.targetDim(), n0 + n1);
  c.leftCols(n0) = bc.v1 * effort0;
  c.rightCols(n1) = bc.v2 * effort1;
  return c;
}

std::string AdmissibilityReport::summary() const {
  std::ostringstream out;
  out.precision(6);
  out << "kernel condition:     " << (kernelPass ? "pass" : "FAIL")
      << " (max eigenvalue " << kernelMaxEigenvalue << ")\n"
      << "operator inequality:  " << (inequalityPass ? "pass" : "FAIL")
      << " (min eigenvalue " << inequalityMinEigenvalue << ")\n"
      << "conservative:         " << (conservative ? "yes" : "no") << "\n"
      << "tolerance:            " << tolerance << "\n"
      << "admissible:           " << (admissible() ? "yes" : "no") << "\n";
  return out.str();
}

} // namespace hodgewave
