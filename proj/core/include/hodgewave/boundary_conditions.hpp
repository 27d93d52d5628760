#pragma once

#include "hodgewave/operators.hpp"

#include <Eigen/Core>

#include <string>

namespace hodgewave {

class BoundaryConditionError : public std::runtime_error {
public:
  explicit BoundaryConditionError(const std::string& what) : std::runtime_error(what) {}
};

// Boundary operator pair (V1, V2) mapping boundary 0-cochains into a
// K-dimensional auxiliary space. The constraint V1 (trace of the velocity
// effort) + V2 (normal-trace effort) = 0 carves out the generator domain.
struct BCSpec {
  Eigen::MatrixXd v1;
  Eigen::MatrixXd v2;
  std::string label;

  int targetDim() const { return static_cast<int>(v1.rows()); }
  int boundaryDim() const { return static_cast<int>(v1.cols()); }

  static BCSpec velocityZero(int nb);        // (I, 0)
  static BCSpec normalZero(int nb);          // (0, I)
  static BCSpec impedance(int nb, double c); // (I, cI)
  static BCSpec custom(Eigen::MatrixXd v1, Eigen::MatrixXd v2, std::string label);
};

struct AdmissibilityReport {
  bool kernelPass = false;     // Re<theta,sigma> <= 0 on ker [V1 V2]
  bool inequalityPass = false; // V1 V2* + V2 V1* >= 0
  double kernelMaxEigenvalue = 0.0;
  double inequalityMinEigenvalue = 0.0;
  bool conservative = false; // boundary pairing vanishes on the kernel
  double tolerance = 0.0;

  bool admissible() const { return kernelPass && inequalityPass; }
  std::string summary() const;
};

// Checks the two sufficient conditions with adjoints taken in the
// Mb-weighted boundary inner product. tolScale multiplies a scale-aware
// tolerance 1e-10 * (largest relevant eigenvalue magnitude).
AdmissibilityReport checkAdmissible(const BCSpec& bc, const Eigen::VectorXd& mBoundary,
                                    double tolScale = 1.0);

// C x = 0 on the stacked state x = (omega, nu) imposing the condition on
// effort traces: V1 T diag(1/rho) omega + V2 N diag(young) nu = 0.
Eigen::MatrixXd constraintMatrix(const BCSpec& bc, const TraceOperators& ops,
                                 const MaterialFields& fields);

} // namespace hodgewave
