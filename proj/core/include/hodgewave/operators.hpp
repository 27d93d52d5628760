#pragma once

#include "hodgewave/metric.hpp"

#include <Eigen/SparseCore>

namespace hodgewave {

class OperatorError : public std::runtime_error {
public:
  explicit OperatorError(const std::string& what) : std::runtime_error(what) {}
};

// Real values indexed by the k-simplices of a complex; the discrete integral
// of an L2 k-form.
struct Cochain {
  int degree = 0;
  Eigen::VectorXd values;

  Cochain() = default;
  Cochain(int k, Eigen::VectorXd v) : degree(k), values(std::move(v)) {}
  static Cochain zero(const SimplicialComplex& cx, int k) {
    return Cochain(k, Eigen::VectorXd::Zero(cx.count(k)));
  }
};

// T selects boundary vertex entries; N maps 1-cochains to the flux density
// through the boundary part of the truncated dual cells, normalized by the
// boundary measure.
struct TraceOperators {
  Eigen::SparseMatrix<double> trace;       // T
  Eigen::SparseMatrix<double> normalTrace; // N
};

TraceOperators buildTraceOperators(const SimplicialComplex& cx, const BoundaryComplex& bd,
                                   const HodgeMetric& metric);

Cochain exteriorDerivative(const SimplicialComplex& cx, const Cochain& c);

Eigen::VectorXd trace(const BoundaryComplex& bd, const Cochain& omega);

Eigen::VectorXd normalTrace(const TraceOperators& ops, const BoundaryComplex& bd,
                            const Cochain& mu);

// Codifferential. For degree 1 the boundary correction makes the discrete
// Green identity hold exactly:
//   delta mu = M0^{-1} (D0^T M1 mu - T^T Mb N mu).
// Degrees >= 2 get only the interior codifferential (valid on closed meshes
// and zero-trace inputs).
Cochain codifferential(const SimplicialComplex& cx, const HodgeMetric& metric,
                       const TraceOperators& ops, const Cochain& mu);

double innerProduct(const HodgeMetric& metric, const Cochain& a, const Cochain& b);

// <d omega, mu> - <omega, delta mu> - (T omega)^T Mb (N mu); zero to
// rounding by construction of delta. Exposed as a test oracle.
double greenResidual(const SimplicialComplex& cx, const HodgeMetric& metric,
                     const TraceOperators& ops, const Cochain& omega, const Cochain& mu);

} // namespace hodgewave
