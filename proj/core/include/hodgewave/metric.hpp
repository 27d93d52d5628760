#pragma once

#include "hodgewave/mesh.hpp"

#include <Eigen/Core>

#include <vector>

namespace hodgewave {

class MetricError : public std::runtime_error {
public:
  explicit MetricError(const std::string& what) : std::runtime_error(what) {}
};

// Unsigned k-volume of a simplex from its embedded vertices (Gram
// determinant). A 0-simplex has volume 1.
double simplexVolume(const Eigen::MatrixXd& vertices, const Simplex& simplex);

// Euclidean k-volumes of all k-simplices. Throws on a degenerate simplex.
Eigen::VectorXd primalVolumes(const SimplicialComplex& cx, int k);

// Barycentric dual (n-k)-volumes: for each k-simplex, the total volume of
// the fragments spanned by the barycenters of ascending chains up to a top
// simplex. Strictly positive on any non-degenerate mesh.
Eigen::VectorXd dualVolumes(const SimplicialComplex& cx, int k);

// Diagonal inner-product matrices M_k = |sigma*|/|sigma| per degree, plus
// the boundary inner product on boundary 0-cochains (truncated dual cell
// measure within the boundary). The discrete metric.
struct HodgeMetric {
  const SimplicialComplex* complex = nullptr;
  std::vector<Eigen::VectorXd> primal; // primal[k]
  std::vector<Eigen::VectorXd> dual;   // dual[k]
  std::vector<Eigen::VectorXd> m;      // m[k] = dual[k]/primal[k]
  Eigen::VectorXd mBoundary;           // per boundary vertex

  int dimension() const { return complex->dimension; }
  const Eigen::VectorXd& hodge(int k) const { return m.at(k); }
};

HodgeMetric buildMetric(const SimplicialComplex& cx, const BoundaryComplex& bd);

// star(k) sends primal k-cochains to dual (n-k)-cochains (same indexing);
// starInv is its inverse up to the sign (-1)^{k(n-k)}, i.e.
// starInv(n-k) * star(k) = (-1)^{k(n-k)} I.
Eigen::VectorXd star(const HodgeMetric& metric, int k);
Eigen::VectorXd starInv(const HodgeMetric& metric, int k);

// Strictly positive coefficient fields: mass density rho per vertex and
// stiffness (Young modulus) per edge.
struct MaterialFields {
  Eigen::VectorXd rho;
  Eigen::VectorXd young;

  static MaterialFields uniform(const SimplicialComplex& cx, double rho = 1.0,
                                double young = 1.0);
};

// Diagonal energy matrices E0 = M_0 diag(1/rho), E1 = M_1 diag(young).
struct EnergyMatrices {
  Eigen::VectorXd e0;
  Eigen::VectorXd e1;
};

EnergyMatrices materialMatrices(const HodgeMetric& metric, const MaterialFields& fields);

} // namespace hodgewave
