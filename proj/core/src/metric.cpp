#include "hodgewave/metric.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hodgewave {

double simplexVolume(const Eigen::MatrixXd& vertices, const Simplex& simplex) {
  const int k = static_cast<int>(simplex.size()) - 1;
  if (k == 0) return 1.0;
  Eigen::MatrixXd edges(vertices.cols(), k);
  for (int i = 0; i < k; ++i)
    edges.col(i) = (vertices.row(simplex[i + 1]) - vertices.row(simplex[0])).transpose();
  Eigen::MatrixXd gram = edges.transpose() * edges;
  double det = gram.determinant();
  if (det <= 0.0) return 0.0;
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return std::sqrt(det) / factorial;
}

Eigen::VectorXd primalVolumes(const SimplicialComplex& cx, int k) {
  if (k < 0 || k > cx.dimension) throw MetricError("degree out of range");
  const auto& list = cx.simplices[k];
  Eigen::VectorXd vols(list.size());
  for (size_t i = 0; i < list.size(); ++i) {
    vols[i] = simplexVolume(cx.vertices, list[i]);
    if (vols[i] <= 0.0)
      throw MetricError("degenerate " + std::to_string(k) + "-simplex " + std::to_string(i));
  }
  return vols;
}

namespace {

Eigen::VectorXd barycenter(const Eigen::MatrixXd& vertices, const Simplex& s) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(vertices.cols());
  for (int v : s) b += vertices.row(v).transpose();
  return b / static_cast<double>(s.size());
}

// Walks descending chains top = sigma_n > ... > sigma_k, dropping one vertex
// per level; the fragment spanned by the chain's barycenters is credited to
// the terminal k-simplex.
void accumulateFragments(const SimplicialComplex& cx, int k, const Simplex& current,
                         std::vector<Eigen::VectorXd>& chain, Eigen::VectorXd& out) {
  if (static_cast<int>(current.size()) == k + 1) {
    int idx = cx.findSimplex(k, current);
    const int m = static_cast<int>(chain.size()) - 1; // fragment dimension
    Eigen::MatrixXd edges(chain[0].size(), m);
    for (int i = 0; i < m; ++i) edges.col(i) = chain[i + 1] - chain[0];
    double vol;
    if (m == 0) {
      vol = 1.0;
    } else {
      double det = (edges.transpose() * edges).determinant();
      double factorial = 1.0;
      for (int i = 2; i <= m; ++i) factorial *= i;
      vol = det > 0.0 ? std::sqrt(det) / factorial : 0.0;
    }
    out[idx] += vol;
    return;
  }
  for (size_t omit = 0; omit < current.size(); ++omit) {
    Simplex face;
    face.reserve(current.size() - 1);
    for (size_t j = 0; j < current.size(); ++j)
      if (j != omit) face.push_back(current[j]);
    chain.push_back(barycenter(cx.vertices, face));
    accumulateFragments(cx, k, face, chain, out);
    chain.pop_back();
  }
}

} // namespace

Eigen::VectorXd dualVolumes(const SimplicialComplex& cx, int k) {
  if (k < 0 || k > cx.dimension) throw MetricError("degree out of range");
  const int n = cx.dimension;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cx.count(k));
  for (const auto& top : cx.simplices[n]) {
    std::vector<Eigen::VectorXd> chain{barycenter(cx.vertices, top)};
    accumulateFragments(cx, k, top, chain, out);
  }
  // Distinct flags produce distinct fragments of the barycentric
  // subdivision, so the fragments tile each dual cell exactly once.
  (void)n;
  return out;
}

HodgeMetric buildMetric(const SimplicialComplex& cx, const BoundaryComplex& bd) {
  HodgeMetric metric;
  metric.complex = &cx;
  const int n = cx.dimension;
  metric.primal.resize(n + 1);
  metric.dual.resize(n + 1);
  metric.m.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    metric.primal[k] = primalVolumes(cx, k);
    metric.dual[k] = dualVolumes(cx, k);
    metric.m[k] = metric.dual[k].cwiseQuotient(metric.primal[k]);
    if ((metric.m[k].array() <= 0.0).any())
      throw MetricError("nonpositive Hodge entry at degree " + std::to_string(k));
  }
  if (!bd.empty()) {
    if (bd.complex.dimension == 0) {
      metric.mBoundary = Eigen::VectorXd::Ones(bd.vertexCount());
    } else {
      metric.mBoundary = dualVolumes(bd.complex, 0);
    }
  } else {
    metric.mBoundary.resize(0);
  }
  return metric;
}

Eigen::VectorXd star(const HodgeMetric& metric, int k) { return metric.m.at(k); }

Eigen::VectorXd starInv(const HodgeMetric& metric, int k) {
  const int n = metric.dimension();
  // starInv(n-k) star(k) = (-1)^{k(n-k)} I; here the argument is n-k.
  const int kk = n - k;
  double sign = (kk * (n - kk)) % 2 == 0 ? 1.0 : -1.0;
  return sign * metric.m.at(n - k).cwiseInverse();
}

MaterialFields MaterialFields::uniform(const SimplicialComplex& cx, double rho, double young) {
  MaterialFields f;
  f.rho = Eigen::VectorXd::Constant(cx.count(0), rho);
  f.young = Eigen::VectorXd::Constant(cx.dimension >= 1 ? cx.count(1) : 0, young);
  return f;
}

EnergyMatrices materialMatrices(const HodgeMetric& metric, const MaterialFields& fields) {
  const SimplicialComplex& cx = *metric.complex;
  if (fields.rho.size() != cx.count(0) || fields.young.size() != cx.count(1))
    throw MetricError("material field size mismatch");
  if ((fields.rho.array() <= 0.0).any() || (fields.young.array() <= 0.0).any())
    throw MetricError("material fields must be strictly positive");
  EnergyMatrices e;
  e.e0 = metric.m[0].cwiseQuotient(fields.rho);
  e.e1 = metric.m[1].cwiseProduct(fields.young);
  return e;
}

} // namespace hodgewave
