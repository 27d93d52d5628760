#include "hodgewave/operators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hodgewave {

namespace {

double fragmentMeasure(const std::vector<Eigen::VectorXd>& pts) {
  // volume of the simplex spanned by pts (1 point -> 1, 2 -> length, 3 -> area)
  const int k = static_cast<int>(pts.size()) - 1;
  if (k == 0) return 1.0;
  Eigen::MatrixXd e(pts[0].size(), k);
  for (int i = 0; i < k; ++i) e.col(i) = pts[i + 1] - pts[0];
  Eigen::MatrixXd gram = e.transpose() * e;
  double det = gram.determinant();
  double fact = (k == 1) ? 1.0 : 2.0;
  return std::sqrt(std::max(det, 0.0)) / fact;
}

} // namespace

TraceOperators buildTraceOperators(const SimplicialComplex& cx, const BoundaryComplex& bd,
                                   const HodgeMetric& metric) {
  TraceOperators ops;
  ops.trace = bd.trace;
  const int nb = bd.vertexCount();
  const int n = cx.dimension;
  const int nEdges = n >= 1 ? cx.count(1) : 0;
  if (nb == 0) {
    ops.normalTrace.resize(0, nEdges);
    return ops;
  }

  // (N mu) at boundary vertex v is the outward flux of the Whitney (lowest
  // order) reconstruction of mu through v's share of the boundary -- the
  // barycentric fragments of each incident boundary face -- divided by the
  // boundary measure M∂_vv. The reconstruction reproduces d(affine) exactly,
  // so N is consistent on flat meshes; Green's identity holds by construction
  // because the codifferential is defined through the same N.
  std::vector<int> parentToBoundary(cx.count(0), -1);
  for (int i = 0; i < nb; ++i) parentToBoundary[bd.vertexMap[i]] = i;

  const int dim = static_cast<int>(cx.vertices.cols());
  std::vector<Eigen::Triplet<double>> trips;

  for (std::size_t bf = 0; bf < bd.faceMap.size(); ++bf) {
    const int fIdx = bd.faceMap[bf];
    const Simplex& face = cx.simplices[n - 1][fIdx];
    int top = -1;
    for (Eigen::SparseMatrix<int>::InnerIterator it(cx.incidence[n - 1], fIdx); it; ++it)
      top = static_cast<int>(it.row());
    const Simplex& tau = cx.simplices[n][top];

    // barycentric gradients of tau within its tangent plane
    Eigen::MatrixXd edges(dim, n);
    Eigen::VectorXd p0 = cx.vertices.row(tau[0]);
    for (int i = 1; i <= n; ++i)
      edges.col(i - 1) = cx.vertices.row(tau[i]).transpose() - p0;
    Eigen::MatrixXd gram = edges.transpose() * edges;
    Eigen::LDLT<Eigen::MatrixXd> gramLdlt(gram);
    Eigen::MatrixXd grad(dim, n + 1);
    grad.rightCols(n) = edges * gram.inverse();
    grad.col(0) = -grad.rightCols(n).rowwise().sum();

    // outward unit normal of the face, tangent to tau
    int opp = -1;
    for (int v : tau)
      if (std::find(face.begin(), face.end(), v) == face.end()) opp = v;
    Eigen::VectorXd faceBary = Eigen::VectorXd::Zero(dim);
    for (int v : face) faceBary += cx.vertices.row(v).transpose();
    faceBary /= static_cast<double>(face.size());
    Eigen::VectorXd normal = faceBary - cx.vertices.row(opp).transpose();
    std::vector<Eigen::VectorXd> tang;
    for (std::size_t i = 1; i < face.size(); ++i) {
      Eigen::VectorXd t =
          cx.vertices.row(face[i]).transpose() - cx.vertices.row(face[0]).transpose();
      for (const auto& u : tang) t -= u.dot(t) * u;
      if (t.norm() > 1e-300) tang.push_back(t.normalized());
    }
    for (const auto& u : tang) normal -= u.dot(normal) * u;
    normal.normalize();

    for (int v : face) {
      Eigen::VectorXd pv = cx.vertices.row(v);
      std::vector<std::vector<Eigen::VectorXd>> fragments;
      if (n == 1) {
        fragments.push_back({pv});
      } else if (n == 2) {
        fragments.push_back({pv, faceBary});
      } else {
        for (int u : face) {
          if (u == v) continue;
          Eigen::VectorXd mid = 0.5 * (pv + cx.vertices.row(u).transpose());
          fragments.push_back({pv, mid, faceBary});
        }
      }
      for (const auto& frag : fragments) {
        double area = fragmentMeasure(frag);
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (const auto& p : frag) centroid += p;
        centroid /= static_cast<double>(frag.size());

        Eigen::VectorXd lam(n + 1);
        lam.tail(n) = gramLdlt.solve(edges.transpose() * (centroid - p0));
        lam[0] = 1.0 - lam.tail(n).sum();

        for (int i = 0; i <= n; ++i) {
          for (int j = i + 1; j <= n; ++j) {
            int eIdx = cx.findSimplex(1, {tau[i], tau[j]});
            Eigen::VectorXd w = lam[i] * grad.col(j) - lam[j] * grad.col(i);
            double val = area * w.dot(normal);
            if (val != 0.0) trips.emplace_back(parentToBoundary[v], eIdx, val);
          }
        }
      }
    }
  }

  Eigen::SparseMatrix<double> flux(nb, nEdges);
  flux.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseMatrix<double> mbInv(nb, nb);
  mbInv = metric.mBoundary.cwiseInverse().asDiagonal();
  ops.normalTrace = mbInv * flux;
  return ops;
}

Cochain exteriorDerivative(const SimplicialComplex& cx, const Cochain& c) {
  if (c.degree >= cx.dimension)
    throw OperatorError("exterior derivative undefined at top degree");
  if (c.values.size() != cx.count(c.degree))
    throw OperatorError("cochain size mismatch");
  return Cochain(c.degree + 1, cx.d(c.degree).cast<double>() * c.values);
}

Eigen::VectorXd trace(const BoundaryComplex& bd, const Cochain& omega) {
  if (omega.degree != 0) throw OperatorError("trace expects a 0-cochain");
  if (bd.empty()) throw OperatorError("trace on a closed complex");
  return bd.trace * omega.values;
}

Eigen::VectorXd normalTrace(const TraceOperators& ops, const BoundaryComplex& bd,
                            const Cochain& mu) {
  if (mu.degree != 1) throw OperatorError("normal trace expects a 1-cochain");
  if (bd.empty()) throw OperatorError("normal trace on a closed complex");
  return ops.normalTrace * mu.values;
}

Cochain codifferential(const SimplicialComplex& cx, const HodgeMetric& metric,
                       const TraceOperators& ops, const Cochain& mu) {
  const int k = mu.degree;
  if (k < 1) throw OperatorError("codifferential undefined on 0-cochains");
  if (k > cx.dimension) throw OperatorError("degree out of range");
  if (mu.values.size() != cx.count(k)) throw OperatorError("cochain size mismatch");

  Eigen::VectorXd interior = cx.d(k - 1).cast<double>().transpose() *
                             metric.m[k].cwiseProduct(mu.values);
  if (k == 1 && ops.normalTrace.rows() > 0) {
    Eigen::VectorXd flux = metric.mBoundary.cwiseProduct(ops.normalTrace * mu.values);
    interior -= ops.trace.transpose() * flux;
  }
  return Cochain(k - 1, interior.cwiseQuotient(metric.m[k - 1]));
}

double innerProduct(const HodgeMetric& metric, const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree) throw OperatorError("inner product degree mismatch");
  if (a.values.size() != b.values.size()) throw OperatorError("cochain size mismatch");
  return a.values.dot(metric.m.at(a.degree).cwiseProduct(b.values));
}

double greenResidual(const SimplicialComplex& cx, const HodgeMetric& metric,
                     const TraceOperators& ops, const Cochain& omega, const Cochain& mu) {
  if (omega.degree != 0 || mu.degree != 1)
    throw OperatorError("green residual expects (0-cochain, 1-cochain)");
  Cochain dOmega = exteriorDerivative(cx, omega);
  Cochain deltaMu = codifferential(cx, metric, ops, mu);
  double bulk = innerProduct(metric, dOmega, mu) - innerProduct(metric, omega, deltaMu);
  double boundary = 0.0;
  if (ops.normalTrace.rows() > 0) {
    Eigen::VectorXd tw = ops.trace * omega.values;
    Eigen::VectorXd nm = ops.normalTrace * mu.values;
    boundary = tw.dot(metric.mBoundary.cwiseProduct(nm));
  }
  return bulk - boundary;
}

} // namespace hodgewave
