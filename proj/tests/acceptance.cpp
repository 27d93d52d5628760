// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any criterion fails.

#include "hodgewave/runner.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace hodgewave;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %2d: %s  %s (%s)\n", id, pass ? "pass" : "FAIL", what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

struct Problem2 {
  SimplicialComplex cx;
  BoundaryComplex bd;
  HodgeMetric metric;
  MaterialFields fields;
  TraceOperators ops;

  explicit Problem2(const RawMesh& mesh) {
    cx = buildComplex(mesh);
    bd = extractBoundary(cx);
    metric = buildMetric(cx, bd);
    metric.complex = &cx;
    fields = MaterialFields::uniform(cx, 1.0, 1.0);
    ops = buildTraceOperators(cx, bd, metric);
  }
};

std::vector<RawMesh> bundledMeshes() {
  return {shapes::triangle(),
          shapes::square(),
          shapes::rectangle(1.0, 0.5, 8, 4),
          shapes::rectangle(1.0, 0.5, 16, 8),
          shapes::rectangle(1.0, 0.5, 32, 16),
          shapes::annulus(0.5, 1.0, 4, 16),
          shapes::icosphere(1),
          shapes::icosphere(2),
          shapes::tetrahedron()};
}

Eigen::VectorXd randomVec(int n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

// criterion 1: D_{k+1} D_k = 0 in exact integer arithmetic
void criterion1() {
  bool pass = true;
  for (const RawMesh& mesh : bundledMeshes()) {
    SimplicialComplex cx = buildComplex(mesh);
    for (int k = 0; k + 1 < cx.dimension; ++k) {
      Eigen::SparseMatrix<int> prod = cx.d(k + 1) * cx.d(k);
      prod.prune([](int, int, int v) { return v != 0; });
      if (prod.nonZeros() != 0) pass = false;
    }
  }
  report(1, pass, "exactness of the complex", "integer d.d = 0 on all bundled meshes");
}

// criterion 2: discrete Green identity on meshes with boundary
void criterion2() {
  std::mt19937 rng(2026);
  double worst = 0.0;
  for (const RawMesh& mesh : bundledMeshes()) {
    Problem2 p(mesh);
    if (p.bd.empty()) continue;
    for (int trial = 0; trial < 100; ++trial) {
      Cochain omega(0, randomVec(p.cx.count(0), rng));
      Cochain mu(1, randomVec(p.cx.count(1), rng));
      double scale = std::sqrt(innerProduct(p.metric, omega, omega)) *
                     std::sqrt(innerProduct(p.metric, mu, mu));
      worst = std::max(worst,
                       std::abs(greenResidual(p.cx, p.metric, p.ops, omega, mu)) / scale);
    }
  }
  report(2, worst <= 1e-12, "discrete Green identity",
         "worst scaled residual " + formatCsvValue(worst));
}

// criterion 3: abstract Green identity for the system generator
void criterion3() {
  std::mt19937 rng(3);
  bool pass = true;
  double worst = 0.0;

  auto pairing = [](const Problem2& p, const State& x, const State& y) {
    Eigen::VectorXd tx = p.ops.trace * x.omega.cwiseQuotient(p.fields.rho);
    Eigen::VectorXd ty = p.ops.trace * y.omega.cwiseQuotient(p.fields.rho);
    Eigen::VectorXd nx = p.ops.normalTrace * p.fields.young.cwiseProduct(x.nu);
    Eigen::VectorXd ny = p.ops.normalTrace * p.fields.young.cwiseProduct(y.nu);
    return tx.dot(p.metric.mBoundary.cwiseProduct(ny)) +
           ty.dot(p.metric.mBoundary.cwiseProduct(nx));
  };

  {
    Problem2 p(shapes::rectangle(1.0, 0.5, 8, 4));
    Generator gen = assembleGenerator(p.cx, p.metric, p.fields, p.ops);
    for (int trial = 0; trial < 100; ++trial) {
      State x, y;
      x.omega = randomVec(gen.n0, rng);
      x.nu = randomVec(gen.n1, rng);
      y.omega = randomVec(gen.n0, rng);
      y.nu = randomVec(gen.n1, rng);
      Eigen::VectorXd xs = x.stacked(), ys = y.stacked();
      double lhs = (gen.a * xs).dot(gen.energyDiag.cwiseProduct(ys)) +
                   xs.dot(gen.energyDiag.cwiseProduct(gen.a * ys));
      double scale = std::sqrt(xs.dot(gen.energyDiag.cwiseProduct(xs)) *
                               ys.dot(gen.energyDiag.cwiseProduct(ys)));
      double defect = std::abs(lhs - pairing(p, x, y)) / scale;
      worst = std::max(worst, defect);
      if (defect > 1e-12) pass = false;
    }
  }
  {
    // closed manifold: boundary terms exactly zero
    Problem2 p(shapes::icosphere(1));
    Generator gen = assembleGenerator(p.cx, p.metric, p.fields, p.ops);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd xs = randomVec(gen.n0 + gen.n1, rng);
      Eigen::VectorXd ys = randomVec(gen.n0 + gen.n1, rng);
      double lhs = (gen.a * xs).dot(gen.energyDiag.cwiseProduct(ys)) +
                   xs.dot(gen.energyDiag.cwiseProduct(gen.a * ys));
      double scale = std::sqrt(xs.dot(gen.energyDiag.cwiseProduct(xs)) *
                               ys.dot(gen.energyDiag.cwiseProduct(ys)));
      if (std::abs(lhs) > 1e-12 * scale) pass = false;
    }
  }
  report(3, pass, "abstract Green identity", "worst scaled defect " + formatCsvValue(worst));
}

// criterion 4: admissibility classification of the reference pairs
void criterion4() {
  Problem2 p(shapes::rectangle(1.0, 0.5, 16, 8));
  const Eigen::VectorXd& mb = p.metric.mBoundary;
  const int nb = p.bd.vertexCount();

  AdmissibilityReport vz = checkAdmissible(BCSpec::velocityZero(nb), mb);
  AdmissibilityReport nz = checkAdmissible(BCSpec::normalZero(nb), mb);
  bool pass = vz.admissible() && vz.conservative && nz.admissible() && nz.conservative;
  for (double c : {0.1, 1.0, 10.0})
    pass = pass && checkAdmissible(BCSpec::impedance(nb, c), mb).admissible();
  pass = pass && !checkAdmissible(BCSpec::impedance(nb, -1.0), mb).admissible();
  AdmissibilityReport anti = checkAdmissible(
      BCSpec::custom(Eigen::MatrixXd::Identity(nb, nb), -Eigen::MatrixXd::Identity(nb, nb),
                     "anti"),
      mb);
  pass = pass && !anti.kernelPass && !anti.inequalityPass;
  report(4, pass, "admissibility classification",
         "(I,0),(0,I) conservative; impedance c>0 pass, c=-1 and (I,-I) fail");
}

// criteria 5 and 6 share the h = 1/16 rectangle
void criteria56() {
  Problem2 p(shapes::rectangle(1.0, 0.5, 16, 8));
  const int nb = p.bd.vertexCount();
  const double h = 1.0 / 16.0;
  Config cfg;

  SimulateOptions opts;
  opts.dt = h / 2.0;
  opts.steps = 1000;

  // (0, I) with standing_wave_x
  double dev1 = 0.0;
  {
    ProfileSamples s = evalProfile("standing_wave_x", p.cx, cfg);
    State x0 = initialState(p.cx, s.u0, s.v0, p.fields);
    Trajectory traj =
        simulate(p.cx, p.metric, p.fields, p.ops, BCSpec::normalZero(nb), x0, opts);
    double e0 = traj.energies.front();
    for (double e : traj.energies) dev1 = std::max(dev1, std::abs(e - e0) / e0);
  }
  // (I, 0) with the Dirichlet-compatible standing wave
  double dev2 = 0.0;
  {
    ProfileSamples s = evalProfile("standing_wave_xy", p.cx, cfg);
    State x0 = initialState(p.cx, s.u0, s.v0, p.fields);
    Trajectory traj =
        simulate(p.cx, p.metric, p.fields, p.ops, BCSpec::velocityZero(nb), x0, opts);
    double e0 = traj.energies.front();
    for (double e : traj.energies) dev2 = std::max(dev2, std::abs(e - e0) / e0);
  }
  report(5, dev1 <= 1e-8 && dev2 <= 1e-8, "energy conservation over 1000 steps",
         "max relative drift " + formatCsvValue(std::max(dev1, dev2)));

  // dissipation: impedance c = 1, gaussian bump
  {
    ProfileSamples s = evalProfile("gaussian_bump", p.cx, cfg);
    State x0 = initialState(p.cx, s.u0, s.v0, p.fields);
    Trajectory traj =
        simulate(p.cx, p.metric, p.fields, p.ops, BCSpec::impedance(nb, 1.0), x0, opts);
    double e0 = traj.energies.front();
    bool monotone = true;
    for (size_t i = 1; i < traj.energies.size(); ++i)
      if (traj.energies[i] > traj.energies[i - 1] + 1e-10 * e0) monotone = false;
    double eFinal = traj.energies.back();
    report(6, monotone && eFinal < 0.9 * e0, "dissipation under impedance c = 1",
           "E_1000/E_0 = " + formatCsvValue(eFinal / e0));
  }
}

// criterion 7: convergence of omega to the analytic standing wave at t = 1
void criterion7() {
  Config cfg;
  std::vector<double> errors;
  for (int nx : {8, 16, 32}) {
    Problem2 p(shapes::rectangle(1.0, 0.5, nx, nx / 2));
    ProfileSamples s = evalProfile("standing_wave_x", p.cx, cfg);
    State x0 = initialState(p.cx, s.u0, s.v0, p.fields);
    double h = 1.0 / nx;
    SimulateOptions opts;
    int steps = static_cast<int>(std::lround(1.0 / (0.5 * h)));
    opts.dt = 1.0 / steps;
    opts.steps = steps;
    opts.snapshotStride = steps;
    Trajectory traj = simulate(p.cx, p.metric, p.fields, p.ops,
                               BCSpec::normalZero(p.bd.vertexCount()), x0, opts);
    Eigen::VectorXd exact = exactOmega("standing_wave_x", p.cx, cfg, 1.0);
    Eigen::VectorXd err = traj.snapshots.back().omega - exact;
    errors.push_back(std::sqrt(err.dot(p.metric.m[0].cwiseProduct(err))));
  }
  double order = std::log2(errors[1] / errors[2]);
  report(7, order >= 1.5, "convergence to the analytic solution",
         "errors " + formatCsvValue(errors[0]) + ", " + formatCsvValue(errors[1]) + ", " +
             formatCsvValue(errors[2]) + "; finest observed order " + formatCsvValue(order));
}

// criterion 8: eigenfrequency of the l = 1 mode on the unit sphere
void criterion8() {
  Problem2 p(shapes::icosphere(2));
  Config cfg;
  ProfileSamples s = evalProfile("sphere_l1", p.cx, cfg);
  State x0 = initialState(p.cx, s.u0, s.v0, p.fields);

  const double exactPeriod = 2.0 * M_PI / std::sqrt(2.0);
  SimulateOptions opts;
  opts.dt = 0.02;
  opts.steps = static_cast<int>(std::lround(10.0 * exactPeriod / opts.dt));
  opts.snapshotStride = 1;
  Trajectory traj = simulate(p.cx, p.metric, p.fields, p.ops, x0, opts);

  // <omega, omega>_{M0} oscillates at twice the modal frequency; the period
  // is twice the spacing of upward mean-crossings.
  std::vector<double> series;
  series.reserve(traj.snapshots.size());
  for (const State& st : traj.snapshots)
    series.push_back(st.omega.dot(p.metric.m[0].cwiseProduct(st.omega)));

  double lo = *std::min_element(series.begin(), series.end());
  double hi = *std::max_element(series.begin(), series.end());
  double mid = 0.5 * (lo + hi);
  std::vector<double> crossings;
  for (size_t i = 1; i < series.size(); ++i) {
    if (series[i - 1] < mid && series[i] >= mid) {
      double frac = (mid - series[i - 1]) / (series[i] - series[i - 1]);
      crossings.push_back(traj.dt * (static_cast<double>(i - 1) + frac));
    }
  }
  bool pass = false;
  double period = 0.0;
  if (crossings.size() >= 2) {
    double spacing = (crossings.back() - crossings.front()) /
                     static_cast<double>(crossings.size() - 1);
    period = 2.0 * spacing;
    pass = std::abs(period - exactPeriod) <= 0.05 * exactPeriod;
  }
  report(8, pass, "closed-manifold eigenfrequency",
         "measured period " + formatCsvValue(period) + " vs 2*pi/sqrt(2) = " +
             formatCsvValue(exactPeriod));
}

// criterion 9: consistency of the normal trace under refinement
void criterion9() {
  std::vector<double> errors;
  for (int nx : {8, 16, 32}) {
    Problem2 p(shapes::rectangle(1.0, 0.5, nx, nx / 2));
    Eigen::VectorXd u(p.cx.count(0));
    for (int v = 0; v < u.size(); ++v)
      u[v] = std::sin(p.cx.vertices(v, 0)) * std::cosh(p.cx.vertices(v, 1));
    Cochain mu = exteriorDerivative(p.cx, Cochain(0, u));
    Eigen::VectorXd nmu = p.ops.normalTrace * mu.values;
    double worst = 0.0;
    for (int lv = 0; lv < p.bd.vertexCount(); ++lv) {
      int gv = p.bd.vertexMap[lv];
      double x = p.cx.vertices(gv, 0), y = p.cx.vertices(gv, 1);
      bool corner = (x == 0.0 || x == 1.0) && (y == 0.0 || y == 0.5);
      if (corner) continue; // the outward normal is not defined there
      double dn;
      if (y == 0.0) dn = -std::sin(x) * std::sinh(y);
      else if (y == 0.5) dn = std::sin(x) * std::sinh(y);
      else if (x == 0.0) dn = -std::cos(x) * std::cosh(y);
      else dn = std::cos(x) * std::cosh(y);
      worst = std::max(worst, std::abs(nmu[lv] - dn));
    }
    errors.push_back(worst);
  }
  double order1 = std::log2(errors[0] / errors[1]);
  double order2 = std::log2(errors[1] / errors[2]);
  bool pass = order1 >= 0.8 && order2 >= 0.8;
  report(9, pass, "normal-trace consistency",
         "errors " + formatCsvValue(errors[0]) + ", " + formatCsvValue(errors[1]) + ", " +
             formatCsvValue(errors[2]) + "; orders " + formatCsvValue(order1) + ", " +
             formatCsvValue(order2));
}

// criterion 10: negative control, (I, -I) with --unsafe grows energy
void criterion10() {
  Problem2 p(shapes::rectangle(1.0, 0.5, 16, 8));
  const int nb = p.bd.vertexCount();
  std::mt19937 rng(10);
  State x0;
  x0.omega = randomVec(p.cx.count(0), rng);
  x0.nu = randomVec(p.cx.count(1), rng);

  SimulateOptions opts;
  opts.dt = 1.0 / 32.0;
  opts.steps = 1000;
  opts.unsafe = true;
  opts.solverTolerance = 1e-6; // the run is allowed to be badly conditioned
  BCSpec anti = BCSpec::custom(Eigen::MatrixXd::Identity(nb, nb),
                               -Eigen::MatrixXd::Identity(nb, nb), "anti");
  bool grew = false;
  double maxRatio = 1.0;
  try {
    Trajectory traj = simulate(p.cx, p.metric, p.fields, p.ops, anti, x0, opts);
    double e0 = traj.energies.front();
    for (double e : traj.energies) {
      maxRatio = std::max(maxRatio, e / e0);
      if (e > e0 * (1.0 + 1e-6)) grew = true;
    }
  } catch (const DynamicsError&) {
    grew = false;
  }
  report(10, grew, "negative control (I,-I) grows energy",
         "max E/E_0 = " + formatCsvValue(maxRatio));
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria56();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
