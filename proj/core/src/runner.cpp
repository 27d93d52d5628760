#include "hodgewave/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

namespace hodgewave {

namespace {

constexpr double kPi = std::numbers::pi;

MaterialFields loadMaterials(const Config& cfg, const SimplicialComplex& cx) {
  MaterialFields f = MaterialFields::uniform(cx, cfg.getDouble("materials", "rho", 1.0),
                                             cfg.getDouble("materials", "young", 1.0));
  if (cfg.has("materials", "rho_csv"))
    f.rho = readFieldCsv(cfg.get("materials", "rho_csv"), cx.count(0),
                         cfg.getDouble("materials", "rho", 1.0));
  if (cfg.has("materials", "young_csv"))
    f.young = readFieldCsv(cfg.get("materials", "young_csv"), cx.count(1),
                           cfg.getDouble("materials", "young", 1.0));
  return f;
}

} // namespace

std::unique_ptr<Problem> makeProblem(const RawMesh& mesh, const Config& cfg) {
  auto p = std::make_unique<Problem>();
  p->complex = buildComplex(mesh);
  p->boundary = extractBoundary(p->complex);
  p->metric = buildMetric(p->complex, p->boundary);
  p->metric.complex = &p->complex;
  p->fields = loadMaterials(cfg, p->complex);
  p->ops = buildTraceOperators(p->complex, p->boundary, p->metric);
  return p;
}

std::unique_ptr<Problem> loadProblem(const Config& cfg) {
  RawMesh mesh = readOffFile(cfg.get("mesh", "path"));
  return makeProblem(mesh, cfg);
}

BCSpec loadBc(const Config& cfg, int nb) {
  const std::string kind = cfg.get("bc", "kind", "normal_zero");
  if (kind == "velocity_zero") return BCSpec::velocityZero(nb);
  if (kind == "normal_zero") return BCSpec::normalZero(nb);
  if (kind == "impedance")
    return BCSpec::impedance(nb, cfg.requireDouble("bc", "c"));
  if (kind == "custom") {
    Eigen::MatrixXd v1 = readMatrixCsv(cfg.get("bc", "v1_csv"));
    Eigen::MatrixXd v2 = readMatrixCsv(cfg.get("bc", "v2_csv"));
    if (v1.cols() != nb || v2.cols() != nb)
      throw ConfigError("custom bc matrices must have " + std::to_string(nb) + " columns");
    return BCSpec::custom(std::move(v1), std::move(v2), "custom");
  }
  throw ConfigError("unknown bc kind: " + kind);
}

ProfileSamples evalProfile(const std::string& name, const SimplicialComplex& cx,
                           const Config& cfg) {
  const int nv = cx.count(0);
  const double amp = cfg.getDouble("initial", "amplitude", 1.0);
  ProfileSamples s;
  s.u0.resize(nv);
  s.v0 = Eigen::VectorXd::Zero(nv);

  if (name == "standing_wave_x") {
    const double lx = cfg.getDouble("initial", "lx", 1.0);
    for (int v = 0; v < nv; ++v)
      s.u0[v] = amp * std::cos(kPi * cx.vertices(v, 0) / lx);
    return s;
  }
  if (name == "standing_wave_xy") {
    const double lx = cfg.getDouble("initial", "lx", 1.0);
    const double ly = cfg.getDouble("initial", "ly", 0.5);
    for (int v = 0; v < nv; ++v)
      s.u0[v] = amp * std::sin(kPi * cx.vertices(v, 0) / lx) *
                std::sin(kPi * cx.vertices(v, 1) / ly);
    return s;
  }
  if (name == "gaussian_bump") {
    const double cx0 = cfg.getDouble("initial", "center_x", 0.3);
    const double cy0 = cfg.getDouble("initial", "center_y", 0.2);
    const double width = cfg.getDouble("initial", "width", 0.15);
    for (int v = 0; v < nv; ++v) {
      double dx = cx.vertices(v, 0) - cx0;
      double dy = cx.vertices.cols() > 1 ? cx.vertices(v, 1) - cy0 : 0.0;
      s.u0[v] = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
    }
    return s;
  }
  if (name == "sphere_l1") {
    if (cx.vertices.cols() < 3) throw ConfigError("sphere_l1 needs a 3D embedding");
    for (int v = 0; v < nv; ++v) s.u0[v] = amp * cx.vertices(v, 2);
    return s;
  }
  throw ConfigError("unknown profile: " + name);
}

Eigen::VectorXd exactOmega(const std::string& name, const SimplicialComplex& cx,
                           const Config& cfg, double t) {
  const int nv = cx.count(0);
  const double amp = cfg.getDouble("initial", "amplitude", 1.0);
  Eigen::VectorXd w(nv);
  if (name == "standing_wave_x") {
    const double lx = cfg.getDouble("initial", "lx", 1.0);
    const double freq = kPi / lx;
    for (int v = 0; v < nv; ++v)
      w[v] = -amp * freq * std::cos(kPi * cx.vertices(v, 0) / lx) * std::sin(freq * t);
    return w;
  }
  if (name == "standing_wave_xy") {
    const double lx = cfg.getDouble("initial", "lx", 1.0);
    const double ly = cfg.getDouble("initial", "ly", 0.5);
    const double freq = kPi * std::sqrt(1.0 / (lx * lx) + 1.0 / (ly * ly));
    for (int v = 0; v < nv; ++v)
      w[v] = -amp * freq * std::sin(kPi * cx.vertices(v, 0) / lx) *
             std::sin(kPi * cx.vertices(v, 1) / ly) * std::sin(freq * t);
    return w;
  }
  throw ConfigError("profile '" + name + "' has no closed-form reference");
}

int cmdCheckMesh(const Config& cfg, std::ostream& out) {
  std::unique_ptr<Problem> p;
  try {
    p = loadProblem(cfg);
  } catch (const std::exception& e) {
    out << "check-mesh: " << e.what() << "\n";
    return 1;
  }
  const SimplicialComplex& cx = p->complex;

  ManifoldReport rep = validateManifold(cx);
  out << rep.summary();

  bool ok = true;
  // d(d .) = 0, exact in integer arithmetic.
  for (int k = 0; k + 1 < cx.dimension; ++k) {
    Eigen::SparseMatrix<int> prod = cx.d(k + 1) * cx.d(k);
    prod.prune([](int, int, int v) { return v != 0; });
    bool zero = prod.nonZeros() == 0;
    out << "d.d = 0 at degree " << k << ": " << (zero ? "pass" : "FAIL") << "\n";
    ok = ok && zero;
  }

  // Green identity self-test on random cochains.
  if (cx.dimension >= 1) {
    std::mt19937 rng(12345);
    std::normal_distribution<double> dist;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Cochain omega(0, Eigen::VectorXd::NullaryExpr(cx.count(0), [&](Eigen::Index) {
                      return dist(rng);
                    }));
      Cochain mu(1, Eigen::VectorXd::NullaryExpr(cx.count(1), [&](Eigen::Index) {
                   return dist(rng);
                 }));
      double scale = std::sqrt(innerProduct(p->metric, omega, omega)) *
                     std::sqrt(innerProduct(p->metric, mu, mu));
      double res = std::abs(greenResidual(cx, p->metric, p->ops, omega, mu));
      worst = std::max(worst, res / std::max(scale, 1e-300));
    }
    bool pass = worst <= 1e-12;
    out << "Green identity residual: " << formatCsvValue(worst) << " "
        << (pass ? "pass" : "FAIL") << "\n";
    ok = ok && pass;
  }
  return ok ? 0 : 1;
}

int cmdCheckBc(const Config& cfg, std::ostream& out) {
  try {
    auto p = loadProblem(cfg);
    if (p->boundary.empty()) {
      out << "check-bc: mesh is closed, no boundary conditions apply\n";
      return 1;
    }
    BCSpec bc = loadBc(cfg, p->boundary.vertexCount());
    AdmissibilityReport rep = checkAdmissible(bc, p->metric.mBoundary);
    out << "boundary condition: " << bc.label << "\n" << rep.summary();
    return rep.admissible() ? 0 : 1;
  } catch (const std::exception& e) {
    out << "check-bc: " << e.what() << "\n";
    return 1;
  }
}

namespace {

void writeEnergyCsv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream f(path);
  f << "step,time,energy,boundary_power,solver_residual\n";
  for (size_t i = 0; i < traj.times.size(); ++i)
    f << i << "," << formatCsvValue(traj.times[i]) << ","
      << formatCsvValue(traj.energies[i]) << "," << formatCsvValue(traj.boundaryPowers[i])
      << "," << formatCsvValue(traj.solverResiduals[i]) << "\n";
}

void writeStateCsv(const std::filesystem::path& path, const State& state) {
  std::ofstream f(path);
  f << "simplex_kind,index,value\n";
  for (int i = 0; i < state.omega.size(); ++i)
    f << "vertex," << i << "," << formatCsvValue(state.omega[i]) << "\n";
  for (int i = 0; i < state.nu.size(); ++i)
    f << "edge," << i << "," << formatCsvValue(state.nu[i]) << "\n";
}

State buildInitial(const Config& cfg, const Problem& p) {
  if (cfg.has("initial", "u0_csv") || cfg.has("initial", "v0_csv")) {
    Eigen::VectorXd u0 = cfg.has("initial", "u0_csv")
                             ? readFieldCsv(cfg.get("initial", "u0_csv"),
                                            p.complex.count(0), 0.0)
                             : Eigen::VectorXd::Zero(p.complex.count(0));
    Eigen::VectorXd v0 = cfg.has("initial", "v0_csv")
                             ? readFieldCsv(cfg.get("initial", "v0_csv"),
                                            p.complex.count(0), 0.0)
                             : Eigen::VectorXd::Zero(p.complex.count(0));
    return initialState(p.complex, u0, v0, p.fields);
  }
  ProfileSamples s =
      evalProfile(cfg.get("initial", "profile", "standing_wave_x"), p.complex, cfg);
  return initialState(p.complex, s.u0, s.v0, p.fields);
}

} // namespace

int cmdSimulate(const Config& cfg, const RunOptions& opts, std::ostream& out) {
  std::unique_ptr<Problem> p;
  State initial;
  SimulateOptions simOpts;
  try {
    p = loadProblem(cfg);
    initial = buildInitial(cfg, *p);
    simOpts.dt = cfg.getDouble("time", "dt", 0.0);
    simOpts.steps = cfg.getInt("time", "steps", 0);
    simOpts.unsafe = opts.unsafe;
    simOpts.snapshotStride = opts.snapshotStride;
    simOpts.solverTolerance = cfg.getDouble("tolerance", "solver", 1e-12);
    if (simOpts.steps < 0) throw ConfigError("steps must be nonnegative");
  } catch (const std::exception& e) {
    out << "simulate: " << e.what() << "\n";
    return 1;
  }

  std::string outDir = opts.outDirSet ? opts.outDir : cfg.get("output", "dir", opts.outDir);
  std::filesystem::create_directories(outDir);

  Trajectory traj;
  try {
    if (p->boundary.empty()) {
      traj = simulate(p->complex, p->metric, p->fields, p->ops, initial, simOpts);
    } else {
      BCSpec bc = loadBc(cfg, p->boundary.vertexCount());
      traj = simulate(p->complex, p->metric, p->fields, p->ops, bc, initial, simOpts);
    }
  } catch (const DynamicsError& e) {
    out << "simulate: " << e.what() << "\n";
    writeEnergyCsv(std::filesystem::path(outDir) / "energy.csv", traj);
    return 2;
  } catch (const std::exception& e) {
    out << "simulate: " << e.what() << "\n";
    return 1;
  }

  writeEnergyCsv(std::filesystem::path(outDir) / "energy.csv", traj);
  for (size_t i = 0; i < traj.snapshots.size(); ++i)
    writeStateCsv(std::filesystem::path(outDir) /
                      ("state_" + std::to_string(traj.snapshotSteps[i]) + ".csv"),
                  traj.snapshots[i]);
  out << "steps: " << simOpts.steps << "\nfinal energy: "
      << formatCsvValue(traj.energies.back()) << "\noutput: " << outDir << "\n";
  return 0;
}

int cmdConverge(const Config& cfg, const RunOptions& opts, std::ostream& out) {
  std::vector<double> hs, dts, errors;
  std::string outDir;
  try {
    const std::string meshKind = cfg.get("converge", "mesh", "rectangle");
    if (meshKind != "rectangle")
      throw ConfigError("converge supports mesh = rectangle only");
    const double lx = cfg.getDouble("converge", "lx", 1.0);
    const double ly = cfg.getDouble("converge", "ly", 0.5);
    const double tFinal = cfg.getDouble("converge", "t_final", 1.0);
    const double dtFactor = cfg.getDouble("converge", "dt_factor", 0.5);
    const std::string profile = cfg.get("initial", "profile", "standing_wave_x");
    std::vector<int> levels = cfg.getIntList("converge", "levels");

    outDir = opts.outDirSet ? opts.outDir : cfg.get("output", "dir", opts.outDir);
    std::filesystem::create_directories(outDir);

    for (int nx : levels) {
      if (nx < 1) throw ConfigError("refinement level must be positive");
      const double h = lx / nx;
      const int ny = std::max(1, static_cast<int>(std::lround(nx * ly / lx)));
      auto p = makeProblem(shapes::rectangle(lx, ly, nx, ny), cfg);
      BCSpec bc = loadBc(cfg, p->boundary.vertexCount());

      ProfileSamples s = evalProfile(profile, p->complex, cfg);
      State initial = initialState(p->complex, s.u0, s.v0, p->fields);

      SimulateOptions simOpts;
      double dt = dtFactor * h;
      int steps = std::max(1, static_cast<int>(std::lround(tFinal / dt)));
      simOpts.dt = tFinal / steps;
      simOpts.steps = steps;
      simOpts.unsafe = opts.unsafe;
      simOpts.snapshotStride = steps; // keep the final state
      Trajectory traj = simulate(p->complex, p->metric, p->fields, p->ops, bc, initial,
                                 simOpts);
      const State& finalState = traj.snapshots.back();

      // M0-weighted L2 error of the velocity u_t = omega/rho at final time
      Eigen::VectorXd exact = exactOmega(profile, p->complex, cfg, tFinal);
      Eigen::VectorXd err = finalState.omega.cwiseQuotient(p->fields.rho) - exact;
      double e = std::sqrt(err.dot(p->metric.m[0].cwiseProduct(err)));
      hs.push_back(h);
      dts.push_back(simOpts.dt);
      errors.push_back(e);
    }
  } catch (const DynamicsError& e) {
    out << "converge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "converge: " << e.what() << "\n";
    return 1;
  }

  std::ofstream f(std::filesystem::path(outDir) / "convergence.csv");
  f << "h,dt,l2_error_omega,observed_order\n";
  out << "h,dt,l2_error_omega,observed_order\n";
  for (size_t i = 0; i < hs.size(); ++i) {
    std::string order;
    if (i > 0 && errors[i] > 0.0 && errors[i - 1] > 0.0)
      order = formatCsvValue(std::log(errors[i - 1] / errors[i]) /
                             std::log(hs[i - 1] / hs[i]));
    std::string line = formatCsvValue(hs[i]) + "," + formatCsvValue(dts[i]) + "," +
                       formatCsvValue(errors[i]) + "," + order;
    f << line << "\n";
    out << line << "\n";
  }
  return 0;
}

} // namespace hodgewave
