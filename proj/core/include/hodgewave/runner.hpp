#pragma once

#include "hodgewave/config.hpp"
#include "hodgewave/dynamics.hpp"
#include "hodgewave/shapes.hpp"

#include <iosfwd>
#include <memory>

namespace hodgewave {

// Everything assembled from a config's [mesh] and [materials] sections.
// Heap-allocated so the internal complex pointer stays stable.
struct Problem {
  SimplicialComplex complex;
  BoundaryComplex boundary;
  HodgeMetric metric;
  MaterialFields fields;
  TraceOperators ops;
};

std::unique_ptr<Problem> loadProblem(const Config& cfg);
std::unique_ptr<Problem> makeProblem(const RawMesh& mesh, const Config& cfg);

BCSpec loadBc(const Config& cfg, int boundaryDim);

// Named analytic initial profiles; returns vertex samples (u0, v0).
struct ProfileSamples {
  Eigen::VectorXd u0;
  Eigen::VectorXd v0;
};
ProfileSamples evalProfile(const std::string& name, const SimplicialComplex& cx,
                           const Config& cfg);

// Exact omega = u_t at time t for profiles with a closed-form solution;
// throws ConfigError for profiles without one.
Eigen::VectorXd exactOmega(const std::string& name, const SimplicialComplex& cx,
                           const Config& cfg, double t);

// CLI entry points. Exit codes: 0 success, 1 validation failure,
// 2 runtime/solver failure.
int cmdCheckMesh(const Config& cfg, std::ostream& out);
int cmdCheckBc(const Config& cfg, std::ostream& out);

struct RunOptions {
  bool unsafe = false;
  int snapshotStride = 0;
  std::string outDir = "out";
  bool outDirSet = false; // explicit --out wins over the config's [output] dir
};

int cmdSimulate(const Config& cfg, const RunOptions& opts, std::ostream& out);
int cmdConverge(const Config& cfg, const RunOptions& opts, std::ostream& out);

} // namespace hodgewave
