#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>
#include <vector>

namespace hodgewave {

class MeshError : public std::runtime_error {
public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// A simplex is its ascending vertex index list. Ascending order is the
// reference orientation; all incidence signs derive from it.
using Simplex = std::vector<int>;

// Top-dimensional cells plus vertex positions, as read from file or built by
// a generator. `dimension` is the manifold dimension n (cells have n+1
// vertices); the embedding may live in any space with dim >= n.
struct RawMesh {
  Eigen::MatrixXd vertices; // one row per vertex
  std::vector<Simplex> cells;
  int dimension = 0;

  int vertexCount() const { return static_cast<int>(vertices.rows()); }
  int embeddingDim() const { return static_cast<int>(vertices.cols()); }
};

// Oriented simplicial complex of dimension n with signed incidence matrices
// D_k : k-cochains -> (k+1)-cochains, integer entries in {-1,0,+1}.
// Immutable after construction; safe for concurrent reads.
struct SimplicialComplex {
  int dimension = 0;
  Eigen::MatrixXd vertices;
  std::vector<std::vector<Simplex>> simplices; // simplices[k], lexicographic
  std::vector<Eigen::SparseMatrix<int>> incidence; // incidence[k] = D_k
  std::vector<int> orientation; // +-1 per top simplex (consistent global one)
  std::vector<int> faceCoboundaryCount; // top simplices per (n-1)-simplex

  int count(int k) const { return static_cast<int>(simplices[k].size()); }
  const Eigen::SparseMatrix<int>& d(int k) const { return incidence[k]; }

  // Index of a k-simplex given ascending vertices; -1 if absent.
  int findSimplex(int k, const Simplex& ascending) const;

  bool hasBoundary() const;
};

// The (n-1)-subcomplex of faces incident to exactly one top simplex.
// `complex` is a standalone complex over the boundary vertices only;
// vertexMap/faceMap translate its local indices to parent indices.
struct BoundaryComplex {
  SimplicialComplex complex;
  std::vector<int> vertexMap; // boundary-local vertex -> parent vertex
  std::vector<int> faceMap;   // boundary-local cell -> parent (n-1)-simplex
  std::vector<int> inducedSign; // parent top orientation through the face
  Eigen::SparseMatrix<double> trace; // T: parent 0-cochains -> boundary

  int vertexCount() const { return static_cast<int>(vertexMap.size()); }
  bool empty() const { return vertexMap.empty(); }
};

struct ManifoldReport {
  std::vector<int> simplexCounts;
  int boundaryFaceCount = 0;
  int boundaryVertexCount = 0;
  bool orientable = false;
  int eulerCharacteristic = 0;
  std::string summary() const;
};

// ASCII OFF. Faces of arity 2 are segment meshes (n=1), arity 3 triangles
// (n=2), arity 4 tetrahedra (n=3).
RawMesh parseOff(const std::string& text);
RawMesh readOffFile(const std::string& path);
std::string writeOff(const RawMesh& mesh);

// Enumerates all simplices, builds the D_k, verifies manifoldness and (for
// n >= 2) global orientability. Throws MeshError on rejection.
SimplicialComplex buildComplex(const RawMesh& mesh);

BoundaryComplex extractBoundary(const SimplicialComplex& complex);

ManifoldReport validateManifold(const SimplicialComplex& complex);

} // namespace hodgewave
