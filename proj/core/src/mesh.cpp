#include "hodgewave/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace hodgewave {

namespace {

// Next non-empty line with comments stripped; tracks the 1-based line number.
bool nextDataLine(std::istream& in, std::string& line, int& lineNo) {
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parseFail(int lineNo, const std::string& what) {
  throw MeshError("OFF parse error at line " + std::to_string(lineNo) + ": " + what);
}

} // namespace

RawMesh parseOff(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;

  if (!nextDataLine(in, line, lineNo)) parseFail(lineNo, "empty input");
  {
    std::istringstream hs(line);
    std::string tag;
    hs >> tag;
    if (tag != "OFF") parseFail(lineNo, "expected 'OFF' header, got '" + tag + "'");
  }

  if (!nextDataLine(in, line, lineNo)) parseFail(lineNo, "missing counts line");
  long nv = 0, nf = 0, ne = 0;
  {
    std::istringstream cs(line);
    if (!(cs >> nv >> nf)) parseFail(lineNo, "malformed counts line");
    cs >> ne; // edge count is ignored, per convention
    if (nv <= 0 || nf <= 0) parseFail(lineNo, "vertex and face counts must be positive");
  }

  RawMesh mesh;
  int coordDim = -1;
  std::vector<std::vector<double>> coords;
  coords.reserve(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!nextDataLine(in, line, lineNo)) parseFail(lineNo, "truncated: expected vertex line");
    std::istringstream vs(line);
    std::vector<double> p;
    double x;
    while (vs >> x) p.push_back(x);
    if (p.empty()) parseFail(lineNo, "no coordinates on vertex line");
    if (coordDim < 0) coordDim = static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != coordDim)
      parseFail(lineNo, "inconsistent coordinate count");
    coords.push_back(std::move(p));
  }

  int arity = -1;
  for (long i = 0; i < nf; ++i) {
    if (!nextDataLine(in, line, lineNo)) parseFail(lineNo, "truncated: expected face line");
    std::istringstream fs(line);
    int k = 0;
    if (!(fs >> k)) parseFail(lineNo, "malformed face line");
    if (k < 2 || k > 4)
      parseFail(lineNo, "cell arity " + std::to_string(k) + " unsupported (want 2, 3 or 4)");
    if (arity < 0) arity = k;
    if (k != arity) parseFail(lineNo, "mixed cell arity");
    Simplex cell(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
      if (!(fs >> cell[j])) parseFail(lineNo, "malformed face line");
      if (cell[j] < 0 || cell[j] >= nv)
        parseFail(lineNo, "vertex index " + std::to_string(cell[j]) + " out of range");
    }
    std::sort(cell.begin(), cell.end());
    if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
      parseFail(lineNo, "repeated vertex in cell");
    mesh.cells.push_back(std::move(cell));
  }

  mesh.dimension = arity - 1;
  if (coordDim < mesh.dimension)
    throw MeshError("embedding dimension " + std::to_string(coordDim) +
                    " below manifold dimension " + std::to_string(mesh.dimension));
  mesh.vertices.resize(nv, coordDim);
  for (long i = 0; i < nv; ++i)
    for (int j = 0; j < coordDim; ++j) mesh.vertices(i, j) = coords[i][j];
  return mesh;
}

RawMesh readOffFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseOff(ss.str());
}

std::string writeOff(const RawMesh& mesh) {
  std::ostringstream out;
  out.precision(17);
  out << "OFF\n" << mesh.vertexCount() << " " << mesh.cells.size() << " 0\n";
  for (int i = 0; i < mesh.vertexCount(); ++i) {
    for (int j = 0; j < mesh.embeddingDim(); ++j)
      out << (j ? " " : "") << mesh.vertices(i, j);
    out << "\n";
  }
  for (const auto& cell : mesh.cells) {
    out << cell.size();
    for (int v : cell) out << " " << v;
    out << "\n";
  }
  return out.str();
}

int SimplicialComplex::findSimplex(int k, const Simplex& ascending) const {
  const auto& list = simplices[k];
  auto it = std::lower_bound(list.begin(), list.end(), ascending);
  if (it == list.end() || *it != ascending) return -1;
  return static_cast<int>(it - list.begin());
}

bool SimplicialComplex::hasBoundary() const {
  return std::any_of(faceCoboundaryCount.begin(), faceCoboundaryCount.end(),
                     [](int c) { return c == 1; });
}

namespace {

// All (k+1)-subsets of each cell, deduplicated, lexicographic order.
std::vector<Simplex> enumerateSimplices(const std::vector<Simplex>& cells, int k) {
  std::vector<Simplex> out;
  const int m = k + 1;
  for (const auto& cell : cells) {
    const int cn = static_cast<int>(cell.size());
    std::vector<int> pick(m);
    // iterate subsets via combination counter
    for (int i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      Simplex s(m);
      for (int i = 0; i < m; ++i) s[i] = cell[pick[i]];
      out.push_back(std::move(s));
      int i = m - 1;
      while (i >= 0 && pick[i] == cn - m + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Signed incidence D_k: row per (k+1)-simplex, the face omitting position i
// gets sign (-1)^i relative to ascending reference orientation.
Eigen::SparseMatrix<int> buildIncidence(const SimplicialComplex& cx, int k) {
  const auto& upper = cx.simplices[k + 1];
  std::vector<Eigen::Triplet<int>> trips;
  trips.reserve(upper.size() * (k + 2));
  for (int r = 0; r < static_cast<int>(upper.size()); ++r) {
    const Simplex& s = upper[r];
    int sign = 1;
    for (size_t omit = 0; omit < s.size(); ++omit) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (size_t j = 0; j < s.size(); ++j)
        if (j != omit) face.push_back(s[j]);
      int c = cx.findSimplex(k, face);
      if (c < 0) throw MeshError("internal: face not enumerated");
      trips.emplace_back(r, c, sign);
      sign = -sign;
    }
  }
  Eigen::SparseMatrix<int> D(static_cast<int>(upper.size()),
                             static_cast<int>(cx.simplices[k].size()));
  D.setFromTriplets(trips.begin(), trips.end());
  return D;
}

} // namespace

SimplicialComplex buildComplex(const RawMesh& mesh) {
  const int n = mesh.dimension;
  if (n < 0 || n > 3) throw MeshError("dimension must be in {0,1,2,3}");
  if (mesh.embeddingDim() < n) throw MeshError("embedding dimension below manifold dimension");
  if (mesh.cells.empty()) throw MeshError("mesh has no cells");
  for (size_t c = 0; c < mesh.cells.size(); ++c) {
    const auto& cell = mesh.cells[c];
    if (static_cast<int>(cell.size()) != n + 1)
      throw MeshError("cell " + std::to_string(c) + " has wrong vertex count");
    if (!std::is_sorted(cell.begin(), cell.end()) ||
        std::adjacent_find(cell.begin(), cell.end()) != cell.end())
      throw MeshError("cell " + std::to_string(c) + " has unsorted or repeated vertices");
    for (int v : cell)
      if (v < 0 || v >= mesh.vertexCount())
        throw MeshError("cell " + std::to_string(c) + " references vertex out of range");
  }

  SimplicialComplex cx;
  cx.dimension = n;
  cx.vertices = mesh.vertices;
  cx.simplices.resize(n + 1);
  for (int k = 0; k <= n; ++k) cx.simplices[k] = enumerateSimplices(mesh.cells, k);
  cx.incidence.reserve(std::max(0, n));
  for (int k = 0; k < n; ++k) cx.incidence.push_back(buildIncidence(cx, k));

  // Manifold check: each (n-1)-simplex borders one or two top simplices.
  const int nTop = cx.count(n);
  cx.faceCoboundaryCount.assign(n > 0 ? cx.count(n - 1) : 0, 0);
  if (n > 0) {
    const auto& Dn = cx.incidence[n - 1];
    for (int k = 0; k < Dn.outerSize(); ++k)
      for (Eigen::SparseMatrix<int>::InnerIterator it(Dn, k); it; ++it)
        cx.faceCoboundaryCount[it.col()] += 1;
    for (size_t f = 0; f < cx.faceCoboundaryCount.size(); ++f)
      if (cx.faceCoboundaryCount[f] > 2)
        throw MeshError("non-manifold: face " + std::to_string(f) + " shared by " +
                        std::to_string(cx.faceCoboundaryCount[f]) + " top simplices");
  }

  // Orientability: propagate top-simplex flips across interior faces. Two
  // tops are compatible when they induce opposite signs on the shared face.
  cx.orientation.assign(nTop, 0);
  if (n == 0) {
    cx.orientation.assign(nTop, 1);
  } else {
    const auto& Dn = cx.incidence[n - 1];
    // face -> (top, sign) pairs
    std::vector<std::vector<std::pair<int, int>>> cobound(cx.count(n - 1));
    for (int k = 0; k < Dn.outerSize(); ++k)
      for (Eigen::SparseMatrix<int>::InnerIterator it(Dn, k); it; ++it)
        cobound[it.col()].emplace_back(static_cast<int>(it.row()), it.value());
    for (int seed = 0; seed < nTop; ++seed) {
      if (cx.orientation[seed] != 0) continue;
      cx.orientation[seed] = 1;
      std::queue<int> q;
      q.push(seed);
      while (!q.empty()) {
        int t = q.front();
        q.pop();
        const Simplex& ts = cx.simplices[n][t];
        for (size_t omit = 0; omit < ts.size(); ++omit) {
          Simplex face;
          for (size_t j = 0; j < ts.size(); ++j)
            if (j != omit) face.push_back(ts[j]);
          int f = cx.findSimplex(n - 1, face);
          for (auto [t2, sign2] : cobound[f]) {
            if (t2 == t) continue;
            int sign1 = (omit % 2 == 0) ? 1 : -1;
            int want = -cx.orientation[t] * sign1 * sign2;
            if (cx.orientation[t2] == 0) {
              cx.orientation[t2] = want;
              q.push(t2);
            } else if (cx.orientation[t2] != want) {
              throw MeshError("non-orientable mesh: no consistent orientation exists");
            }
          }
        }
      }
    }
  }
  return cx;
}

BoundaryComplex extractBoundary(const SimplicialComplex& cx) {
  const int n = cx.dimension;
  BoundaryComplex bd;
  if (n == 0) {
    bd.trace.resize(0, cx.count(0));
    bd.complex.dimension = -1;
    return bd;
  }

  std::vector<int> bdFaces;
  for (int f = 0; f < cx.count(n - 1); ++f)
    if (cx.faceCoboundaryCount[f] == 1) bdFaces.push_back(f);

  if (bdFaces.empty()) {
    bd.trace.resize(0, cx.count(0));
    bd.complex.dimension = -1;
    return bd;
  }

  // Global-to-local vertex renumbering over boundary faces.
  std::map<int, int> toLocal;
  for (int f : bdFaces)
    for (int v : cx.simplices[n - 1][f]) toLocal.emplace(v, 0);
  int next = 0;
  for (auto& [gv, lv] : toLocal) lv = next++;

  RawMesh sub;
  sub.dimension = n - 1;
  sub.vertices.resize(next, cx.vertices.cols());
  bd.vertexMap.resize(next);
  for (auto& [gv, lv] : toLocal) {
    sub.vertices.row(lv) = cx.vertices.row(gv);
    bd.vertexMap[lv] = gv;
  }
  for (int f : bdFaces) {
    Simplex cell;
    for (int v : cx.simplices[n - 1][f]) cell.push_back(toLocal[v]);
    sub.cells.push_back(cell);
    bd.faceMap.push_back(f);
  }

  if (n - 1 == 0) {
    // 0-dimensional boundary: build directly, no incidence to assemble.
    bd.complex.dimension = 0;
    bd.complex.vertices = sub.vertices;
    bd.complex.simplices.resize(1);
    for (const auto& cell : sub.cells) bd.complex.simplices[0].push_back(cell);
    bd.complex.orientation.assign(sub.cells.size(), 1);
  } else {
    bd.complex = buildComplex(sub);
  }

  // Induced orientation: the sign of the face inside its unique top simplex,
  // through the top simplex's global orientation flag.
  {
    const auto& Dn = cx.incidence[n - 1];
    std::vector<int> faceSign(cx.count(n - 1), 0);
    for (int k = 0; k < Dn.outerSize(); ++k)
      for (Eigen::SparseMatrix<int>::InnerIterator it(Dn, k); it; ++it)
        if (cx.faceCoboundaryCount[it.col()] == 1)
          faceSign[it.col()] = it.value() * cx.orientation[it.row()];
    for (int f : bdFaces) bd.inducedSign.push_back(faceSign[f]);
  }

  bd.trace.resize(next, cx.count(0));
  std::vector<Eigen::Triplet<double>> trips;
  for (int lv = 0; lv < next; ++lv) trips.emplace_back(lv, bd.vertexMap[lv], 1.0);
  bd.trace.setFromTriplets(trips.begin(), trips.end());
  return bd;
}

ManifoldReport validateManifold(const SimplicialComplex& cx) {
  ManifoldReport rep;
  rep.orientable = true; // buildComplex rejects non-orientable meshes
  int chi = 0;
  for (int k = 0; k <= cx.dimension; ++k) {
    rep.simplexCounts.push_back(cx.count(k));
    chi += (k % 2 == 0 ? 1 : -1) * cx.count(k);
  }
  rep.eulerCharacteristic = chi;
  for (int c : cx.faceCoboundaryCount)
    if (c == 1) rep.boundaryFaceCount++;
  if (rep.boundaryFaceCount > 0) {
    BoundaryComplex bd = extractBoundary(cx);
    rep.boundaryVertexCount = bd.vertexCount();
  }
  return rep;
}

std::string ManifoldReport::summary() const {
  std::ostringstream out;
  out << "simplex counts:";
  for (size_t k = 0; k < simplexCounts.size(); ++k)
    out << " [" << k << "] " << simplexCounts[k];
  out << "\nboundary: " << boundaryFaceCount << " faces, " << boundaryVertexCount
      << " vertices\norientable: " << (orientable ? "yes" : "no")
      << "\nEuler characteristic: " << eulerCharacteristic << "\n";
  return out.str();
}

} // namespace hodgewave
