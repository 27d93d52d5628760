#include "hodgewave/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hodgewave::shapes {

namespace {

RawMesh fromLists(int n, const std::vector<std::vector<double>>& verts,
                  std::vector<Simplex> cells) {
  RawMesh mesh;
  mesh.dimension = n;
  mesh.vertices.resize(verts.size(), verts[0].size());
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = 0; j < verts[i].size(); ++j) mesh.vertices(i, j) = verts[i][j];
  for (auto& c : cells) std::sort(c.begin(), c.end());
  mesh.cells = std::move(cells);
  return mesh;
}

} // namespace

RawMesh triangle() {
  return fromLists(2, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
}

RawMesh square() {
  return fromLists(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

RawMesh segment(int cells) {
  std::vector<std::vector<double>> verts;
  std::vector<Simplex> elems;
  for (int i = 0; i <= cells; ++i) verts.push_back({static_cast<double>(i) / cells});
  for (int i = 0; i < cells; ++i) elems.push_back({i, i + 1});
  return fromLists(1, verts, std::move(elems));
}

RawMesh rectangle(double lx, double ly, int nx, int ny) {
  std::vector<std::vector<double>> verts;
  std::vector<Simplex> cells;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) verts.push_back({lx * i / nx, ly * j / ny});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return fromLists(2, verts, std::move(cells));
}

RawMesh annulus(double r0, double r1, int nr, int ntheta) {
  std::vector<std::vector<double>> verts;
  std::vector<Simplex> cells;
  auto vid = [&](int i, int j) { return i * ntheta + (j % ntheta); };
  for (int i = 0; i <= nr; ++i) {
    double r = r0 + (r1 - r0) * i / nr;
    for (int j = 0; j < ntheta; ++j) {
      double t = 2.0 * std::numbers::pi * j / ntheta;
      verts.push_back({r * std::cos(t), r * std::sin(t)});
    }
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < ntheta; ++j) {
      cells.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i + 1, j)});
    }
  return fromLists(2, verts, std::move(cells));
}

RawMesh icosphere(int level) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      std::array<double, 3> m = {(verts[a][0] + verts[b][0]) / 2,
                                 (verts[a][1] + verts[b][1]) / 2,
                                 (verts[a][2] + verts[b][2]) / 2};
      verts.push_back(m);
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    for (auto [a, b, c] : faces) {
      int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  std::vector<std::vector<double>> normalized;
  for (auto& v : verts) {
    double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    normalized.push_back({v[0] / r, v[1] / r, v[2] / r});
  }
  std::vector<Simplex> cells;
  for (auto [a, b, c] : faces) cells.push_back({a, b, c});
  return fromLists(2, normalized, std::move(cells));
}

RawMesh tetrahedron() {
  return fromLists(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}});
}

RawMesh moebius() {
  // Faces (i, i+1, i+2) mod 5: the standard minimal Moebius triangulation.
  std::vector<std::vector<double>> verts;
  for (int i = 0; i < 5; ++i) {
    double t = 2.0 * std::numbers::pi * i / 5;
    verts.push_back({std::cos(t), std::sin(t), i % 2 ? 0.3 : -0.3});
  }
  std::vector<Simplex> cells;
  for (int i = 0; i < 5; ++i) cells.push_back({i, (i + 1) % 5, (i + 2) % 5});
  return fromLists(2, verts, std::move(cells));
}

RawMesh flatTorus(int nx, int ny) {
  std::vector<std::vector<double>> verts;
  std::vector<Simplex> cells;
  auto vid = [&](int i, int j) { return (j % ny) * nx + (i % nx); };
  const double rx = nx / (2.0 * std::numbers::pi);
  const double ry = ny / (2.0 * std::numbers::pi);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double a = 2.0 * std::numbers::pi * i / nx;
      double b = 2.0 * std::numbers::pi * j / ny;
      verts.push_back({rx * std::cos(a), rx * std::sin(a), ry * std::cos(b),
                       ry * std::sin(b)});
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return fromLists(2, verts, std::move(cells));
}

} // namespace hodgewave::shapes
