#pragma once

#include "hodgewave/mesh.hpp"

namespace hodgewave::shapes {

// Unit right triangle (0,0),(1,0),(0,1).
RawMesh triangle();

// Unit square from two triangles (0,1,2),(0,2,3).
RawMesh square();

// [0,1] split into `cells` segments (n=1).
RawMesh segment(int cells);

// [0,lx] x [0,ly] structured triangulation, nx x ny quads split along the
// same diagonal.
RawMesh rectangle(double lx, double ly, int nx, int ny);

// Annulus with radii r0 < r1, nr radial by ntheta angular quads, each split.
RawMesh annulus(double r0, double r1, int nr, int ntheta);

// Icosahedron subdivided `level` times, vertices projected to the unit
// sphere. Closed surface.
RawMesh icosphere(int level);

// Single solid tetrahedron (n=3).
RawMesh tetrahedron();

// Minimal 5-vertex Moebius strip triangulation; non-orientable by
// construction, used as a rejection fixture.
RawMesh moebius();

// Flat torus embedded in R^4 as a product of two circles, nx x ny grid.
// Closed, flat, orientable.
RawMesh flatTorus(int nx, int ny);

} // namespace hodgewave::shapes
