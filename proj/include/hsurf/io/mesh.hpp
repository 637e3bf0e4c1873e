#pragma once

#include <Eigen/Core>
#include <array>
#include <iosfwd>
#include <vector>

#include "hsurf/delaunay.hpp"

namespace hsurf::io {

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based
};

// Profile samples closer than this are merged; axis samples within it weld to a pole.
inline constexpr double kWeldTol = 1e-9;

// Surface of revolution in the projected model. Quads are split into two
// triangles, the theta seam is shared, axis samples collapse to one vertex,
// and a closed profile without poles wraps around into a torus.
Mesh revolve(const SurfaceProfile& profile, Kappa k, Model model, int theta_samples);

void write_obj(std::ostream& os, const Mesh& m);
Mesh read_obj(std::istream& is);

struct MeshStats {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler = 0;
  int boundary_edges = 0;
  bool manifold = false;  // every edge in one or two faces, no degenerate face
};

MeshStats analyze(const Mesh& m);

}  // namespace hsurf::io
