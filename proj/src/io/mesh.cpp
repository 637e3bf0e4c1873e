#include "hsurf/io/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "hsurf/errors.hpp"

namespace hsurf::io {

namespace {

struct Ring {
  double x;
  double z;
  bool pole;
};

std::vector<Ring> rings_of(const SurfaceProfile& profile) {
  std::vector<Ring> rings;
  for (const ProfileSample& s : profile.flatten()) {
    if (!rings.empty() && std::abs(rings.back().x - s.x) <= kWeldTol && std::abs(rings.back().z - s.z) <= kWeldTol)
      continue;
    rings.push_back({s.x, s.z, s.x <= kWeldTol});
  }
  return rings;
}

}  // namespace

Mesh revolve(const SurfaceProfile& profile, Kappa k, Model model, int theta_samples) {
  if (theta_samples < 8) throw DomainError("theta samples must be >= 8");
  std::vector<Ring> rings = rings_of(profile);
  if (rings.size() < 2) throw DomainError("profile needs at least two distinct samples");

  bool wrap = false;
  if (profile.closed && !rings.front().pole && !rings.back().pole) {
    const Ring& a = rings.front();
    const Ring& b = rings.back();
    if (std::abs(a.x - b.x) <= 1e-6 && std::abs(a.z - b.z) <= 1e-6) rings.pop_back();
    wrap = true;
  }

  Mesh m;
  std::vector<int> first(rings.size());
  for (std::size_t i = 0; i < rings.size(); ++i) {
    first[i] = static_cast<int>(m.vertices.size());
    const int count = rings[i].pole ? 1 : theta_samples;
    for (int j = 0; j < count; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / theta_samples;
      m.vertices.push_back(project_model(surface_point(rings[i].x, rings[i].z, theta, k), model, k));
    }
  }

  const auto vid = [&](std::size_t i, int j) { return rings[i].pole ? first[i] : first[i] + (j % theta_samples); };
  const std::size_t bands = wrap ? rings.size() : rings.size() - 1;
  for (std::size_t i = 0; i < bands; ++i) {
    const std::size_t n = (i + 1) % rings.size();
    for (int j = 0; j < theta_samples; ++j) {
      const int a = vid(i, j), b = vid(i, j + 1), c = vid(n, j + 1), d = vid(n, j);
      if (rings[i].pole && rings[n].pole) throw DomainError("profile runs along the axis");
      if (rings[i].pole) {
        m.faces.push_back({a, c, d});
      } else if (rings[n].pole) {
        m.faces.push_back({a, b, c});
      } else {
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
      }
    }
  }
  return m;
}

void write_obj(std::ostream& os, const Mesh& m) {
  char buf[128];
  for (const Eigen::Vector3d& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v.x(), v.y(), v.z());
    os << buf;
  }
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

Mesh read_obj(std::istream& is) {
  Mesh m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z())) throw ParseError("bad vertex record on line " + std::to_string(lineno), lineno);
      m.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int& i : f) {
        if (!(ls >> i) || i < 1) throw ParseError("bad face record on line " + std::to_string(lineno), lineno);
        --i;
      }
      m.faces.push_back(f);
    } else {
      throw ParseError("unsupported OBJ record '" + tag + "'", lineno);
    }
  }
  const int nv = static_cast<int>(m.vertices.size());
  for (const auto& f : m.faces)
    for (int i : f)
      if (i >= nv) throw ParseError("face references missing vertex", 0);
  return m;
}

MeshStats analyze(const Mesh& m) {
  std::map<std::pair<int, int>, int> use;
  bool degenerate = false;
  for (const auto& f : m.faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) degenerate = true;
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      ++use[{std::min(a, b), std::max(a, b)}];
    }
  }
  MeshStats s;
  s.vertices = static_cast<int>(m.vertices.size());
  s.edges = static_cast<int>(use.size());
  s.faces = static_cast<int>(m.faces.size());
  s.euler = s.vertices - s.edges + s.faces;
  s.manifold = !degenerate;
  for (const auto& [edge, n] : use) {
    if (n == 1) ++s.boundary_edges;
    if (n > 2) s.manifold = false;
  }
  return s;
}

}  // namespace hsurf::io
