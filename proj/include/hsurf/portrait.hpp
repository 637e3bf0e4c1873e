#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "hsurf/orbit.hpp"

namespace hsurf {

using Polyline = std::vector<Eigen::Vector2d>;

struct PortraitOrbit {
  int id = 0;
  double xi = 0.0;
  std::vector<OrbitSample> samples;  // increasing s
};

struct Portrait {
  Kappa kappa;
  Eps eps;
  double x_max = 0.0;
  std::vector<Polyline> gamma;  // one polyline per branch, unclipped
  std::vector<double> asymptotes;
  std::vector<EquilibriumPoint> equilibria;
  std::vector<PortraitOrbit> orbits;
  std::optional<Polyline> separatrix;  // sphere orbit, when this plane carries one
};

// pi in S2; in H2 the window covers the equilibrium, the bounded part of
// Gamma and the sphere equator with half a unit of margin, rounded up to 0.5.
double default_x_max(const PlaneSpec& spec);

// Orbits through (xi, 0) integrated both ways until they return to y=0 or stop.
// An empty fan selects nine seeds evenly spaced in (0, x_max).
Portrait compute_portrait(const PlaneSpec& spec, std::vector<double> fan = {}, std::optional<double> x_max = {},
                          const IntegratorConfig& cfg = {});

}  // namespace hsurf
