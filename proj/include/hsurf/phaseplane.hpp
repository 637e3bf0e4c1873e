#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <vector>

#include "hsurf/geomk.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

struct PlaneSpec {
  Kappa kappa;
  Eps eps;
  HFunction f;
};

// Upper end of the x-strip: +inf in H2, pi in S2.
double strip_end(Kappa k);
bool in_strip(Kappa k, double x);

Eigen::Vector2d vector_field(const PlaneSpec& spec, double x, double y);

std::optional<double> gamma_x(const PlaneSpec& spec, double y);

struct GammaBranch {
  double y_lo;
  double y_hi;
};

struct GammaJunction {
  double y;          // zero of H
  bool shifted;      // branch value jumps by pi in the raw arctan here
};

struct GammaCurve {
  std::vector<GammaBranch> branches;
  std::vector<double> asymptote_ys;
  std::vector<GammaJunction> junctions;
};

std::vector<double> gamma_asymptotes(const PlaneSpec& spec);
GammaCurve gamma_curve(const PlaneSpec& spec);

enum class Stability { CenterCandidate, Degenerate };

struct EquilibriumPoint {
  double x0;
  Eps eps;
  Stability stability;
};

std::vector<EquilibriumPoint> equilibria(const PlaneSpec& spec);

struct Linearization {
  Eigen::Matrix2d matrix;
  Eigen::Vector2cd eigenvalues;
  bool center_candidate;
  double period() const;  // 2 pi / |Im lambda|, infinite when degenerate
};

Linearization linearization(const PlaneSpec& spec, const EquilibriumPoint& e);

enum class Region { L1, L2, L3, L4 };

struct RegionTag {
  Region region;
  int dx_sign;
  int dy_sign;
};

// Monotonicity region of an open-region point. Throws DomainError on y=0 or on Gamma.
RegionTag monotonicity(const PlaneSpec& spec, double x, double y);

}  // namespace hsurf
