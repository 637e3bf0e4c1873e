#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsurf/orbit.hpp"

namespace hsurf {

enum class SurfaceKind { Sphere, Cylinder, Unduloid, Nodoid, Torus, MinimalSlice, Indeterminate };

const char* kind_name(SurfaceKind k);

enum class Verdict { Pass, PassAsSlice, Fail };

const char* verdict_name(Verdict v);

struct NecessaryCheck {
  Verdict verdict = Verdict::Fail;
  std::string detail;
  double product = 0.0;               // H(-1) H(1), closedness check
  std::optional<double> witness;      // minimiser of 2|H| - sqrt(1-y^2)
  std::optional<int> multiplicity_sum;
};

NecessaryCheck check_closed_necessary(const HFunction& f, Kappa k);
NecessaryCheck check_sphere_necessary(const HFunction& f, Kappa k);

struct ProfileArc {
  Eps eps = Eps::Plus;
  std::vector<ProfileSample> samples;
  // One point inside each step, with y' from the interpolant's slope rather
  // than from the field, so residual checks do not reduce to the ODE itself.
  std::vector<ProfileSample> midpoints;
};

struct SurfaceProfile {
  std::vector<ProfileArc> arcs;
  bool closed = false;

  std::vector<ProfileSample> flatten() const;
  // Largest mismatch in (x, |y|, z) between consecutive arc endpoints.
  double junction_defect() const;
};

struct SphereData {
  double x0 = 0.0;
  double closure_defect = 0.0;
  bool monotone_ok = false;
  double height = 0.0;
  SurfaceProfile profile;
};

struct UnduloidData {
  double xi = 0.0;
  double period = 0.0;
  double pitch = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  int periods = 0;
  double translation_defect = 0.0;  // period-to-period deviation
  SurfaceProfile profile;
};

struct NodoidData {
  double xi = 0.0;
  double x1 = 0.0;
  double r = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double translation = 0.0;
  bool torus_like_closure = false;
  double gluing_mismatch = 0.0;
  int periods = 0;
  SurfaceProfile profile;
};

struct TorusData {
  double xi_star = 0.0;
  double x1 = 0.0;
  double closure_defect = 0.0;
  double mirror_defect = 0.0;
  SurfaceProfile profile;
};

struct CylinderData {
  double radius = 0.0;
  double mean_curvature = 0.0;
  Eps eps = Eps::Plus;
};

struct ClassificationReport {
  SurfaceKind kind = SurfaceKind::Indeterminate;
  std::vector<std::pair<std::string, double>> scalars;
  ClassReport condition;
  std::string diagnostics;

  std::optional<double> scalar(const std::string& name) const;
};

// Verdict tolerances on the section {y=0}.
inline constexpr double kVerdictTol = 1e-7;
inline constexpr double kTorusTol = 1e-6;
inline constexpr double kGluingTol = 1e-6;

SphereData build_sphere(const HFunction& f, Kappa k, const IntegratorConfig& cfg = {});
std::vector<CylinderData> build_cylinder(const HFunction& f, Kappa k, std::optional<Eps> eps = std::nullopt);
ClassificationReport classify_initial(const HFunction& f, Kappa k, double xi, const IntegratorConfig& cfg = {});
UnduloidData build_unduloid(const HFunction& f, Kappa k, double xi, int periods, const IntegratorConfig& cfg = {});
NodoidData build_nodoid(const HFunction& f, Kappa k, double xi, int periods, const IntegratorConfig& cfg = {});
double find_torus_parameter(const HFunction& f, const IntegratorConfig& cfg = {});
TorusData build_torus(const HFunction& f, const IntegratorConfig& cfg = {});

// Turning radius of the orbit through (xi, 0) in the plane of the sphere.
std::optional<double> turning_radius(const HFunction& f, Kappa k, double xi, const IntegratorConfig& cfg = {});

// Main plane: eps with eps H(1) > 0.
Eps sphere_plane(const HFunction& f);

}  // namespace hsurf
