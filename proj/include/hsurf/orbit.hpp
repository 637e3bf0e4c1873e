#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "hsurf/phaseplane.hpp"

namespace hsurf {

enum class EventKind {
  PoleReached,
  ForbiddenAxis,
  Turning,
  MeridianCross,
  AntipodalPole,
  EquilibriumApproach,
  ArcLengthBudget
};

const char* event_name(EventKind k);

struct State {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Event {
  EventKind kind = EventKind::ArcLengthBudget;
  State location;
  int direction = 0;  // sign of y' at a MeridianCross
};

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.1;
  double s_budget = 200.0;
  double pole_tol = 1e-9;
  double event_tol = 1e-12;
  double seed_offset = 1e-4;

  void validate() const;
};

struct OrbitSample {
  double s;
  double x;
  double y;
  double yprime;
};

// One accepted step of the angle chart (x, psi), valid on [s0, s_end].
struct DenseSegment {
  double s0;
  double h;
  double s_end;
  Eigen::Matrix<double, 2, 5> coeff;
};

// Integrated orbit. Internally the solver runs in the chart y = cos(psi),
// z' = sin(psi), which stays regular where |y| -> 1.
struct Orbit {
  PlaneSpec spec;
  int direction = 1;
  std::vector<OrbitSample> samples;
  std::vector<DenseSegment> segments;
  std::vector<Event> crossings;
  Event terminal;

  double s_first() const;
  double s_last() const;
  Eigen::Vector2d chart_at(double s) const;  // (x, psi)
  State at(double s) const;
  Eigen::Vector2d derivative_at(double s) const;  // (x', y') from the dense output
};

// Point in the angle chart; eps sin(psi) >= 0 inside the plane.
struct ChartState {
  double s = 0.0;
  double x = 0.0;
  double psi = 0.0;
};

ChartState to_chart(const PlaneSpec& spec, const State& st);

State seed_pole(const PlaneSpec& spec, int delta, double s0);
State seed_turning(const PlaneSpec& spec, double x1, int delta, double s0);

// Chart seed at arc distance s0 from the axis point (0, delta); for delta=-1 the
// orbit ends at the pole, so the seed is meant for backward integration.
ChartState pole_chart_seed(const PlaneSpec& spec, int delta, double s0);

// Exact start on the turning circle (x1, delta); checks that the orbit enters
// the plane when integrated in `direction`.
ChartState turning_chart_start(const PlaneSpec& spec, double x1, int delta, int direction = 1);

// Decides whether a MeridianCross ends the integration.
using CrossingStop = std::function<bool(const Event&, int index)>;

Orbit integrate_chart(const PlaneSpec& spec, const ChartState& start, const IntegratorConfig& cfg,
                      const CrossingStop& stop, int direction = 1);

Orbit integrate(const PlaneSpec& spec, const State& start, const IntegratorConfig& cfg,
                const std::set<EventKind>& stop_kinds, int direction = 1);

// Heights at every sample of the orbit.
std::vector<double> z_quadrature(const Orbit& orbit, double z_start);

// Height at an arbitrary s, given the sample heights from z_quadrature.
double height_at(const Orbit& orbit, const std::vector<double>& z, double s);

struct ClosedOrbit {
  double period;
  double pitch;
  double return_x;
  Orbit orbit;
};

struct OpenOrbit {
  Event terminal;
  Orbit orbit;
};

using ClosureResult = std::variant<ClosedOrbit, OpenOrbit>;

inline constexpr double kClosureTol = 1e-8;

ClosureResult detect_closed(const PlaneSpec& spec, double xi, const IntegratorConfig& cfg = {});

// Conserved along orbits of constant H0 = eps * H.
double first_integral_cmc(Kappa k, double H0, double x, double y);

// |F| < 1e-10 within 1e-5 of the equilibrium.
inline constexpr double kEquilibriumField = 1e-10;
inline constexpr double kEquilibriumRadius = 1e-5;

}  // namespace hsurf
