#include "hsurf/orbit.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "hsurf/dopri.hpp"

namespace hsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefectAxisBand = 1e-2;
constexpr double kPoleBand = 1e-6;  // 1 - |y| below this counts as reaching the pole

using Stepper = DormandPrince<double, 2>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

struct ChartField {
  const PlaneSpec& spec;

  bool operator()(double, const Eigen::Vector2d& w, Eigen::Vector2d& dw) const {
    const double x = w(0);
    if (!(x > 0.0)) return false;
    if (spec.kappa == Kappa::Spherical && !(x < kPi)) return false;
    const double c = std::cos(w(1)), sn = std::sin(w(1));
    const double cot = spec.kappa == Kappa::Spherical ? std::cos(x) / std::sin(x) : 1.0 / std::tanh(x);
    dw(0) = c;
    dw(1) = 2.0 * spec.f(std::clamp(c, -1.0, 1.0)) - sn * cot;
    return std::isfinite(dw(1));
  }
};

enum Fn { kMeridian, kTurning, kAxis, kAntipode, kFnCount };

std::array<double, kFnCount> event_values(const PlaneSpec& spec, const IntegratorConfig& cfg, const Eigen::Vector2d& w) {
  // cos(pi/2) rounds to 6e-17; snap so a start on the section is not a crossing
  const double c = std::abs(std::cos(w(1))) < 1e-15 ? 0.0 : std::cos(w(1));
  return {c, value(spec.eps) * std::sin(w(1)), w(0) - cfg.pole_tol,
          spec.kappa == Kappa::Spherical ? (kPi - cfg.pole_tol) - w(0) : 1.0};
}

bool crosses(int fn, double ga, double gb) {
  if (fn == kMeridian) return ga != 0.0 && (gb == 0.0 || sgn(ga) != sgn(gb));
  return ga > 0.0 && gb <= 0.0;
}

}  // namespace

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::PoleReached: return "PoleReached";
    case EventKind::ForbiddenAxis: return "ForbiddenAxis";
    case EventKind::Turning: return "Turning";
    case EventKind::MeridianCross: return "MeridianCross";
    case EventKind::AntipodalPole: return "AntipodalPole";
    case EventKind::EquilibriumApproach: return "EquilibriumApproach";
    case EventKind::ArcLengthBudget: return "ArcLengthBudget";
  }
  return "?";
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0 && atol > 0 && max_step > 0 && s_budget > 0 && pole_tol > 0 && event_tol > 0 && seed_offset > 0))
    throw DomainError("integrator settings must all be positive");
}

double Orbit::s_first() const { return samples.empty() ? terminal.location.s : samples.front().s; }
double Orbit::s_last() const { return samples.empty() ? terminal.location.s : samples.back().s; }

Eigen::Vector2d Orbit::chart_at(double s) const {
  if (segments.empty()) throw DomainError("orbit has no dense output");
  const double lo = std::min(s_first(), s_last()), hi = std::max(s_first(), s_last());
  if (s < lo - 1e-14 || s > hi + 1e-14) throw DomainError("s=" + fmt(s) + " outside the orbit");
  // segments are ordered along the integration direction
  auto it = std::lower_bound(segments.begin(), segments.end(), s, [this](const DenseSegment& g, double v) {
    return direction > 0 ? g.s_end < v : g.s_end > v;
  });
  if (it == segments.end()) --it;
  return Stepper::value(it->coeff, (s - it->s0) / it->h);
}

State Orbit::at(double s) const {
  const Eigen::Vector2d w = chart_at(s);
  return {s, w(0), std::cos(w(1))};
}

Eigen::Vector2d Orbit::derivative_at(double s) const {
  auto it = std::lower_bound(segments.begin(), segments.end(), s, [this](const DenseSegment& g, double v) {
    return direction > 0 ? g.s_end < v : g.s_end > v;
  });
  if (it == segments.end()) --it;
  const double th = (s - it->s0) / it->h;
  const Eigen::Vector2d w = Stepper::value(it->coeff, th);
  const Eigen::Vector2d dw = Stepper::derivative(it->coeff, th, it->h);
  return {dw(0), -std::sin(w(1)) * dw(1)};
}

ChartState to_chart(const PlaneSpec& spec, const State& st) {
  if (!(std::abs(st.y) <= 1.0)) throw DomainError("|y| > 1");
  return {st.s, st.x, value(spec.eps) * std::acos(st.y)};
}

State seed_pole(const PlaneSpec& spec, int delta, double s0) {
  if (delta != 1 && delta != -1) throw DomainError("pole sign must be +1 or -1");
  const double h = spec.f(delta);
  if (h == 0.0) throw DomainError("H(" + std::to_string(delta) + ")=0: no orbit meets the axis there");
  if (!(value(spec.eps) * h > 0.0)) throw DomainError("eps*H(delta) <= 0: no axis orbit in this plane");
  return {s0, s0, delta * (1.0 - h * h * s0 * s0 / 2.0)};
}

State seed_turning(const PlaneSpec& spec, double x1, int delta, double s0) {
  if (delta != 1 && delta != -1) throw DomainError("pole sign must be +1 or -1");
  if (!(x1 > IntegratorConfig{}.pole_tol)) throw DomainError("turning radius must exceed pole_tol");
  const double h = spec.f(delta);
  if (h == 0.0) throw DomainError("degenerate turning circle: H(" + std::to_string(delta) + ")=0");
  return {s0, x1 + delta * s0, delta * (1.0 - 2.0 * h * h * s0 * s0)};
}

ChartState pole_chart_seed(const PlaneSpec& spec, int delta, double s0) {
  const State st = seed_pole(spec, delta, s0);
  const double h = spec.f(delta);
  // psi grows like H(delta) s away from the pole on either end
  const double psi = delta > 0 ? h * s0 : value(spec.eps) * kPi - h * s0;
  return {st.s, st.x, psi};
}

ChartState turning_chart_start(const PlaneSpec& spec, double x1, int delta, int direction) {
  if (delta != 1 && delta != -1) throw DomainError("pole sign must be +1 or -1");
  const double h = spec.f(delta);
  if (h == 0.0) throw DomainError("degenerate turning circle: H(" + std::to_string(delta) + ")=0");
  // psi' = 2H(delta) there; the orbit must move into eps*sin(psi) > 0
  const double psi = delta > 0 ? 0.0 : value(spec.eps) * kPi;
  const double into = delta > 0 ? value(spec.eps) : -value(spec.eps);
  if (!(direction * h * into > 0.0)) throw DomainError("orbit leaves the plane at this turning circle");
  return {0.0, x1, psi};
}

Orbit integrate_chart(const PlaneSpec& spec, const ChartState& start, const IntegratorConfig& cfg,
                      const CrossingStop& stop, int direction) {
  cfg.validate();
  if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
  if (!(start.x > cfg.pole_tol) || (spec.kappa == Kappa::Spherical && !(start.x < kPi - cfg.pole_tol)))
    throw DomainError("start x=" + fmt(start.x) + " outside the strip");
  if (value(spec.eps) * std::sin(start.psi) < -1e-15) throw DomainError("start is not in this phase plane");

  const ChartField field{spec};
  Orbit orb{spec, direction, {}, {}, {}, {}};
  const auto eq = equilibria(spec);

  Eigen::Vector2d w(start.x, start.psi), k1;
  double s = start.s;
  if (!field(s, w, k1)) throw DomainError("field undefined at start");

  auto make_state = [](double s_, const Eigen::Vector2d& w_) { return State{s_, w_(0), std::cos(w_(1))}; };
  auto near_equilibrium = [&](const Eigen::Vector2d& w_, const Eigen::Vector2d& dw_) {
    if (eq.empty()) return false;
    const double y = std::cos(w_(1));
    const double F = std::hypot(y, std::sin(w_(1)) * dw_(1));
    return F < kEquilibriumField && std::hypot(w_(0) - eq.front().x0, y) < kEquilibriumRadius;
  };

  if (near_equilibrium(w, k1)) {
    orb.terminal = {EventKind::EquilibriumApproach, make_state(s, w), 0};
    return orb;
  }
  orb.samples.push_back({s, w(0), std::cos(w(1)), -std::sin(w(1)) * k1(1)});

  const double dist = spec.kappa == Kappa::Spherical ? std::min(w(0), kPi - w(0)) : w(0);
  double h = direction * std::min(cfg.max_step, 0.01 * dist);
  PiController<double> ctl;
  const double s_start = s;

  while (true) {
    const double remaining = cfg.s_budget - std::abs(s - s_start);
    bool last = false;
    if (std::abs(h) >= remaining) {
      h = direction * remaining;
      last = true;
    }
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(s)))
      throw NumericError("step-size underflow at s=" + fmt(s) + ", x=" + fmt(w(0)) + ", y=" + fmt(std::cos(w(1))));

    const auto step = Stepper::attempt(field, s, w, k1, h, cfg.rtol, cfg.atol);
    if (!step.valid) {
      h *= 0.25;
      continue;
    }
    bool accept = false;
    const double h_next = ctl.propose(h, step.err, accept);
    if (!accept) {
      h = h_next;
      continue;
    }
    // defect control: the interpolant's slope at the step midpoint must match the field.
    // Next to the axis the orbit is singular and the error estimate alone governs the step.
    double h_defect = std::numeric_limits<double>::infinity();
    const Eigen::Vector2d wm = Stepper::value(step.dense, 0.5);
    const double axis = spec.kappa == Kappa::Spherical ? std::min(wm(0), kPi - wm(0)) : wm(0);
    Eigen::Vector2d fm;
    if (axis > kDefectAxisBand && field(s + 0.5 * h, wm, fm)) {
      const double defect = (Stepper::derivative(step.dense, 0.5, h) - fm).cwiseAbs().maxCoeff();
      const double tol = 5.0 * cfg.rtol * (1.0 + std::max(std::abs(wm(0)), std::abs(std::cos(wm(1)))));
      const double fac = 0.9 * std::pow(tol / std::max(defect, 1e-300), 0.25);
      if (defect > tol) {
        h *= std::clamp(fac, 0.2, 0.9);
        continue;
      }
      h_defect = std::abs(h) * std::min(fac, 5.0);
    }

    // event scan on the dense output, including interior points
    constexpr std::array<double, 5> kTheta{0.0, 0.25, 0.5, 0.75, 1.0};
    std::array<std::array<double, kFnCount>, 5> gv;
    std::array<Eigen::Vector2d, 5> wv;
    for (int j = 0; j < 5; ++j) {
      wv[j] = j == 0 ? w : (j == 4 ? step.y1 : Stepper::value(step.dense, kTheta[j]));
      gv[j] = event_values(spec, cfg, wv[j]);
    }
    struct Hit {
      double theta;
      int fn;
    };
    std::optional<Hit> stop_hit;
    for (int j = 0; j < 4 && !stop_hit; ++j) {
      std::vector<Hit> hits;
      for (int fn = 0; fn < kFnCount; ++fn) {
        if (!crosses(fn, gv[j][fn], gv[j + 1][fn])) continue;
        double a = kTheta[j], b = kTheta[j + 1];
        const double ga = gv[j][fn];
        while ((b - a) * std::abs(h) > cfg.event_tol) {
          const double m = 0.5 * (a + b);
          if (m == a || m == b) break;
          const double gm = event_values(spec, cfg, Stepper::value(step.dense, m))[fn];
          const bool left = fn == kMeridian ? (gm == 0.0 || sgn(gm) != sgn(ga)) : gm <= 0.0;
          (left ? b : a) = m;
        }
        hits.push_back({b, fn});
      }
      std::sort(hits.begin(), hits.end(), [](const Hit& p, const Hit& q) { return p.theta < q.theta; });
      for (const Hit& hit : hits) {
        if (hit.fn != kMeridian) {
          stop_hit = hit;
          break;
        }
        const Eigen::Vector2d we = Stepper::value(step.dense, hit.theta);
        Eigen::Vector2d dwe = Eigen::Vector2d::Zero();
        field(s, we, dwe);
        const Event ev{EventKind::MeridianCross, make_state(s + hit.theta * h, we), sgn(-std::sin(we(1)) * dwe(1))};
        orb.crossings.push_back(ev);
        if (stop && stop(ev, static_cast<int>(orb.crossings.size()) - 1)) {
          stop_hit = hit;
          break;
        }
      }
    }

    if (stop_hit) {
      const double th = stop_hit->theta;
      const double se = s + th * h;
      const Eigen::Vector2d we = Stepper::value(step.dense, th);
      Eigen::Vector2d dwe;
      if (!field(se, we, dwe)) dwe.setZero();
      orb.segments.push_back({s, h, se, step.dense});
      const OrbitSample smp{se, we(0), std::cos(we(1)), -std::sin(we(1)) * dwe(1)};
      if (std::abs(se - orb.samples.back().s) < 1e-15) {
        orb.samples.back() = smp;
        orb.segments.pop_back();
      } else {
        orb.samples.push_back(smp);
      }
      EventKind kind = EventKind::MeridianCross;
      int dir = 0;
      switch (stop_hit->fn) {
        case kMeridian: dir = orb.crossings.back().direction; break;
        case kTurning: kind = EventKind::Turning; break;
        case kAxis:
          kind = 1.0 - std::abs(std::cos(we(1))) <= kPoleBand ? EventKind::PoleReached : EventKind::ForbiddenAxis;
          break;
        default: kind = EventKind::AntipodalPole; break;
      }
      orb.terminal = {kind, make_state(se, we), dir};
      if (kind == EventKind::ForbiddenAxis)
        spdlog::debug("orbit hit the axis at y={} (forbidden endpoint)", std::cos(we(1)));
      return orb;
    }

    orb.segments.push_back({s, h, s + h, step.dense});
    s += h;
    w = step.y1;
    k1 = step.k7;
    orb.samples.push_back({s, w(0), std::cos(w(1)), -std::sin(w(1)) * k1(1)});
    if (near_equilibrium(w, k1)) {
      orb.terminal = {EventKind::EquilibriumApproach, make_state(s, w), 0};
      return orb;
    }
    if (last) {
      orb.terminal = {EventKind::ArcLengthBudget, make_state(s, w), 0};
      return orb;
    }
    h = direction * std::min({std::abs(h_next), h_defect, cfg.max_step});
  }
}

Orbit integrate(const PlaneSpec& spec, const State& start, const IntegratorConfig& cfg,
                const std::set<EventKind>& stop_kinds, int direction) {
  const bool stop_meridian = stop_kinds.count(EventKind::MeridianCross) > 0;
  return integrate_chart(spec, to_chart(spec, start), cfg,
                         [stop_meridian](const Event&, int) { return stop_meridian; }, direction);
}

namespace {

// 3-point Gauss-Legendre of z' = sin(psi) over [s0, s0 + L] of one segment
double segment_rise(const DenseSegment& g, double L) {
  static const double r = std::sqrt(0.6);
  static const std::array<double, 3> t{0.5 * (1.0 - r), 0.5, 0.5 * (1.0 + r)};
  static const std::array<double, 3> wt{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += wt[i] * std::sin(Stepper::value(g.coeff, t[i] * L / g.h)(1));
  return L * acc;
}

}  // namespace

std::vector<double> z_quadrature(const Orbit& orbit, double z_start) {
  std::vector<double> z;
  z.reserve(orbit.samples.size());
  if (orbit.samples.empty()) return z;
  z.push_back(z_start);
  for (const DenseSegment& g : orbit.segments) z.push_back(z.back() + segment_rise(g, g.s_end - g.s0));
  return z;
}

double height_at(const Orbit& orbit, const std::vector<double>& z, double s) {
  if (orbit.segments.empty()) return z.empty() ? 0.0 : z.front();
  auto it = std::lower_bound(orbit.segments.begin(), orbit.segments.end(), s, [&](const DenseSegment& g, double v) {
    return orbit.direction > 0 ? g.s_end < v : g.s_end > v;
  });
  if (it == orbit.segments.end()) --it;
  const auto k = static_cast<std::size_t>(it - orbit.segments.begin());
  return z[k] + segment_rise(*it, s - it->s0);
}

ClosureResult detect_closed(const PlaneSpec& spec, double xi, const IntegratorConfig& cfg) {
  if (!in_strip(spec.kappa, xi)) throw DomainError("xi outside the strip");
  const Eigen::Vector2d F = vector_field(spec, xi, 0.0);
  if (std::abs(F(1)) < kEquilibriumField) throw DomainError("(xi, 0) is the equilibrium");
  const int d0 = sgn(F(1));
  const ChartState start{0.0, xi, value(spec.eps) * kPi / 2.0};
  Orbit orb = integrate_chart(spec, start, cfg, [d0](const Event& e, int) { return e.direction == d0; });
  const Event term = orb.terminal;
  if (term.kind == EventKind::ArcLengthBudget)
    throw NumericError("arc-length budget exhausted before returning to the section");
  if (term.kind == EventKind::MeridianCross && std::abs(term.location.x - xi) <= kClosureTol) {
    const double pitch = z_quadrature(orb, 0.0).back();
    return ClosedOrbit{term.location.s, pitch, term.location.x, std::move(orb)};
  }
  return OpenOrbit{term, std::move(orb)};
}

double first_integral_cmc(Kappa k, double H0, double x, double y) {
  const double u = std::sqrt(std::max(0.0, 1.0 - y * y));
  if (k == Kappa::Hyperbolic) return u * std::sinh(x) - 2.0 * H0 * (std::cosh(x) - 1.0);
  return u * std::sin(x) + 2.0 * H0 * std::cos(x);
}

}  // namespace hsurf
