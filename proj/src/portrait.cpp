#include "hsurf/portrait.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsurf/delaunay.hpp"

namespace hsurf {

namespace {

constexpr int kGammaPoints = 401;

Polyline sample_branch(const PlaneSpec& spec, const GammaBranch& b) {
  Polyline out;
  for (int i = 0; i < kGammaPoints; ++i) {
    // cosine spacing clusters points near the branch ends, where Gamma bends fastest
    const double t = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (kGammaPoints - 1)));
    double y = b.y_lo + (b.y_hi - b.y_lo) * t;
    if (std::abs(y) >= 1.0) {
      const double h = value(spec.eps) * spec.f(y);
      if (h != 0.0) {
        out.push_back({h > 0.0 ? 0.0 : std::numbers::pi, y});
        continue;
      }
      y = std::copysign(1.0 - 1e-12, y);
    }
    if (i == 0) y = std::nextafter(y, b.y_hi);
    if (i == kGammaPoints - 1) y = std::nextafter(y, b.y_lo);
    if (const auto x = gamma_x(spec, y)) out.push_back({*x, y});
  }
  return out;
}

std::optional<Polyline> sphere_orbit(const PlaneSpec& spec, const IntegratorConfig& cfg) {
  try {
    if (sphere_plane(spec.f) != spec.eps) return std::nullopt;
    const SphereData d = build_sphere(spec.f, spec.kappa, cfg);
    Polyline p;
    for (const ProfileSample& s : d.profile.flatten()) p.push_back({s.x, s.y});
    return p;
  } catch (const std::exception& e) {
    spdlog::debug("portrait: no separatrix ({})", e.what());
    return std::nullopt;
  }
}

}  // namespace

double default_x_max(const PlaneSpec& spec) {
  if (spec.kappa == Kappa::Spherical) return std::numbers::pi;
  double ref = 1.0;
  for (const EquilibriumPoint& e : equilibria(spec)) ref = std::max(ref, e.x0);
  const GammaCurve g = gamma_curve(spec);
  if (g.asymptote_ys.empty())
    for (const GammaBranch& b : g.branches)
      for (const Eigen::Vector2d& p : sample_branch(spec, b)) ref = std::max(ref, p.x());
  if (const auto sep = sphere_orbit(spec, {}))
    for (const Eigen::Vector2d& p : *sep) ref = std::max(ref, p.x());
  return std::ceil(2.0 * (ref + 0.5)) / 2.0;
}

Portrait compute_portrait(const PlaneSpec& spec, std::vector<double> fan, std::optional<double> x_max,
                          const IntegratorConfig& cfg) {
  Portrait p{spec.kappa, spec.eps, x_max ? *x_max : default_x_max(spec), {}, {}, {}, {}, {}};
  if (!(p.x_max > 0.0 && p.x_max <= strip_end(spec.kappa))) throw DomainError("x_max outside the strip");

  const GammaCurve g = gamma_curve(spec);
  for (const GammaBranch& b : g.branches) p.gamma.push_back(sample_branch(spec, b));
  p.asymptotes = g.asymptote_ys;
  p.equilibria = equilibria(spec);
  p.separatrix = sphere_orbit(spec, cfg);

  if (fan.empty())
    for (int i = 1; i <= 9; ++i) fan.push_back(p.x_max * i / 10.0);

  IntegratorConfig fc = cfg;
  fc.s_budget = std::min(cfg.s_budget, 4.0 * (p.x_max + 2.0));
  const CrossingStop stop = [](const Event&, int) { return true; };
  for (double xi : fan) {
    if (!(xi > 0.0) || !in_strip(spec.kappa, xi)) throw DomainError("fan seed outside the strip");
    const ChartState start = to_chart(spec, {0.0, xi, 0.0});
    const Orbit fwd = integrate_chart(spec, start, fc, stop, 1);
    if (fwd.samples.empty()) continue;  // the seed is an equilibrium
    const Orbit bwd = integrate_chart(spec, start, fc, stop, -1);
    PortraitOrbit o{static_cast<int>(p.orbits.size()), xi, {}};
    for (std::size_t i = bwd.samples.size(); i-- > 1;) o.samples.push_back(bwd.samples[i]);
    o.samples.insert(o.samples.end(), fwd.samples.begin(), fwd.samples.end());
    spdlog::debug("portrait: xi={} ends {} / {}", xi, event_name(bwd.terminal.kind), event_name(fwd.terminal.kind));
    p.orbits.push_back(std::move(o));
  }
  return p;
}

}  // namespace hsurf
