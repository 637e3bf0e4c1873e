#include "hsurf/delaunay.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace hsurf {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

const CrossingStop kStopAtMeridian = [](const Event&, int) { return true; };
const CrossingStop kNoStop = [](const Event&, int) { return false; };

std::string obstruction(const PlaneSpec& spec, const Orbit& o, const std::string& from) {
  const Event& t = o.terminal;
  const std::string at = "(x=" + fmt(t.location.x) + ", y=" + fmt(t.location.y) + ")";
  std::string what;
  switch (t.kind) {
    case EventKind::EquilibriumApproach:
      what = "converges to the equilibrium " + at;
      break;
    case EventKind::Turning:
      what = "reaches a turning circle " + at + " before the section y=0";
      break;
    case EventKind::ForbiddenAxis:
      what = "hits the axis with |y|<1 " + at;
      break;
    case EventKind::PoleReached:
      what = "returns to the axis " + at;
      break;
    case EventKind::AntipodalPole:
      what = "reaches the antipodal axis " + at;
      break;
    case EventKind::ArcLengthBudget: {
      if (spec.kappa == Kappa::Hyperbolic) {
        for (double y0 : gamma_asymptotes(spec)) {
          if (std::abs(t.location.y - y0) < 1e-2) {
            what = "diverges along the asymptote y=" + fmt(y0) + " of Gamma " + at;
            break;
          }
        }
      }
      const auto eq = equilibria(spec);
      if (what.empty() && !eq.empty() && std::hypot(t.location.x - eq.front().x0, t.location.y) < 1e-2)
        what = "spirals into the equilibrium x=" + fmt(eq.front().x0) + " " + at;
      if (what.empty()) what = "exhausts the arc-length budget at " + at;
      break;
    }
    case EventKind::MeridianCross:
      what = "crosses y=0 " + at;
      break;
  }
  return "no sphere: the orbit " + from + " " + what;
}

ProfileSample to_profile(const OrbitSample& o, double z, Eps eps, double s_shift) {
  return {s_shift + o.s, o.x, o.y, z, eps, o.yprime};
}

std::vector<ProfileSample> midpoints(const Orbit& o, const std::vector<double>& z, Eps eps, double s_shift,
                                     double z_shift) {
  std::vector<ProfileSample> out;
  for (const DenseSegment& g : o.segments) {
    const double s = 0.5 * (g.s0 + g.s_end);
    const State st = o.at(s);
    out.push_back({s_shift + s, st.x, st.y, z_shift + height_at(o, z, s), eps, o.derivative_at(s)(1)});
  }
  return out;
}

bool slice_case(const HFunction& f, Kappa k) { return k == Kappa::Spherical && f(1.0) == 0.0 && f(-1.0) == 0.0; }

// Two-arc gluing along turning circles starting at (x1, y=+1).
struct Glued {
  SurfaceProfile profile;
  std::vector<double> outer, inner, rise, fall;
  double mismatch = 0.0;
  std::optional<Orbit> first_a, first_b;
};

Glued glue_turning_arcs(const HFunction& f, Kappa k, double x1, int periods, const IntegratorConfig& cfg) {
  const Eps sigma = sphere_plane(f);
  const PlaneSpec a_spec{k, sigma, f}, b_spec{k, -sigma, f};
  Glued g;
  double z = 0.0, s_off = 0.0, x_start = x1;
  for (int p = 0; p < periods; ++p) {
    for (int half = 0; half < 2; ++half) {
      const PlaneSpec& sp = half == 0 ? a_spec : b_spec;
      const int delta = half == 0 ? 1 : -1;
      Orbit o = integrate_chart(sp, turning_chart_start(sp, x_start, delta, 1), cfg, kNoStop);
      if (o.terminal.kind != EventKind::Turning)
        throw NumericError("gluing failure: arc from the turning circle x=" + fmt(x_start) + " ended with " +
                           event_name(o.terminal.kind));
      if (o.crossings.size() != 1)
        throw NumericError("arc between turning circles crossed y=0 " + std::to_string(o.crossings.size()) + " times");
      const std::vector<double> zs = z_quadrature(o, z);
      ProfileArc arc{sp.eps, {}, {}};
      for (std::size_t i = 0; i < o.samples.size(); ++i) arc.samples.push_back(to_profile(o.samples[i], zs[i], sp.eps, s_off));
      arc.midpoints = midpoints(o, zs, sp.eps, s_off, 0.0);
      (half == 0 ? g.outer : g.inner).push_back(o.crossings.front().location.x);
      (half == 0 ? g.rise : g.fall).push_back(std::abs(zs.back() - z));
      g.mismatch = std::max(g.mismatch, std::abs(o.terminal.location.x - x1));
      z = zs.back();
      s_off += o.s_last();
      x_start = o.terminal.location.x;
      g.profile.arcs.push_back(std::move(arc));
      if (p == 0) (half == 0 ? g.first_a : g.first_b) = std::move(o);
    }
  }
  if (g.mismatch > kGluingTol)
    throw NumericError("gluing failure: turning radii differ from x1=" + fmt(x1) + " by " + fmt(g.mismatch));
  return g;
}

}  // namespace

const char* kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Unduloid: return "unduloid";
    case SurfaceKind::Nodoid: return "nodoid";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::MinimalSlice: return "minimal-slice";
    case SurfaceKind::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassAsSlice: return "pass-as-slice";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

std::optional<double> ClassificationReport::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars)
    if (k == name) return v;
  return std::nullopt;
}

std::vector<ProfileSample> SurfaceProfile::flatten() const {
  std::vector<ProfileSample> out;
  for (const ProfileArc& a : arcs) out.insert(out.end(), a.samples.begin(), a.samples.end());
  return out;
}

double SurfaceProfile::junction_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    const ProfileSample& p = arcs[i].samples.back();
    const ProfileSample& q = arcs[i + 1].samples.front();
    worst = std::max({worst, std::abs(p.x - q.x), std::abs(std::abs(p.y) - std::abs(q.y)), std::abs(p.z - q.z)});
  }
  return worst;
}

Eps sphere_plane(const HFunction& f) {
  const double h1 = f(1.0);
  if (h1 == 0.0) throw DomainError("H(1)=0: no orbit leaves the axis at (0,1)");
  return h1 > 0.0 ? Eps::Plus : Eps::Minus;
}

NecessaryCheck check_closed_necessary(const HFunction& f, Kappa k) {
  NecessaryCheck c;
  c.product = f(-1.0) * f(1.0);
  if (c.product > 0.0) {
    c.verdict = Verdict::Pass;
    c.detail = "H(-1)H(1) = " + fmt(c.product) + " > 0";
  } else if (k == Kappa::Spherical && c.product == 0.0) {
    c.verdict = Verdict::PassAsSlice;
    c.detail = "H(-1)H(1) = 0: only a horizontal slice can close";
  } else {
    c.verdict = Verdict::Fail;
    c.detail = "H(-1)H(1) = " + fmt(c.product) + " <= 0 (H(-1)=" + fmt(f(-1.0)) + ", H(1)=" + fmt(f(1.0)) + ")";
  }
  return c;
}

NecessaryCheck check_sphere_necessary(const HFunction& f, Kappa k) {
  NecessaryCheck c;
  if (k == Kappa::Hyperbolic) {
    const ClassReport r = class_membership(f, k);
    c.witness = r.inequality_witness;
    c.verdict = r.satisfies_h2r_inequality ? Verdict::Pass : Verdict::Fail;
    c.detail = std::string("min of 2|H(y)| - sqrt(1-y^2) is ") + fmt(r.inequality_margin) + " at y=" +
               fmt(*r.inequality_witness) + (r.satisfies_h2r_inequality ? " (strict inequality holds)" : " (strict inequality fails)");
    return c;
  }
  const int sum = multiplicity_sum(find_zeros(f));
  c.multiplicity_sum = sum;
  c.verdict = sum % 2 == 0 ? Verdict::Pass : Verdict::Fail;
  c.detail = "sum of zero multiplicities is " + std::to_string(sum) + (sum % 2 == 0 ? " (even)" : " (odd)");
  return c;
}

SphereData build_sphere(const HFunction& f, Kappa k, const IntegratorConfig& cfg) {
  if (slice_case(f, k)) throw ConstructionError("H(1)=H(-1)=0: the surface is a horizontal slice, nothing to integrate");
  const Eps eps = sphere_plane(f);
  const PlaneSpec spec{k, eps, f};
  const double s0 = cfg.seed_offset;

  Orbit top = integrate_chart(spec, pole_chart_seed(spec, 1, s0), cfg, kStopAtMeridian, 1);
  if (top.terminal.kind != EventKind::MeridianCross) throw ConstructionError(obstruction(spec, top, "from (0,1)"));
  if (!(value(eps) * f(-1.0) > 0.0))
    throw ConstructionError("no sphere: eps*H(-1) <= 0, no orbit of this plane ends at (0,-1)");
  Orbit bot = integrate_chart(spec, pole_chart_seed(spec, -1, s0), cfg, kStopAtMeridian, -1);
  if (bot.terminal.kind != EventKind::MeridianCross) throw ConstructionError(obstruction(spec, bot, "into (0,-1)"));

  SphereData d;
  const double xa = top.terminal.location.x, xb = bot.terminal.location.x;
  d.closure_defect = std::abs(xa - xb);
  d.x0 = xa;
  if (d.closure_defect > kGluingTol)
    throw ConstructionError("no sphere: the orbits from (0,1) and into (0,-1) meet y=0 at x=" + fmt(xa) + " and x=" + fmt(xb));

  // upper arc: exact pole, then the integrated orbit up to the equator
  const double zseed_top = f(1.0) * s0 * s0 / 2.0;
  const std::vector<double> zt = z_quadrature(top, zseed_top);
  ProfileArc upper{eps, {}, {}};
  upper.samples.push_back({0.0, 0.0, 1.0, 0.0, eps, 0.0});
  for (std::size_t i = 0; i < top.samples.size(); ++i) upper.samples.push_back(to_profile(top.samples[i], zt[i], eps, 0.0));
  upper.midpoints = midpoints(top, zt, eps, 0.0, 0.0);

  // lower arc: the backward orbit reversed, re-parametrised to continue s and z
  const std::vector<double> zb = z_quadrature(bot, 0.0);
  const double L_top = top.s_last();
  const double s_bot_end = bot.s_last();  // negative
  const double z_eq = zt.back();
  ProfileArc lower{eps, {}, {}};
  for (std::size_t i = bot.samples.size(); i-- > 0;) {
    const OrbitSample& o = bot.samples[i];
    lower.samples.push_back({L_top + (o.s - s_bot_end), o.x, o.y, z_eq + (zb[i] - zb.back()), eps, o.yprime});
  }
  lower.midpoints = midpoints(bot, zb, eps, L_top - s_bot_end, z_eq - zb.back());
  std::reverse(lower.midpoints.begin(), lower.midpoints.end());
  const ProfileSample& last = lower.samples.back();
  lower.samples.push_back({last.s + s0, 0.0, -1.0, last.z + f(-1.0) * s0 * s0 / 2.0, eps, 0.0});

  d.profile.arcs = {std::move(upper), std::move(lower)};
  d.profile.closed = true;

  bool mono = true;
  const auto flat = d.profile.flatten();
  for (std::size_t i = 1; i < flat.size(); ++i) {
    const bool junction = i == d.profile.arcs[0].samples.size();
    // both arcs end on y=0 up to the event localisation error
    if (junction ? flat[i].y > flat[i - 1].y + 1e-10 : !(flat[i].y < flat[i - 1].y)) mono = false;
    if (flat[i].x > 0.0 && !(flat[i].yprime < 0.0)) mono = false;
  }
  d.monotone_ok = mono;
  d.height = flat.back().z - flat.front().z;
  return d;
}

std::vector<CylinderData> build_cylinder(const HFunction& f, Kappa k, std::optional<Eps> eps) {
  std::vector<CylinderData> out;
  for (Eps e : {Eps::Plus, Eps::Minus}) {
    if (eps && *eps != e) continue;
    const PlaneSpec spec{k, e, f};
    for (const EquilibriumPoint& p : equilibria(spec)) out.push_back({p.x0, value(e) * f(0.0), e});
  }
  if (out.empty()) throw DomainError("no equilibrium: no vertical cylinder has this prescribed curvature");
  return out;
}

std::optional<double> turning_radius(const HFunction& f, Kappa k, double xi, const IntegratorConfig& cfg) {
  const Eps eps = sphere_plane(f);
  const PlaneSpec spec{k, eps, f};
  const Orbit o = integrate_chart(spec, {0.0, xi, value(eps) * kPi / 2.0}, cfg, kNoStop);
  if (o.terminal.kind != EventKind::Turning) return std::nullopt;
  return o.terminal.location.x;
}

ClassificationReport classify_initial(const HFunction& f, Kappa k, double xi, const IntegratorConfig& cfg) {
  ClassificationReport rep;
  rep.condition = class_membership(f, k);
  if (!rep.condition.admissible(k))
    throw InadmissibleError("H is not admissible for kappa=" + std::to_string(value(k)));
  if (slice_case(f, k)) {
    rep.kind = SurfaceKind::MinimalSlice;
    rep.diagnostics = "H(1)=H(-1)=0: horizontal slice";
    return rep;
  }
  if (!in_strip(k, xi)) throw DomainError("xi=" + fmt(xi) + " outside the strip");
  const Eps eps = sphere_plane(f);
  const PlaneSpec spec{k, eps, f};
  const double e0 = equilibria(spec).at(0).x0;
  const double x0 = build_sphere(f, k, cfg).x0;
  rep.scalars = {{"xi", xi}, {"e0", e0}, {"x0", x0}};

  if (std::abs(xi - e0) <= kVerdictTol) {
    rep.kind = SurfaceKind::Cylinder;
    rep.scalars.push_back({"radius", e0});
    rep.scalars.push_back({"mean_curvature", value(eps) * f(0.0)});
    rep.diagnostics = "xi is the equilibrium";
    return rep;
  }
  if (std::abs(xi - x0) <= kVerdictTol) {
    rep.kind = SurfaceKind::Sphere;
    rep.diagnostics = "xi is the equator of the sphere orbit";
    return rep;
  }
  if (xi < x0) {
    const ClosureResult c = detect_closed(spec, xi, cfg);
    if (const auto* closed = std::get_if<ClosedOrbit>(&c)) {
      rep.kind = SurfaceKind::Unduloid;
      rep.scalars.push_back({"period", closed->period});
      rep.scalars.push_back({"pitch", closed->pitch});
      rep.diagnostics = "closed orbit around the equilibrium";
    } else {
      const Event& t = std::get<OpenOrbit>(c).terminal;
      rep.kind = SurfaceKind::Indeterminate;
      rep.diagnostics = std::string("inconsistent: xi < x0 but the orbit is not closed (terminal ") +
                        event_name(t.kind) + " at x=" + fmt(t.location.x) + ", y=" + fmt(t.location.y) + ")";
    }
    return rep;
  }
  const Orbit o = integrate_chart(spec, {0.0, xi, value(eps) * kPi / 2.0}, cfg, kNoStop);
  if (o.terminal.kind != EventKind::Turning || !(o.terminal.location.x > cfg.pole_tol)) {
    rep.kind = SurfaceKind::Indeterminate;
    rep.diagnostics = std::string("orbit through xi ended with ") + event_name(o.terminal.kind) +
                      " at x=" + fmt(o.terminal.location.x) + ", y=" + fmt(o.terminal.location.y);
    return rep;
  }
  const double x1 = o.terminal.location.x;
  rep.scalars.push_back({"x1", x1});
  if (k == Kappa::Spherical && std::abs(x1 - kPi / 2.0) <= kTorusTol) {
    rep.kind = SurfaceKind::Torus;
    rep.diagnostics = "turning radius is pi/2";
  } else {
    rep.kind = SurfaceKind::Nodoid;
    rep.diagnostics = "orbit outside the sphere orbit ends on a turning circle";
  }
  return rep;
}

UnduloidData build_unduloid(const HFunction& f, Kappa k, double xi, int periods, const IntegratorConfig& cfg) {
  if (periods < 1) throw DomainError("periods must be >= 1");
  const ClassificationReport rep = classify_initial(f, k, xi, cfg);
  if (rep.kind != SurfaceKind::Unduloid)
    throw ClassificationMismatch(std::string("requested unduloid, verdict is ") + kind_name(rep.kind));
  const Eps eps = sphere_plane(f);
  const PlaneSpec spec{k, eps, f};
  const int d0 = sgn(vector_field(spec, xi, 0.0)(1));
  int returns = 0;
  const Orbit o = integrate_chart(spec, {0.0, xi, value(eps) * kPi / 2.0}, cfg,
                                  [&](const Event& e, int) { return e.direction == d0 && ++returns == periods; });
  if (o.terminal.kind != EventKind::MeridianCross)
    throw NumericError(std::string("closed orbit lost after ") + std::to_string(returns) + " periods: " +
                       event_name(o.terminal.kind));
  std::vector<double> ret;
  for (const Event& e : o.crossings)
    if (e.direction == d0) ret.push_back(e.location.s);
  const std::vector<double> z = z_quadrature(o, 0.0);

  UnduloidData d;
  d.xi = xi;
  d.periods = periods;
  d.period = ret.front();
  d.pitch = height_at(o, z, d.period);
  d.x_min = std::numeric_limits<double>::infinity();
  d.x_max = -d.x_min;
  for (const OrbitSample& s : o.samples) {
    if (s.s > d.period) break;
    d.x_min = std::min(d.x_min, s.x);
    d.x_max = std::max(d.x_max, s.x);
  }
  // consecutive periods must coincide after a shift by (T, pitch)
  double dev = std::abs(o.terminal.location.x - xi);
  const int n = 200;
  for (int p = 0; p + 1 < periods; ++p) {
    for (int i = 0; i <= n; ++i) {
      const double s = p * d.period + d.period * i / n;
      const State a = o.at(s), b = o.at(std::min(s + d.period, o.s_last()));
      const double dz = height_at(o, z, std::min(s + d.period, o.s_last())) - height_at(o, z, s) - d.pitch;
      dev = std::max({dev, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(dz)});
    }
  }
  d.translation_defect = dev;
  ProfileArc arc{eps, {}, {}};
  for (std::size_t i = 0; i < o.samples.size(); ++i) arc.samples.push_back(to_profile(o.samples[i], z[i], eps, 0.0));
  arc.midpoints = midpoints(o, z, eps, 0.0, 0.0);
  d.profile.arcs.push_back(std::move(arc));
  return d;
}

NodoidData build_nodoid(const HFunction& f, Kappa k, double xi, int periods, const IntegratorConfig& cfg) {
  if (periods < 1) throw DomainError("periods must be >= 1");
  const ClassificationReport rep = classify_initial(f, k, xi, cfg);
  if (rep.kind != SurfaceKind::Nodoid)
    throw ClassificationMismatch(std::string("requested nodoid, verdict is ") + kind_name(rep.kind));
  NodoidData d;
  d.xi = xi;
  d.x1 = *rep.scalar("x1");
  d.periods = periods;
  Glued g = glue_turning_arcs(f, k, d.x1, periods, cfg);
  d.r = g.inner.front();
  d.h1 = g.rise.front();
  d.h2 = g.fall.front();
  d.translation = std::abs(d.h1 - d.h2);
  d.torus_like_closure = d.translation < 1e-8;
  d.gluing_mismatch = g.mismatch;
  d.profile = std::move(g.profile);
  return d;
}

double find_torus_parameter(const HFunction& f, const IntegratorConfig& cfg) {
  const Kappa k = Kappa::Spherical;
  if (!class_membership(f, k).admissible(k)) throw InadmissibleError("H is not admissible for kappa=1");
  const double x0 = build_sphere(f, k, cfg).x0;
  auto g = [&](double xi) {
    const auto x1 = turning_radius(f, k, xi, cfg);
    return x1 ? *x1 - kPi / 2.0 : std::numeric_limits<double>::quiet_NaN();
  };
  const double lo = x0 + 1e-4, hi = kPi - 1e-4;
  constexpr int n = 32;
  std::vector<std::pair<double, double>> table;
  for (int i = 0; i <= n; ++i) {
    const double xi = lo + (hi - lo) * i / n;
    table.push_back({xi, g(xi)});
  }
  for (int i = 0; i < n; ++i) {
    const double ga = table[i].second, gb = table[i + 1].second;
    if (std::isfinite(ga) && std::isfinite(gb) && sgn(ga) * sgn(gb) <= 0) {
      const double xi = bisect(g, table[i].first, table[i + 1].first, 1e-8);
      spdlog::debug("torus parameter {} (bracket {}..{})", xi, table[i].first, table[i + 1].first);
      return xi;
    }
  }
  std::string msg = "x1(xi) - pi/2 has no sign change on (x0, pi):";
  for (const auto& [xi, v] : table) msg += " [" + fmt(xi) + ": " + fmt(v) + "]";
  throw NumericError(msg);
}

TorusData build_torus(const HFunction& f, const IntegratorConfig& cfg) {
  const Kappa k = Kappa::Spherical;
  TorusData d;
  d.xi_star = find_torus_parameter(f, cfg);
  const auto x1 = turning_radius(f, k, d.xi_star, cfg);
  if (!x1) throw NumericError("orbit through the torus parameter has no turning circle");
  d.x1 = *x1;
  Glued g = glue_turning_arcs(f, k, d.x1, 1, cfg);
  const ProfileSample& first = g.profile.arcs.front().samples.front();
  const ProfileSample& last = g.profile.arcs.back().samples.back();
  d.closure_defect = std::max({std::abs(last.x - first.x), std::abs(last.y - first.y), std::abs(last.z - first.z)});

  // the second arc is the first one reflected by x -> pi - x and traversed backwards
  const Orbit& a = *g.first_a;
  const Orbit& b = *g.first_b;
  const double La = a.s_last(), L = std::min(La, b.s_last());
  double mirror = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = L * i / 400;
    const State pb = b.at(t), pa = a.at(La - t);
    mirror = std::max({mirror, std::abs(pb.x - (kPi - pa.x)), std::abs(pb.y - pa.y)});
  }
  d.mirror_defect = mirror;
  d.profile = std::move(g.profile);
  d.profile.closed = true;
  return d;
}

}  // namespace hsurf
