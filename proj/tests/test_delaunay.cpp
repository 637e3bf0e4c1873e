#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "hsurf/delaunay.hpp"

using namespace hsurf;

namespace {

constexpr double kPi = std::numbers::pi;

bool contains(const std::string& s, const char* what) { return s.find(what) != std::string::npos; }

double worst_residual(const SurfaceProfile& p, const HFunction& f, Kappa k) {
  double w = 0;
  for (const ProfileArc& a : p.arcs) {
    w = std::max(w, mean_residual(a.samples, f, k));
    w = std::max(w, mean_residual(a.midpoints, f, k));
  }
  return w;
}

}  // namespace

TEST_CASE("CMC-1 spheres match the closed-form equator") {
  const HFunction one = parse_h("1");
  const SphereData h = build_sphere(one, Kappa::Hyperbolic);
  CHECK(std::abs(h.x0 - std::log(3.0)) <= 1e-6);
  CHECK(h.closure_defect <= 1e-6);
  CHECK(h.monotone_ok);
  // independent oracle: the first integral vanishes on the sphere orbit
  for (const ProfileSample& s : h.profile.flatten())
    CHECK(std::abs(std::sqrt(1 - s.y * s.y) * std::sinh(s.x) - 2 * (std::cosh(s.x) - 1)) <= 1e-8);

  const SphereData p = build_sphere(one, Kappa::Spherical);
  CHECK(std::abs(p.x0 - 2 * std::atan(0.5)) <= 1e-6);
  for (const ProfileSample& s : p.profile.flatten())
    CHECK(std::abs(std::sqrt(1 - s.y * s.y) * std::sin(s.x) + 2 * std::cos(s.x) - 2) <= 1e-8);
}

TEST_CASE("sphere profile endpoints and heights") {
  const SphereData d = build_sphere(parse_h("1+y^2"), Kappa::Hyperbolic);
  const auto flat = d.profile.flatten();
  CHECK(flat.front().x == 0.0);
  CHECK(flat.back().x == 0.0);
  CHECK(flat.front().y == 1.0);
  CHECK(flat.back().y == -1.0);
  CHECK(d.profile.closed);
  CHECK(d.height > 0);
  CHECK(d.profile.junction_defect() <= 1e-6);
}

TEST_CASE("defining equation residual on built profiles") {
  const HFunction f = parse_h("1+y^2");
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical}) {
    CAPTURE(value(k));
    CHECK(worst_residual(build_sphere(f, k).profile, f, k) <= 1e-7);
    const double x0 = build_sphere(f, k).x0;
    const double e0 = build_cylinder(f, k, Eps::Plus).front().radius;
    CHECK(worst_residual(build_unduloid(f, k, 0.5 * (e0 + x0), 2).profile, f, k) <= 1e-7);
    CHECK(worst_residual(build_nodoid(f, k, x0 + 0.3, 2).profile, f, k) <= 1e-7);
  }
}

TEST_CASE("necessary conditions below the critical value") {
  for (const char* h : {"0.4", "0.5"}) {
    CAPTURE(h);
    const HFunction f = parse_h(h);
    const NecessaryCheck c = check_sphere_necessary(f, Kappa::Hyperbolic);
    CHECK(c.verdict == Verdict::Fail);
    REQUIRE(c.witness);
    CHECK(std::abs(*c.witness) < 1e-6);
    try {
      build_sphere(f, Kappa::Hyperbolic);
      FAIL("a sphere was built");
    } catch (const ConstructionError& e) {
      CHECK((contains(e.what(), "asymptote") || contains(e.what(), "equilibrium")));
    }
  }
}

TEST_CASE("parity condition in S2xR") {
  const NecessaryCheck a = check_sphere_necessary(parse_h("y^2-0.25"), Kappa::Spherical);
  CHECK(a.verdict == Verdict::Pass);
  CHECK(a.multiplicity_sum == 2);
  const NecessaryCheck b = check_sphere_necessary(parse_h("y+0.5"), Kappa::Spherical);
  CHECK(b.verdict == Verdict::Fail);
  CHECK(b.multiplicity_sum == 1);
  CHECK(check_closed_necessary(parse_h("y^2-1"), Kappa::Spherical).verdict == Verdict::PassAsSlice);
  CHECK(check_closed_necessary(parse_h("y^2-1"), Kappa::Hyperbolic).verdict == Verdict::Fail);
  CHECK(check_closed_necessary(parse_h("y"), Kappa::Spherical).verdict == Verdict::Fail);
}

TEST_CASE("sphere orbits have strictly decreasing angle") {
  const char* corpus[] = {"1+y^2", "2*cos(y)", "2*cos(y)+y^4", "1", "0.75", "exp(y^2)", "cosh(y)"};
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical})
    for (const char* h : corpus) {
      CAPTURE(h);
      const SphereData d = build_sphere(parse_h(h), k);
      CHECK(d.monotone_ok);
    }
  // y^2-0.25 changes sign; its sphere in S2xR still has monotone angle
  CHECK(build_sphere(parse_h("y^2-0.25"), Kappa::Spherical).monotone_ok);
}

TEST_CASE("cylinders") {
  const auto h = build_cylinder(parse_h("1"), Kappa::Hyperbolic);
  REQUIRE(h.size() == 1);
  CHECK(h[0].radius == doctest::Approx(std::atanh(0.5)));
  CHECK(h[0].eps == Eps::Plus);
  CHECK(build_cylinder(parse_h("1"), Kappa::Spherical).size() == 2);
  CHECK_THROWS_AS(build_cylinder(parse_h("0.4"), Kappa::Hyperbolic), DomainError);
}

TEST_CASE("classification") {
  const HFunction one = parse_h("1");
  CHECK(classify_initial(one, Kappa::Hyperbolic, 0.8).kind == SurfaceKind::Unduloid);
  CHECK(classify_initial(one, Kappa::Hyperbolic, 0.5493061).kind == SurfaceKind::Cylinder);
  CHECK(classify_initial(one, Kappa::Hyperbolic, std::log(3.0)).kind == SurfaceKind::Sphere);
  CHECK(classify_initial(one, Kappa::Hyperbolic, 1.5).kind == SurfaceKind::Nodoid);
  CHECK(classify_initial(one, Kappa::Spherical, 2.0344439).kind == SurfaceKind::Torus);
  CHECK(classify_initial(one, Kappa::Spherical, 1.6).kind == SurfaceKind::Nodoid);
  CHECK(classify_initial(parse_h("y^2-1"), Kappa::Spherical, 1.0).kind == SurfaceKind::MinimalSlice);
  CHECK_THROWS_AS(classify_initial(parse_h("0.4"), Kappa::Hyperbolic, 1.0), InadmissibleError);
  CHECK_THROWS_AS(build_unduloid(one, Kappa::Hyperbolic, 1.5, 1), ClassificationMismatch);
  CHECK_THROWS_AS(build_nodoid(one, Kappa::Hyperbolic, 0.8, 1), ClassificationMismatch);
}

TEST_CASE("unduloid periods approach the linearized period near the equilibrium") {
  const HFunction one = parse_h("1");
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical}) {
    const double e0 = build_cylinder(one, k, Eps::Plus).front().radius;
    const double limit = 2 * kPi / std::sqrt(k == Kappa::Hyperbolic ? 3.0 : 5.0);
    const double p2 = build_unduloid(one, k, e0 - 1e-2, 1).period;
    const double p3 = build_unduloid(one, k, e0 - 1e-3, 1).period;
    CHECK(std::abs(p2 - limit) <= 1e-2 * limit);
    CHECK(std::abs(p3 - limit) <= 1e-3 * limit);
  }
}

TEST_CASE("unduloids translate by their pitch") {
  const UnduloidData d = build_unduloid(parse_h("1+y^2"), Kappa::Hyperbolic, 0.5, 3);
  CHECK(d.translation_defect <= 1e-8);
  CHECK(d.x_min < d.x_max);
  CHECK(d.pitch > 0);
  const auto flat = d.profile.flatten();
  CHECK(flat.back().z - flat.front().z == doctest::Approx(3 * d.pitch).epsilon(1e-8));
}

TEST_CASE("nodoids") {
  const NodoidData d = build_nodoid(parse_h("1+y^2"), Kappa::Hyperbolic, 1.5, 3);
  CHECK(d.gluing_mismatch <= kGluingTol);
  CHECK(d.profile.junction_defect() <= 1e-6);
  CHECK(d.r < d.x1);
  CHECK_FALSE(d.torus_like_closure);
  int minus = 0;
  for (const ProfileArc& a : d.profile.arcs) {
    if (a.eps != Eps::Minus) continue;
    ++minus;
    for (std::size_t i = 1; i < a.samples.size(); ++i) CHECK(a.samples[i].z <= a.samples[i - 1].z);
  }
  CHECK(minus >= 3);
}

TEST_CASE("CMC-1 torus in S2xR") {
  const HFunction one = parse_h("1");
  const double xi = find_torus_parameter(one);
  CHECK(std::abs(xi - (kPi - std::atan(2.0))) <= 1e-4);
  const TorusData t = build_torus(one);
  CHECK(t.closure_defect <= 1e-6);
  CHECK(t.mirror_defect <= 1e-7);
  CHECK(t.x1 == doctest::Approx(kPi / 2).epsilon(1e-6));
  CHECK_THROWS_AS(find_torus_parameter(parse_h("y+0.5")), InadmissibleError);
}
