#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hsurf/orbit.hpp"

using namespace hsurf;

TEST_CASE("kappa trigonometry") {
  CHECK(ktrig(Trig::Sin, Kappa::Hyperbolic, 0.7) == std::sinh(0.7));
  CHECK(ktrig(Trig::Cos, Kappa::Spherical, 0.7) == std::cos(0.7));
  CHECK(ktrig(Trig::Arctan, Kappa::Hyperbolic, 0.5) == std::atanh(0.5));
  CHECK_THROWS_AS(ktrig(Trig::Arctan, Kappa::Hyperbolic, 1.0), DomainError);
  CHECK_THROWS_AS(ktrig(Trig::Cot, Kappa::Hyperbolic, 0.0), DomainError);
  CHECK_THROWS_AS(ktrig(Trig::Cot, Kappa::Spherical, 0.0), DomainError);
  // templated on the scalar
  CHECK(ktrig(Trig::Tan, Kappa::Spherical, 0.25f) == doctest::Approx(std::tan(0.25f)));
}

TEST_CASE("property: surface points lie on the quadric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0.0, 2 * std::numbers::pi), zz(-5, 5);
  std::uniform_real_distribution<double> xh(0.0, 8.0), xs(0.0, std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const double t = th(rng), z = zz(rng);
    const auto ph = surface_point(xh(rng), z, t, Kappa::Hyperbolic);
    const auto ps = surface_point(xs(rng), z, t, Kappa::Spherical);
    CHECK(quadric_residual(ph, Kappa::Hyperbolic) <= 1e-14);
    CHECK(quadric_residual(ps, Kappa::Spherical) <= 1e-14);
    CHECK(ph(2) >= 1.0);
    CHECK(ph(3) == z);
  }
  CHECK_THROWS_AS(surface_point(-0.1, 0.0, 0.0, Kappa::Hyperbolic), DomainError);
  CHECK_THROWS_AS(surface_point(3.2, 0.0, 0.0, Kappa::Spherical), DomainError);
}

TEST_CASE("model projections") {
  // hyperbolic distance x maps to Euclidean radius tanh(x/2) in the disk
  const auto d = project_model(embed_profile(1.3, 0.5, Kappa::Hyperbolic), Model::PoincareDisk, Kappa::Hyperbolic);
  CHECK(d(0) == doctest::Approx(std::tanh(0.65)).epsilon(1e-14));
  CHECK(d(2) == 0.5);
  // spherical distance x maps to tan(x/2) under stereographic projection from the antipode
  const auto s = project_model(embed_profile(1.3, 0.0, Kappa::Spherical), Model::Stereographic, Kappa::Spherical);
  CHECK(s(0) == doctest::Approx(std::tan(0.65)).epsilon(1e-14));
  CHECK_THROWS_AS(project_model(embed_profile(1.0, 0.0, Kappa::Spherical), Model::PoincareDisk, Kappa::Spherical),
                  DomainError);
  CHECK_THROWS_AS(project_model(embed_profile(std::numbers::pi, 0.0, Kappa::Spherical), Model::Stereographic,
                                Kappa::Spherical),
                  DomainError);
}

TEST_CASE("principal curvatures on the equator of the CMC-1 sphere in H2xR") {
  const double x = std::log(3.0);
  const PlaneSpec spec{Kappa::Hyperbolic, Eps::Plus, parse_h("1")};
  const double yp = vector_field(spec, x, 0.0)(1);
  const auto [k1, k2] = principal_curvatures(x, 0.0, yp, Eps::Plus, Kappa::Hyperbolic);
  CHECK(k1 + k2 == doctest::Approx(2.0).epsilon(1e-14));
  // rotational curvature of a parallel at distance ln 3 is coth(ln 3) = 5/4
  CHECK(k2 == doctest::Approx(1.25).epsilon(1e-14));
  CHECK_THROWS_AS(principal_curvatures(0.0, 0.0, 0.0, Eps::Plus, Kappa::Hyperbolic), DomainError);
  CHECK_THROWS_AS(principal_curvatures(1.0, 1.0, 0.0, Eps::Plus, Kappa::Hyperbolic), DomainError);
}

TEST_CASE("arc-length invariant from finite differences") {
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical}) {
    const PlaneSpec spec{k, Eps::Plus, parse_h("1+y^2")};
    const Orbit o = integrate(spec, {0.0, 0.6, 0.0}, {}, {EventKind::MeridianCross}, 1);
    const double h = 1e-3;
    for (double s = o.s_first() + 3 * h; s < o.s_last() - 3 * h; s += 0.01) {
      const double xp = (-o.at(s + 2 * h).x + 8 * o.at(s + h).x - 8 * o.at(s - h).x + o.at(s - 2 * h).x) / (12 * h);
      const double y = o.at(s).y;
      const double zp = std::sqrt(1 - y * y);
      CHECK(std::abs(xp * xp + zp * zp - 1.0) <= 1e-8);
    }
  }
}
