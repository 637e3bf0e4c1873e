#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hsurf/orbit.hpp"

using namespace hsurf;

namespace {

// Conserved quantity for constant H0 = eps H, derived independently of the library.
double oracle_integral(Kappa k, double h0, double x, double y) {
  const double u = std::sqrt(1 - y * y);
  return k == Kappa::Hyperbolic ? u * std::sinh(x) - 2 * h0 * std::cosh(x) : u * std::sin(x) + 2 * h0 * std::cos(x);
}

}  // namespace

TEST_CASE("config validation") {
  IntegratorConfig c;
  CHECK_NOTHROW(c.validate());
  c.rtol = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.s_budget = -1;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("first integral is conserved for constant H") {
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical})
    for (double xi : {0.3, 0.7, 1.2}) {
      const PlaneSpec spec{k, Eps::Plus, parse_h("1")};
      const Orbit o = integrate(spec, {0.0, xi, 0.0}, {}, {EventKind::Turning}, 1);
      REQUIRE(o.samples.size() > 10);
      const double f0 = oracle_integral(k, 1.0, xi, 0.0);
      double worst = 0;
      for (const OrbitSample& s : o.samples) worst = std::max(worst, std::abs(oracle_integral(k, 1.0, s.x, s.y) - f0));
      CAPTURE(xi);
      CHECK(worst <= 1e-8);
      // the library helper differs from the oracle by the constant 2 H0 in H2
      const double shift = k == Kappa::Hyperbolic ? 2.0 : 0.0;
      CHECK(first_integral_cmc(k, 1.0, 0.4, 0.2) == doctest::Approx(oracle_integral(k, 1.0, 0.4, 0.2) + shift));
    }
}

TEST_CASE("pole seeds follow the axis expansion") {
  const PlaneSpec spec{Kappa::Hyperbolic, Eps::Plus, parse_h("1+y^2")};
  const State s = seed_pole(spec, 1, 1e-4);
  CHECK(s.x == 1e-4);
  CHECK(s.y == doctest::Approx(1 - 2e-8).epsilon(1e-15));
  CHECK_THROWS_AS(seed_pole({Kappa::Hyperbolic, Eps::Minus, parse_h("1")}, 1, 1e-4), DomainError);
  CHECK_THROWS_AS(seed_pole({Kappa::Spherical, Eps::Plus, parse_h("y^2-1")}, 1, 1e-4), DomainError);
  CHECK_NOTHROW(seed_pole({Kappa::Spherical, Eps::Plus, parse_h("y^2+1")}, -1, 1e-4));
  const State t = seed_turning(spec, 1.0, -1, 1e-3);
  CHECK(t.x == doctest::Approx(1 - 1e-3));
  CHECK(t.y == doctest::Approx(-1 + 2 * 4 * 1e-6));
}

TEST_CASE("terminal events") {
  // CMC-1 sphere orbit in H2xR leaves the pole and meets y=0 at ln 3
  const PlaneSpec h1{Kappa::Hyperbolic, Eps::Plus, parse_h("1")};
  const Orbit a = integrate_chart(h1, pole_chart_seed(h1, 1, 1e-4), {}, [](const Event&, int) { return true; });
  CHECK(a.terminal.kind == EventKind::MeridianCross);
  CHECK(a.terminal.location.x == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(a.terminal.direction == -1);

  // without the meridian stop it runs into the opposite pole; that end is unstable, so the
  // orbit may register a turning circle of tiny radius instead of the pole itself
  const Orbit b = integrate_chart(h1, pole_chart_seed(h1, 1, 1e-4), {}, [](const Event&, int) { return false; });
  CHECK((b.terminal.kind == EventKind::PoleReached || b.terminal.kind == EventKind::Turning));
  CHECK(b.terminal.location.x < 1e-4);
  CHECK(b.terminal.location.y == doctest::Approx(-1.0).epsilon(1e-6));

  // beyond the sphere the orbit turns
  const PlaneSpec f{Kappa::Hyperbolic, Eps::Plus, parse_h("1+y^2")};
  const Orbit c = integrate(f, {0.0, 1.5, 0.0}, {}, {}, 1);
  CHECK(c.terminal.kind == EventKind::Turning);
  CHECK(std::abs(c.terminal.location.y) == doctest::Approx(1.0));

  // below the critical value the orbit runs off along an asymptote
  const PlaneSpec low{Kappa::Hyperbolic, Eps::Plus, parse_h("0.3")};
  IntegratorConfig cfg;
  cfg.s_budget = 20;
  const Orbit d = integrate_chart(low, pole_chart_seed(low, 1, 1e-4), cfg, [](const Event&, int) { return true; });
  CHECK(d.terminal.kind == EventKind::ArcLengthBudget);
  CHECK(d.terminal.location.y == doctest::Approx(0.8).epsilon(1e-3));

  // starting on the equilibrium returns no samples
  const Orbit e = integrate(h1, {0.0, std::atanh(0.5), 0.0}, {}, {}, 1);
  CHECK(e.samples.empty());
  CHECK(e.terminal.kind == EventKind::EquilibriumApproach);
}

TEST_CASE("dense output slope matches the field at step midpoints") {
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical})
    for (double xi : {0.3, 0.9, 1.5}) {
      const PlaneSpec spec{k, Eps::Plus, parse_h("1+y^2")};
      const IntegratorConfig cfg;
      const Orbit o = integrate(spec, {0.0, xi, 0.0}, cfg, {}, 1);
      for (const DenseSegment& g : o.segments) {
        const double s = g.s0 + 0.5 * (g.s_end - g.s0);
        const State st = o.at(s);
        if (std::abs(st.y) >= 1.0) continue;
        const Eigen::Vector2d d = o.derivative_at(s), f = vector_field(spec, st.x, st.y);
        const double tol = 10 * cfg.rtol * (1 + std::max(std::abs(st.x), std::abs(st.y)));
        CHECK((d - f).cwiseAbs().maxCoeff() <= tol);
      }
    }
}

TEST_CASE("property: even H gives orbits symmetric under (x(-s), -y(-s))") {
  std::mt19937_64 rng(5);
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical})
    for (const char* h : {"1+y^2", "2*cos(y)+y^4", "0.7", "exp(y^2)"}) {
      const PlaneSpec spec{k, Eps::Plus, parse_h(h)};
      std::uniform_real_distribution<double> ux(0.2, 1.4);
      for (int trial = 0; trial < 4; ++trial) {
        const double xi = ux(rng);
        const Orbit f = integrate(spec, {0.0, xi, 0.0}, {}, {EventKind::MeridianCross}, 1);
        const Orbit b = integrate(spec, {0.0, xi, 0.0}, {}, {EventKind::MeridianCross}, -1);
        if (f.samples.empty()) continue;
        const double L = std::min(f.s_last(), -b.s_last());
        double worst = 0;
        for (int i = 0; i <= 200; ++i) {
          const double s = L * i / 200.0;
          const State p = f.at(s), q = b.at(-s);
          worst = std::max({worst, std::abs(p.x - q.x), std::abs(p.y + q.y)});
        }
        CAPTURE(h);
        CAPTURE(xi);
        CHECK(worst <= 1e-8);
      }
    }
}

TEST_CASE("height quadrature matches a fine Simpson rule on the dense output") {
  const PlaneSpec spec{Kappa::Spherical, Eps::Plus, parse_h("1+y^2")};
  const Orbit o = integrate(spec, {0.0, 0.5, 0.0}, {}, {EventKind::MeridianCross}, 1);
  const std::vector<double> z = z_quadrature(o, 0.0);
  REQUIRE(z.size() == o.samples.size());
  const int n = 20000;
  const double a = o.s_first(), b = o.s_last(), h = (b - a) / n;
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    const double y = o.at(a + i * h).y;
    acc += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * std::sqrt(1 - y * y);
  }
  CHECK(z.back() == doctest::Approx(acc * h / 3).epsilon(1e-9));
  CHECK(height_at(o, z, b) == doctest::Approx(z.back()).epsilon(1e-12));
}

TEST_CASE("closed orbits around the equilibrium") {
  for (Kappa k : {Kappa::Hyperbolic, Kappa::Spherical}) {
    const PlaneSpec spec{k, Eps::Plus, parse_h("1")};
    const double e0 = equilibria(spec)[0].x0;
    const ClosureResult r = detect_closed(spec, e0 - 0.1);
    REQUIRE(std::holds_alternative<ClosedOrbit>(r));
    const ClosedOrbit& c = std::get<ClosedOrbit>(r);
    CHECK(std::abs(c.return_x - (e0 - 0.1)) <= kClosureTol);
    CHECK(c.pitch > 0);
  }
  const PlaneSpec f{Kappa::Hyperbolic, Eps::Plus, parse_h("1+y^2")};
  CHECK(std::holds_alternative<OpenOrbit>(detect_closed(f, 1.5)));
}
