#include "hsurf/phaseplane.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hsurf {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_u(double y) { return std::sqrt(std::max(0.0, 1.0 - y * y)); }

}  // namespace

double strip_end(Kappa k) { return k == Kappa::Spherical ? kPi : std::numeric_limits<double>::infinity(); }

bool in_strip(Kappa k, double x) { return x > 0.0 && x < strip_end(k); }

Eigen::Vector2d vector_field(const PlaneSpec& spec, double x, double y) {
  if (!in_strip(spec.kappa, x)) throw DomainError("x outside the open strip");
  if (!(std::abs(y) <= 1.0)) throw DomainError("|y| > 1");
  if (std::abs(y) == 1.0) return {y, 0.0};
  const double u = unit_u(y);
  const double e = value(spec.eps);
  return {y, (1.0 - y * y) * ktrig(Trig::Cot, spec.kappa, x) - 2.0 * e * spec.f(y) * u};
}

std::optional<double> gamma_x(const PlaneSpec& spec, double y) {
  if (!(std::abs(y) < 1.0)) throw DomainError("gamma_x needs |y| < 1");
  const double u = unit_u(y);
  const double h = value(spec.eps) * spec.f(y);
  if (spec.kappa == Kappa::Spherical) return std::atan2(u, 2.0 * h);
  if (!(h > 0.0)) return std::nullopt;
  const double a = u / (2.0 * h);
  if (!(a < 1.0)) return std::nullopt;
  return std::atanh(a);
}

std::vector<double> gamma_asymptotes(const PlaneSpec& spec) {
  if (spec.kappa != Kappa::Hyperbolic) throw DomainError("Gamma has no asymptotes in S2 x R");
  using namespace ast;
  // 1 - y^2 - 4H^2 vanishes where sqrt(1-y^2) = 2|H|; keep the eps-branch
  const HAst q = sub(sub(c(1.0), pow(y(), 2)), mul(c(4.0), pow(spec.f.ast(), 2)));
  std::vector<double> out;
  for (const ZeroRecord& z : find_roots(q)) {
    if (std::abs(z.y0) >= 1.0) continue;
    if (value(spec.eps) * spec.f(z.y0) > 0.0) out.push_back(z.y0);
  }
  return out;
}

GammaCurve gamma_curve(const PlaneSpec& spec) {
  GammaCurve g;
  std::vector<double> breaks{-1.0, 1.0};
  for (const ZeroRecord& z : spec.f.zeros()) {
    if (std::abs(z.y0) < 1.0) {
      g.junctions.push_back({z.y0, spec.kappa == Kappa::Spherical && z.sign_change});
      if (spec.kappa == Kappa::Hyperbolic) breaks.push_back(z.y0);
    }
  }
  if (spec.kappa == Kappa::Hyperbolic) {
    g.asymptote_ys = gamma_asymptotes(spec);
    breaks.insert(breaks.end(), g.asymptote_ys.begin(), g.asymptote_ys.end());
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    if (gamma_x(spec, mid)) g.branches.push_back({breaks[i], breaks[i + 1]});
  }
  return g;
}

std::vector<EquilibriumPoint> equilibria(const PlaneSpec& spec) {
  const double h0 = value(spec.eps) * spec.f(0.0);
  const double k = value(spec.kappa);
  const double h00 = spec.f(0.0);
  const Stability st = k + 4.0 * h00 * h00 > 0.0 ? Stability::CenterCandidate : Stability::Degenerate;
  if (spec.kappa == Kappa::Spherical) return {{std::atan2(1.0, 2.0 * h0), spec.eps, st}};
  if (!(2.0 * h0 > 1.0)) return {};
  return {{std::atanh(1.0 / (2.0 * h0)), spec.eps, st}};
}

double Linearization::period() const {
  const double w = std::abs(eigenvalues(0).imag());
  if (!center_candidate || w == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * kPi / w;
}

Linearization linearization(const PlaneSpec& spec, const EquilibriumPoint& e) {
  (void)e;  // the matrix depends only on H(0) once H'(0) = 0
  const double d0 = spec.f.derivative(0.0);
  if (std::abs(d0) > 1e-9) throw DomainError("linearization needs H'(0)=0");
  const double h0 = spec.f(0.0);
  const double c = value(spec.kappa) + 4.0 * h0 * h0;
  Linearization L;
  L.matrix << 0.0, 1.0, -c, 0.0;
  Eigen::EigenSolver<Eigen::Matrix2d> solver(L.matrix, false);
  L.eigenvalues = solver.eigenvalues();
  L.center_candidate = c > 0.0;
  return L;
}

RegionTag monotonicity(const PlaneSpec& spec, double x, double y) {
  if (!in_strip(spec.kappa, x)) throw DomainError("x outside the open strip");
  if (y == 0.0 || !(std::abs(y) < 1.0)) throw DomainError("monotonicity needs 0 < |y| < 1");
  const std::optional<double> g = gamma_x(spec, y);
  const double gx = g ? *g : std::numeric_limits<double>::infinity();
  if (std::abs(x - gx) <= 1e-12 * (1.0 + x)) throw DomainError("point lies on Gamma");
  const bool right = x > gx;
  if (y > 0.0) return right ? RegionTag{Region::L1, 1, -1} : RegionTag{Region::L4, 1, 1};
  return right ? RegionTag{Region::L2, -1, -1} : RegionTag{Region::L3, -1, 1};
}

}  // namespace hsurf
