#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "hsurf/errors.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

enum class Eps : int { Minus = -1, Plus = 1 };

inline int value(Eps e) { return static_cast<int>(e); }
inline Eps operator-(Eps e) { return e == Eps::Plus ? Eps::Minus : Eps::Plus; }
Eps eps_from_int(int e);

enum class Trig { Sin, Cos, Tan, Cot, Arctan };

template <typename Scalar>
Scalar ktrig(Trig kind, Kappa k, Scalar t) {
  using std::atan;
  using std::atanh;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::tan;
  using std::tanh;
  const bool sph = k == Kappa::Spherical;
  switch (kind) {
    case Trig::Sin: return sph ? sin(t) : sinh(t);
    case Trig::Cos: return sph ? cos(t) : cosh(t);
    case Trig::Tan:
      if (sph && cos(t) == Scalar(0)) throw DomainError("tan_1 pole");
      return sph ? tan(t) : tanh(t);
    case Trig::Cot:
      if (t == Scalar(0) || (sph && sin(t) == Scalar(0))) throw DomainError("cot_k pole");
      return sph ? cos(t) / sin(t) : Scalar(1) / tanh(t);
    case Trig::Arctan:
      if (!sph && !(t > Scalar(-1) && t < Scalar(1))) throw DomainError("arctan_-1 argument outside (-1,1): asymptote");
      return sph ? atan(t) : atanh(t);
  }
  return Scalar(0);
}

// (x1, x2, x3, z): point of the quadric model times the real line.
template <typename Scalar>
using AmbientPoint = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
void check_profile_domain(Scalar x, Kappa k) {
  if (!(x >= Scalar(0))) throw DomainError("profile radius must be >= 0");
  if (k == Kappa::Spherical && x > Scalar(std::numbers::pi)) throw DomainError("profile radius must be <= pi in S2");
}

template <typename Scalar>
AmbientPoint<Scalar> surface_point(Scalar x, Scalar z, Scalar theta, Kappa k) {
  check_profile_domain(x, k);
  using std::cos;
  using std::sin;
  const Scalar r = ktrig(Trig::Sin, k, x);
  AmbientPoint<Scalar> p;
  p << r * cos(theta), r * sin(theta), ktrig(Trig::Cos, k, x), z;
  return p;
}

template <typename Scalar>
AmbientPoint<Scalar> embed_profile(Scalar x, Scalar z, Kappa k) {
  check_profile_domain(x, k);
  AmbientPoint<Scalar> p;
  p << ktrig(Trig::Sin, k, x), Scalar(0), ktrig(Trig::Cos, k, x), z;
  return p;
}

// |x1^2 + x2^2 + k x3^2 - k|, scaled by the point's magnitude so that large
// hyperbolic radii are not penalised for cancellation.
template <typename Scalar>
Scalar quadric_residual(const AmbientPoint<Scalar>& p, Kappa k) {
  using std::abs;
  using std::max;
  const Scalar kk = Scalar(value(k));
  const Scalar q = p(0) * p(0) + p(1) * p(1) + kk * p(2) * p(2) - kk;
  return abs(q) / max(Scalar(1), p.template head<3>().squaredNorm());
}

enum class Model { PoincareDisk, Stereographic };

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> project_model(const AmbientPoint<Scalar>& p, Model m, Kappa k) {
  if (m == Model::PoincareDisk && k != Kappa::Hyperbolic) throw DomainError("Poincare disk model requires kappa=-1");
  if (m == Model::Stereographic && k != Kappa::Spherical) throw DomainError("stereographic model requires kappa=+1");
  const Scalar den = Scalar(1) + p(2);
  if (den == Scalar(0)) throw DomainError("projection pole hit");
  return {p(0) / den, p(1) / den, p(3)};
}

struct ProfileSample {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Eps eps = Eps::Plus;
  double yprime = 0.0;
};

template <typename Scalar>
std::pair<Scalar, Scalar> principal_curvatures(Scalar x, Scalar y, Scalar yprime, Eps eps, Kappa k) {
  using std::abs;
  using std::sqrt;
  if (abs(y) >= Scalar(1)) throw DomainError("principal curvatures undefined at |y|=1");
  if (x == Scalar(0)) throw DomainError("principal curvatures undefined on the axis");
  const Scalar e = Scalar(value(eps));
  const Scalar u = sqrt(Scalar(1) - y * y);
  return {-e * yprime / u, e * u * ktrig(Trig::Cot, k, x)};
}

inline std::pair<double, double> principal_curvatures(const ProfileSample& p, double yprime, Kappa k) {
  return principal_curvatures(p.x, p.y, yprime, p.eps, k);
}

inline constexpr double kGuardBand = 1e-6;

// max |k1 + k2 - 2H(y)| over samples with |y| <= 1 - guard band.
double mean_residual(const std::vector<ProfileSample>& samples, const HFunction& f, Kappa k);

}  // namespace hsurf
