#pragma once

#include <Eigen/Core>
#include <cmath>

namespace hsurf {

// Dormand-Prince 5(4) step with the standard quartic continuous extension.
template <typename Scalar, int N>
struct DormandPrince {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  using Dense = Eigen::Matrix<Scalar, N, 5>;

  struct Step {
    Vec y1;
    Vec k7;    // f(t + h, y1), reused as k1 of the next step
    Scalar err;
    Dense dense;
    bool valid;
  };

  // f(t, y, dy) writes the derivative and returns false if y is outside the field's domain.
  template <typename F>
  static Step attempt(F&& f, Scalar t, const Vec& y, const Vec& k1, Scalar h, Scalar rtol, Scalar atol) {
    constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5, c5 = Scalar(8) / 9;
    constexpr Scalar a21 = Scalar(1) / 5;
    constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
    constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
    constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187, a53 = Scalar(64448) / 6561,
                     a54 = Scalar(-212) / 729;
    constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33, a63 = Scalar(46732) / 5247,
                     a64 = Scalar(49) / 176, a65 = Scalar(-5103) / 18656;
    constexpr Scalar b1 = Scalar(35) / 384, b3 = Scalar(500) / 1113, b4 = Scalar(125) / 192,
                     b5 = Scalar(-2187) / 6784, b6 = Scalar(11) / 84;
    constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695, e4 = Scalar(71) / 1920,
                     e5 = Scalar(-17253) / 339200, e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;
    constexpr Scalar d1 = Scalar(-12715105075.0) / Scalar(11282082432.0),
                     d3 = Scalar(87487479700.0) / Scalar(32700410799.0),
                     d4 = Scalar(-10690763975.0) / Scalar(1880347072.0),
                     d5 = Scalar(701980252875.0) / Scalar(199316789632.0),
                     d6 = Scalar(-1453857185.0) / Scalar(822651844.0),
                     d7 = Scalar(69997945.0) / Scalar(29380423.0);

    Step out;
    out.valid = false;
    Vec k2, k3, k4, k5, k6;
    if (!f(t + c2 * h, Vec(y + h * a21 * k1), k2)) return out;
    if (!f(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)), k3)) return out;
    if (!f(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)), k4)) return out;
    if (!f(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)), k5)) return out;
    if (!f(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)), k6)) return out;
    out.y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (!f(t + h, out.y1, out.k7)) return out;
    const Vec errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.k7);
    const Vec scale = (atol + rtol * y.cwiseAbs().cwiseMax(out.y1.cwiseAbs()).array()).matrix();
    out.err = std::sqrt((errv.array() / scale.array()).square().mean());
    if (!std::isfinite(out.err) || !out.y1.allFinite()) return out;
    const Vec r2 = out.y1 - y;
    const Vec r3 = h * k1 - r2;
    out.dense.col(0) = y;
    out.dense.col(1) = r2;
    out.dense.col(2) = r3;
    out.dense.col(3) = r2 - h * out.k7 - r3;
    out.dense.col(4) = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * out.k7);
    out.valid = true;
    return out;
  }

  static Vec value(const Dense& r, Scalar th) {
    const Scalar s = Scalar(1) - th;
    return r.col(0) + th * (r.col(1) + s * (r.col(2) + th * (r.col(3) + s * r.col(4))));
  }

  static Vec derivative(const Dense& r, Scalar th, Scalar h) {
    const Scalar s = Scalar(1) - th;
    const Vec dth = r.col(1) + (Scalar(1) - 2 * th) * r.col(2) + th * (2 - 3 * th) * r.col(3) +
                    2 * th * s * (Scalar(1) - 2 * th) * r.col(4);
    return dth / h;
  }
};

// Hairer's PI step-size controller.
template <typename Scalar>
struct PiController {
  Scalar beta = Scalar(0.04);
  Scalar safety = Scalar(0.9);
  Scalar fac_min = Scalar(0.1);  // h grows at most 10x
  Scalar fac_max = Scalar(5);    // h shrinks at most 5x per rejection
  Scalar err_old = Scalar(1e-4);

  // Returns the next step; `accept` tells whether err <= 1.
  Scalar propose(Scalar h, Scalar err, bool& accept) {
    const Scalar expo1 = Scalar(0.2) - beta * Scalar(0.75);
    if (err <= Scalar(1)) {
      const Scalar fac11 = std::pow(std::max(err, Scalar(1e-300)), expo1);
      Scalar fac = fac11 / std::pow(err_old, beta) / safety;
      fac = std::max(fac_min, std::min(fac_max, fac));
      err_old = std::max(err, Scalar(1e-4));
      accept = true;
      return h / fac;
    }
    const Scalar fac11 = std::pow(err, expo1);
    accept = false;
    return h / std::min(fac_max, fac11 / safety);
  }
};

}  // namespace hsurf
