#include "hsurf/geomk.hpp"

#include <algorithm>

namespace hsurf {

Eps eps_from_int(int e) {
  if (e == -1) return Eps::Minus;
  if (e == 1) return Eps::Plus;
  throw DomainError("eps must be -1 or +1, got " + std::to_string(e));
}

double mean_residual(const std::vector<ProfileSample>& samples, const HFunction& f, Kappa k) {
  double worst = 0.0;
  for (const ProfileSample& p : samples) {
    if (std::abs(p.y) > 1.0 - kGuardBand || p.x <= 0.0) continue;
    const auto [k1, k2] = principal_curvatures(p, p.yprime, k);
    worst = std::max(worst, std::abs(k1 + k2 - 2.0 * f(p.y)));
  }
  return worst;
}

}  // namespace hsurf
