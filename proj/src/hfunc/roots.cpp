#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hsurf/errors.hpp"
#include "hsurf/hfunc.hpp"

namespace hsurf {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::vector<ZeroRecord> find_roots(const HAst& e, double lo, double hi, const RootOptions& opt) {
  std::vector<HAst> d{e};
  auto deriv = [&](int k) -> const HAst& {
    while (static_cast<int>(d.size()) <= k) d.push_back(differentiate(d.back()));
    return d[k];
  };
  const HAst f = d[0];
  const HAst f1 = deriv(1);

  const int n = opt.grid;
  const double step = (hi - lo) / (n - 1);
  std::vector<double> ys(n), v(n), dv(n);
  bool all_small = true;
  for (int i = 0; i < n; ++i) {
    ys[i] = i == n - 1 ? hi : lo + i * step;
    v[i] = f.eval(ys[i]);
    dv[i] = f1.eval(ys[i]);
    all_small = all_small && std::abs(v[i]) <= opt.root_tol;
  }
  if (all_small) throw UnresolvedZero("function vanishes on the whole interval");

  auto fe = [&](double y) { return f.eval(y); };
  auto f1e = [&](double y) { return f1.eval(y); };

  std::vector<double> cand;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0.0) cand.push_back(ys[i]);
    if (dv[i] == 0.0 && std::abs(v[i]) <= opt.root_tol) cand.push_back(ys[i]);
  }
  if (std::abs(v[0]) <= opt.root_tol) cand.push_back(lo);
  if (std::abs(v[n - 1]) <= opt.root_tol) cand.push_back(hi);
  for (int i = 0; i + 1 < n; ++i) {
    const double a = ys[i], b = ys[i + 1];
    if (sgn(v[i]) * sgn(v[i + 1]) < 0) cand.push_back(bisect(fe, a, b, 0.0));
    if (sgn(dv[i]) * sgn(dv[i + 1]) < 0) {
      const double ys_ = bisect(f1e, a, b, 0.0);
      const double fv = fe(ys_);
      if (sgn(v[i]) * sgn(v[i + 1]) > 0 && sgn(fv) == -sgn(v[i])) {
        // f dips through zero and back inside one cell: two simple roots
        cand.push_back(bisect(fe, a, ys_, 0.0));
        cand.push_back(bisect(fe, ys_, b, 0.0));
      } else if (std::abs(fv) <= opt.root_tol) {
        cand.push_back(ys_);
      }
    }
  }

  // Multiplicity: at a root of multiplicity m, f^(m-1) has a simple zero, so
  // bisecting successive derivatives pins the location down where f alone is flat.
  const double w = 2.0 * step;
  std::vector<ZeroRecord> out;
  for (double y0 : cand) {
    double y = y0;
    int m = 0;
    for (int k = 1; k <= opt.max_order; ++k) {
      const HAst g = deriv(k - 1);
      const HAst gp = deriv(k);
      const double a = std::max(lo, y - w), b = std::min(hi, y + w);
      if (sgn(g.eval(a)) * sgn(g.eval(b)) < 0) {
        y = bisect([&](double t) { return g.eval(t); }, a, b, 0.0);
      } else if (sgn(gp.eval(a)) * sgn(gp.eval(b)) < 0) {
        // f^(k-1) touches zero: move to its extremum
        y = bisect([&](double t) { return gp.eval(t); }, a, b, 0.0);
      }
      if (std::abs(gp.eval(y)) > opt.vanish_tol) {
        m = k;
        break;
      }
    }
    if (m == 0) throw UnresolvedZero("zero near y=" + fmt(y0) + ": multiplicity > " + std::to_string(opt.max_order) + ", unresolved");
    if (std::abs(f.eval(y)) > opt.root_tol) {
      // refinement left the root: inconsistent derivative structure
      throw UnresolvedZero("zero near y=" + fmt(y0) + " could not be refined to tolerance");
    }
    out.push_back({y, m, m % 2 == 1});
  }

  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.y0 < b.y0; });
  std::vector<ZeroRecord> merged;
  for (const ZeroRecord& z : out) {
    if (!merged.empty() && z.y0 - merged.back().y0 <= opt.merge_tol) {
      ZeroRecord& last = merged.back();
      if (z.multiplicity != last.multiplicity)
        throw UnresolvedZero("conflicting multiplicities near y=" + fmt(z.y0));
      if (std::abs(f.eval(z.y0)) < std::abs(f.eval(last.y0))) last.y0 = z.y0;
      continue;
    }
    merged.push_back(z);
  }
  for (std::size_t i = 1; i < merged.size(); ++i) {
    if (merged[i].y0 - merged[i - 1].y0 < opt.separation)
      throw UnresolvedZero("roots at y=" + fmt(merged[i - 1].y0) + " and y=" + fmt(merged[i].y0) +
                           " closer than " + fmt(opt.separation));
  }
  return merged;
}

}  // namespace hsurf
