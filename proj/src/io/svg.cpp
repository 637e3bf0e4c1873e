#include "hsurf/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hsurf::io {

namespace {

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kSvgMargin + (kSvgWidth - 2 * kSvgMargin) * (x - x0) / (x1 - x0); }
  double py(double y) const { return kSvgHeight - kSvgMargin - (kSvgHeight - 2 * kSvgMargin) * (y - y0) / (y1 - y0); }
  bool inside(const Eigen::Vector2d& p) const { return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1; }
};

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgWidth << "\" height=\""
     << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth << ' ' << kSvgHeight << "\">\n"
     << "<style>\n"
        "  .axis { stroke: #000; stroke-width: 1; fill: none; }\n"
        "  .tick { font: 11px sans-serif; fill: #000; }\n"
        "  .gamma { stroke: #2a9d3a; stroke-width: 2; fill: none; }\n"
        "  .asymptote { stroke: #2a9d3a; stroke-width: 1; stroke-dasharray: 6 4; fill: none; }\n"
        "  .orbit { stroke: #3060c0; stroke-width: 1; fill: none; }\n"
        "  .separatrix { stroke: #d02020; stroke-width: 2; fill: none; }\n"
        "  .equilibrium { stroke: #000; fill: #fff; }\n"
        "  .eps-plus { stroke: #3060c0; stroke-width: 1.5; fill: none; }\n"
        "  .eps-minus { stroke: #d07020; stroke-width: 1.5; fill: none; }\n"
        "  .title { font: 14px sans-serif; fill: #000; }\n"
        "</style>\n"
     << "<text class=\"title\" x=\"" << kSvgWidth / 2 << "\" y=\"30\" text-anchor=\"middle\">" << xml_escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& fr, const std::string& xlabel, const std::string& ylabel) {
  const double l = fr.px(fr.x0), r = fr.px(fr.x1), t = fr.py(fr.y1), b = fr.py(fr.y0);
  os << "<rect class=\"axis\" x=\"" << f2(l) << "\" y=\"" << f2(t) << "\" width=\"" << f2(r - l) << "\" height=\""
     << f2(b - t) << "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = fr.x0 + (fr.x1 - fr.x0) * i / 4.0;
    const double y = fr.y0 + (fr.y1 - fr.y0) * i / 4.0;
    os << "<line class=\"axis\" x1=\"" << f2(fr.px(x)) << "\" y1=\"" << f2(b) << "\" x2=\"" << f2(fr.px(x))
       << "\" y2=\"" << f2(b + 5) << "\"/>\n"
       << "<text class=\"tick\" x=\"" << f2(fr.px(x)) << "\" y=\"" << f2(b + 18) << "\" text-anchor=\"middle\">"
       << f2(x) << "</text>\n"
       << "<line class=\"axis\" x1=\"" << f2(l - 5) << "\" y1=\"" << f2(fr.py(y)) << "\" x2=\"" << f2(l) << "\" y2=\""
       << f2(fr.py(y)) << "\"/>\n"
       << "<text class=\"tick\" x=\"" << f2(l - 8) << "\" y=\"" << f2(fr.py(y) + 4) << "\" text-anchor=\"end\">"
       << f2(y) << "</text>\n";
  }
  os << "<text class=\"tick\" x=\"" << f2(r) << "\" y=\"" << f2(b + 34) << "\" text-anchor=\"end\">" << xlabel
     << "</text>\n"
     << "<text class=\"tick\" x=\"" << f2(l - 8) << "\" y=\"" << f2(t - 10) << "\" text-anchor=\"end\">" << ylabel
     << "</text>\n";
}

// Splits at points outside the frame so that every emitted polyline stays in the window.
void polyline(std::ostringstream& os, const Frame& fr, const Polyline& pts, const char* cls) {
  std::vector<const Eigen::Vector2d*> run;
  const auto flush = [&] {
    if (run.size() >= 2) {
      os << "<polyline class=\"" << cls << "\" points=\"";
      for (std::size_t i = 0; i < run.size(); ++i)
        os << (i ? " " : "") << f2(fr.px(run[i]->x())) << ',' << f2(fr.py(run[i]->y()));
      os << "\"/>\n";
    }
    run.clear();
  };
  for (const Eigen::Vector2d& p : pts) {
    if (fr.inside(p)) {
      run.push_back(&p);
    } else {
      flush();
    }
  }
  flush();
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string portrait_svg(const Portrait& p, const std::string& title) {
  const Frame fr{0.0, p.x_max, -1.0, 1.0};
  std::ostringstream os;
  header(os, title);
  axes(os, fr, "x", "y");
  for (double y : p.asymptotes)
    os << "<line class=\"asymptote\" x1=\"" << f2(fr.px(0.0)) << "\" y1=\"" << f2(fr.py(y)) << "\" x2=\""
       << f2(fr.px(p.x_max)) << "\" y2=\"" << f2(fr.py(y)) << "\"/>\n";
  for (const PortraitOrbit& o : p.orbits) {
    Polyline pts;
    for (const OrbitSample& s : o.samples) pts.push_back({s.x, s.y});
    polyline(os, fr, pts, "orbit");
  }
  for (const Polyline& g : p.gamma) polyline(os, fr, g, "gamma");
  if (p.separatrix) polyline(os, fr, *p.separatrix, "separatrix");
  for (const EquilibriumPoint& e : p.equilibria)
    if (e.x0 <= p.x_max)
      os << "<circle class=\"equilibrium\" cx=\"" << f2(fr.px(e.x0)) << "\" cy=\"" << f2(fr.py(0.0))
         << "\" r=\"3.50\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string profile_svg(const SurfaceProfile& profile, Kappa k, Model model, const std::string& title) {
  std::vector<std::pair<Eps, Polyline>> arcs;
  double rmax = 0.0, zlo = std::numeric_limits<double>::infinity(), zhi = -zlo;
  for (const ProfileArc& a : profile.arcs) {
    Polyline pts;
    for (const ProfileSample& s : a.samples) {
      const auto q = project_model(embed_profile(s.x, s.z, k), model, k);
      pts.push_back({q.x(), q.z()});
      rmax = std::max(rmax, std::abs(q.x()));
      zlo = std::min(zlo, q.z());
      zhi = std::max(zhi, q.z());
    }
    arcs.emplace_back(a.eps, std::move(pts));
  }
  if (arcs.empty()) throw DomainError("empty profile");
  const double pad_r = 0.05 * std::max(rmax, 1e-3);
  const double pad_z = 0.05 * std::max(zhi - zlo, 1e-3);
  const Frame fr{-rmax - pad_r, rmax + pad_r, zlo - pad_z, zhi + pad_z};
  std::ostringstream os;
  header(os, title);
  axes(os, fr, "rho", "z");
  for (const auto& [eps, pts] : arcs) {
    const char* cls = eps == Eps::Plus ? "eps-plus" : "eps-minus";
    polyline(os, fr, pts, cls);
    Polyline mirror;
    for (const Eigen::Vector2d& q : pts) mirror.push_back({-q.x(), q.y()});
    polyline(os, fr, mirror, cls);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hsurf::io
