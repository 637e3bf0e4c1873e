#include "hsurf/cli.hpp"

#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hsurf/delaunay.hpp"
#include "hsurf/io/csv.hpp"
#include "hsurf/io/mesh.hpp"
#include "hsurf/io/svg.hpp"
#include "hsurf/portrait.hpp"

namespace hsurf::cli {

namespace fs = std::filesystem;
using io::num;
using io::Tree;

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "svg") return Format::Svg;
  if (s == "obj") return Format::Obj;
  if (s == "report") return Format::Report;
  throw DomainError("unknown format '" + s + "' (expected csv, svg, obj or report)");
}

const char* extension(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Svg: return "svg";
    case Format::Obj: return "obj";
    case Format::Report: return "txt";
  }
  return "";
}

void RunConfig::validate() const {
  integrator.validate();
  if (theta_samples < 8) throw DomainError("--theta-samples must be >= 8");
  if (periods < 1) throw DomainError("--periods must be >= 1");
  if (model) {
    if (*model == Model::PoincareDisk && kappa != Kappa::Hyperbolic) throw DomainError("--model disk needs --kappa -1");
    if (*model == Model::Stereographic && kappa != Kappa::Spherical) throw DomainError("--model stereo needs --kappa 1");
  }
  if (format) {
    const Format f = *format;
    const bool ok = (command == "check" || command == "classify") ? f == Format::Report
                    : command == "portrait"                      ? (f == Format::Svg || f == Format::Csv)
                    : command == "build"                         ? f != Format::Report
                                                                 : false;
    if (!ok) throw DomainError(std::string("--format ") + extension(f) + " does not apply to " + command);
  }
  if (out) {
    const fs::path parent = fs::path(*out).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) throw DomainError("output directory does not exist: " + parent.string());
  }
  if (command == "classify" && !xi) throw DomainError("classify needs --xi");
  if (command == "build") {
    if (kind != "sphere" && kind != "cylinder" && kind != "unduloid" && kind != "nodoid" && kind != "torus")
      throw DomainError("unknown surface kind '" + kind + "'");
    if ((kind == "unduloid" || kind == "nodoid") && !xi) throw DomainError(kind + " needs --xi");
    if (kind == "torus" && kappa != Kappa::Spherical) throw DomainError("tori exist only for --kappa 1");
  }
}

Model RunConfig::resolved_model() const {
  if (model) return *model;
  return kappa == Kappa::Hyperbolic ? Model::PoincareDisk : Model::Stereographic;
}

namespace {

std::string path_for(const RunConfig& cfg, const std::string& base_default, Format f) {
  const std::string base = cfg.out ? *cfg.out : base_default;
  const std::string ext = std::string(".") + extension(f);
  if (base.size() >= ext.size() && base.compare(base.size() - ext.size(), ext.size(), ext) == 0) return base;
  return base + ext;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
  spdlog::info("wrote {}", path);
}

void emit_report(const RunConfig& cfg, const Tree& t, std::ostream& out) {
  const std::string text = cfg.json ? io::render_json(t) : io::render_text(t);
  if (cfg.out) {
    write_file(*cfg.out, text);
  } else {
    out << text;
  }
}

Tree verdict_tree(const NecessaryCheck& c) {
  Tree t;
  t["verdict"] = verdict_name(c.verdict);
  t["detail"] = c.detail;
  if (c.witness) t["witness"] = num(*c.witness);
  if (c.multiplicity_sum) t["multiplicity_sum"] = *c.multiplicity_sum;
  return t;
}

std::string title_of(const RunConfig& cfg, const std::string& what) {
  return what + ": H(y) = " + cfg.expr + ", kappa = " + std::to_string(value(cfg.kappa));
}

SurfaceProfile cylinder_profile(const CylinderData& c, int periods) {
  // a vertical segment of height 2 per period; the surface is invariant under vertical translation
  ProfileArc a{c.eps, {}, {}};
  const double top = 2.0 * periods;
  for (int i = 0; i <= 32; ++i) {
    const double s = top * i / 32.0;
    a.samples.push_back({s, c.radius, 0.0, value(c.eps) * s, c.eps, 0.0});
  }
  SurfaceProfile p;
  p.arcs.push_back(std::move(a));
  return p;
}

}  // namespace

Tree check_report(const HFunction& f, Kappa k) {
  const ClassReport cr = class_membership(f, k);
  Tree t;
  t["expression"] = f.source();
  t["kappa"] = value(k);
  t["is_even"] = cr.is_even;
  t["evenness_defect"] = num(evenness_defect(f));
  Tree ineq;
  ineq["required"] = k == Kappa::Hyperbolic;
  ineq["holds"] = cr.satisfies_h2r_inequality;
  ineq["g_min"] = num(cr.g_min);
  ineq["margin"] = num(cr.inequality_margin);
  ineq["witness"] = cr.inequality_witness ? Tree(num(*cr.inequality_witness)) : Tree(nullptr);
  t["inequality"] = ineq;
  if (cr.zero_error.empty()) {
    Tree zs = Tree::array();
    for (const ZeroRecord& z : f.zeros()) {
      Tree r;
      r["y"] = num(z.y0);
      r["multiplicity"] = z.multiplicity;
      r["sign_change"] = z.sign_change;
      zs.push_back(r);
    }
    t["zeros"] = zs;
    t["multiplicity_sum"] = cr.zero_multiplicity_sum ? Tree(*cr.zero_multiplicity_sum) : Tree(nullptr);
  } else {
    t["zeros"] = nullptr;
    t["zeros_error"] = cr.zero_error;
  }
  t["closed_necessary"] = verdict_tree(check_closed_necessary(f, k));
  t["sphere_necessary"] = verdict_tree(check_sphere_necessary(f, k));
  t["admissible"] = cr.admissible(k);

  Tree eq = Tree::array();
  Tree asym = Tree::array();
  for (Eps e : {Eps::Plus, Eps::Minus}) {
    const PlaneSpec spec{k, e, f};
    for (const EquilibriumPoint& p : equilibria(spec)) {
      Tree r;
      r["eps"] = value(e);
      r["x0"] = num(p.x0);
      r["stability"] = p.stability == Stability::CenterCandidate ? "center_candidate" : "degenerate";
      eq.push_back(r);
    }
    if (k == Kappa::Hyperbolic) {
      for (double y : gamma_asymptotes(spec)) {
        Tree r;
        r["eps"] = value(e);
        r["y"] = num(y);
        asym.push_back(r);
      }
    }
  }
  t["equilibria"] = eq;
  t["gamma_asymptotes"] = asym;
  return t;
}

ExitCode cmd_check(const RunConfig& cfg, std::ostream& out) {
  const HFunction f = parse_h(cfg.expr);
  const Tree t = check_report(f, cfg.kappa);
  emit_report(cfg, t, out);
  return t["admissible"].get<bool>() ? ExitCode::Ok : ExitCode::Inadmissible;
}

ExitCode cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  const HFunction f = parse_h(cfg.expr);
  const Eps eps = cfg.eps.value_or(Eps::Plus);
  const PlaneSpec spec{cfg.kappa, eps, f};
  std::vector<double> fan;
  if (cfg.xi) fan.push_back(*cfg.xi);
  const Portrait p = compute_portrait(spec, fan, std::nullopt, cfg.integrator);

  Tree t;
  t["portrait"] = cfg.expr;
  t["kappa"] = value(cfg.kappa);
  t["eps"] = value(eps);
  t["x_max"] = num(p.x_max);
  t["orbits"] = p.orbits.size();
  t["separatrix"] = p.separatrix.has_value();
  Tree files = Tree::array();
  if (!cfg.format || *cfg.format == Format::Svg) {
    const std::string path = path_for(cfg, "portrait", Format::Svg);
    write_file(path, io::portrait_svg(p, title_of(cfg, "phase plane") + ", eps = " + std::to_string(value(eps))));
    files.push_back(path);
  }
  if (!cfg.format || *cfg.format == Format::Csv) {
    std::vector<io::PolylineRow> rows;
    for (const PortraitOrbit& o : p.orbits)
      for (const OrbitSample& s : o.samples) rows.push_back({o.id, s.s, s.x, s.y});
    std::ostringstream os;
    io::write_portrait_csv(os, rows);
    const std::string path = path_for(cfg, "portrait", Format::Csv);
    write_file(path, os.str());
    files.push_back(path);
  }
  t["files"] = files;
  out << io::render_text(t);
  return ExitCode::Ok;
}

ExitCode cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HFunction f = parse_h(cfg.expr);
  if (!class_membership(f, cfg.kappa).admissible(cfg.kappa)) {
    err << io::render_text(check_report(f, cfg.kappa));
    return ExitCode::Inadmissible;
  }
  const ClassificationReport r = classify_initial(f, cfg.kappa, *cfg.xi, cfg.integrator);
  Tree t;
  t["expression"] = f.source();
  t["kappa"] = value(cfg.kappa);
  t["kind"] = kind_name(r.kind);
  Tree sc;
  for (const auto& [name, v] : r.scalars) sc[name] = num(v);
  t["scalars"] = sc;
  t["diagnostics"] = r.diagnostics;
  Tree cond;
  cond["is_even"] = r.condition.is_even;
  cond["inequality_holds"] = r.condition.satisfies_h2r_inequality;
  cond["multiplicity_sum"] =
      r.condition.zero_multiplicity_sum ? Tree(*r.condition.zero_multiplicity_sum) : Tree(nullptr);
  t["condition"] = cond;
  emit_report(cfg, t, out);
  return ExitCode::Ok;
}

ExitCode cmd_build(const RunConfig& cfg, std::ostream& out) {
  const HFunction f = parse_h(cfg.expr);
  const Kappa k = cfg.kappa;
  if (!class_membership(f, k).admissible(k)) throw InadmissibleError("H is not admissible for kappa=" + std::to_string(value(k)));
  Tree t;
  t["kind"] = cfg.kind;
  t["expression"] = f.source();
  t["kappa"] = value(k);
  SurfaceProfile profile;
  if (cfg.kind == "sphere") {
    SphereData d = build_sphere(f, k, cfg.integrator);
    t["x0"] = num(d.x0);
    t["closure_defect"] = num(d.closure_defect);
    t["height"] = num(d.height);
    t["monotone"] = d.monotone_ok;
    profile = std::move(d.profile);
  } else if (cfg.kind == "cylinder") {
    const CylinderData c = build_cylinder(f, k, cfg.eps).front();
    t["radius"] = num(c.radius);
    t["mean_curvature"] = num(c.mean_curvature);
    t["eps"] = value(c.eps);
    profile = cylinder_profile(c, cfg.periods);
  } else if (cfg.kind == "unduloid") {
    UnduloidData d = build_unduloid(f, k, *cfg.xi, cfg.periods, cfg.integrator);
    t["xi"] = num(d.xi);
    t["period"] = num(d.period);
    t["pitch"] = num(d.pitch);
    t["x_min"] = num(d.x_min);
    t["x_max"] = num(d.x_max);
    t["translation_defect"] = num(d.translation_defect);
    profile = std::move(d.profile);
  } else if (cfg.kind == "nodoid") {
    NodoidData d = build_nodoid(f, k, *cfg.xi, cfg.periods, cfg.integrator);
    t["xi"] = num(d.xi);
    t["x1"] = num(d.x1);
    t["r"] = num(d.r);
    t["h1"] = num(d.h1);
    t["h2"] = num(d.h2);
    t["translation"] = num(d.translation);
    t["torus_like_closure"] = d.torus_like_closure;
    t["gluing_mismatch"] = num(d.gluing_mismatch);
    profile = std::move(d.profile);
  } else {
    if (cfg.xi) {
      const ClassificationReport r = classify_initial(f, k, *cfg.xi, cfg.integrator);
      if (r.kind != SurfaceKind::Torus)
        throw ClassificationMismatch(std::string("requested torus, verdict is ") + kind_name(r.kind));
    }
    TorusData d = build_torus(f, cfg.integrator);
    t["xi_star"] = num(d.xi_star);
    t["x1"] = num(d.x1);
    t["closure_defect"] = num(d.closure_defect);
    t["mirror_defect"] = num(d.mirror_defect);
    profile = std::move(d.profile);
  }

  Tree files = Tree::array();
  const bool all = !cfg.format;
  if (all || *cfg.format == Format::Csv) {
    std::ostringstream os;
    io::write_profile_csv(os, profile);
    const std::string path = path_for(cfg, "surface", Format::Csv);
    write_file(path, os.str());
    files.push_back(path);
  }
  if (all || *cfg.format == Format::Obj) {
    const io::Mesh m = io::revolve(profile, k, cfg.resolved_model(), cfg.theta_samples);
    const io::MeshStats st = io::analyze(m);
    Tree ms;
    ms["vertices"] = st.vertices;
    ms["faces"] = st.faces;
    ms["euler_characteristic"] = st.euler;
    ms["boundary_edges"] = st.boundary_edges;
    ms["manifold"] = st.manifold;
    t["mesh"] = ms;
    std::ostringstream os;
    io::write_obj(os, m);
    const std::string path = path_for(cfg, "surface", Format::Obj);
    write_file(path, os.str());
    files.push_back(path);
  }
  if (!all && *cfg.format == Format::Svg) {
    const std::string path = path_for(cfg, "surface", Format::Svg);
    write_file(path, io::profile_svg(profile, k, cfg.resolved_model(), title_of(cfg, cfg.kind)));
    files.push_back(path);
  }
  t["files"] = files;
  out << io::render_text(t);
  return ExitCode::Ok;
}

ExitCode run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "portrait") return cmd_portrait(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out, err);
    if (cfg.command == "build") return cmd_build(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return ExitCode::Usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::Usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::Usage;
  } catch (const InadmissibleError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::Inadmissible;
  } catch (const ClassificationMismatch& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::Mismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::Numeric;
  }
}

}  // namespace hsurf::cli
