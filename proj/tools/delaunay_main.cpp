#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "hsurf/cli.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("delaunay");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("DELAUNAY_LOG")) {
    const std::string s = lvl;
    if (s == "error") spdlog::set_level(spdlog::level::err);
    else if (s == "info") spdlog::set_level(spdlog::level::info);
    else if (s == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("DELAUNAY_LOG={} ignored (expected error, info or debug)", s);
  }
}

struct Flags {
  int kappa = -1;
  int eps = 0;
  double xi = 0.0;
  std::string model;
  std::string format;
};

void add_common(CLI::App* sub, hsurf::cli::RunConfig& cfg, Flags& fl) {
  sub->add_option("expr", cfg.expr, "prescribed function H(y)")->required();
  sub->add_option("--kappa", fl.kappa, "curvature of the base surface")->check(CLI::IsMember({-1, 1}));
  sub->add_option("--eps", fl.eps, "sign of z' selecting the phase plane")->check(CLI::IsMember({-1, 1}));
  sub->add_option("--xi", fl.xi, "initial point (xi, 0)");
  sub->add_option("--periods", cfg.periods, "periods to build");
  sub->add_option("--model", fl.model, "projection model")->check(CLI::IsMember({"disk", "stereo"}));
  sub->add_option("--theta-samples", cfg.theta_samples, "rotation samples of the mesh");
  sub->add_option("--out", cfg.out, "output path or base name");
  sub->add_option("--format", fl.format, "single output format")->check(CLI::IsMember({"csv", "svg", "obj", "report"}));
  sub->add_flag("--json", cfg.json, "machine-readable report");
  sub->add_option("--rtol", cfg.integrator.rtol, "relative tolerance");
  sub->add_option("--atol", cfg.integrator.atol, "absolute tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Rotational prescribed mean curvature surfaces in H2xR and S2xR"};
  app.require_subcommand(1);
  hsurf::cli::RunConfig cfg;
  Flags fl;
  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"check", "portrait", "classify", "build"}) {
    CLI::App* sub = app.add_subcommand(name);
    if (std::string(name) == "build")
      sub->add_option("kind", cfg.kind, "sphere, cylinder, unduloid, nodoid or torus")->required();
    add_common(sub, cfg, fl);
    subs[name] = sub;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(hsurf::cli::ExitCode::Usage);
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cfg.command = name;

  try {
    cfg.kappa = hsurf::kappa_from_int(fl.kappa);
    if (fl.eps != 0) cfg.eps = hsurf::eps_from_int(fl.eps);
    if (subs[cfg.command]->count("--xi")) cfg.xi = fl.xi;
    if (!fl.model.empty()) cfg.model = fl.model == "disk" ? hsurf::Model::PoincareDisk : hsurf::Model::Stereographic;
    if (!fl.format.empty()) cfg.format = hsurf::cli::format_from_string(fl.format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(hsurf::cli::ExitCode::Usage);
  }
  return static_cast<int>(hsurf::cli::run(cfg, std::cout, std::cerr));
}
