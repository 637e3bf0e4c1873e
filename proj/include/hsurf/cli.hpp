#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hsurf/io/report.hpp"
#include "hsurf/orbit.hpp"

namespace hsurf::cli {

enum class ExitCode : int { Ok = 0, Usage = 1, Inadmissible = 2, Mismatch = 3, Numeric = 4 };

enum class Format { Csv, Svg, Obj, Report };

Format format_from_string(const std::string& s);
const char* extension(Format f);

struct RunConfig {
  std::string command;  // check, portrait, classify, build
  std::string kind;     // build only
  std::string expr;
  Kappa kappa = Kappa::Hyperbolic;
  std::optional<Eps> eps;
  std::optional<double> xi;
  int periods = 1;
  std::optional<Model> model;
  int theta_samples = 64;
  std::optional<std::string> out;
  std::optional<Format> format;
  bool json = false;
  IntegratorConfig integrator;

  // Throws DomainError on inconsistent flags.
  void validate() const;
  Model resolved_model() const;
};

// Reports go to `out` unless --out names a file. Diagnostics go to `err`.
ExitCode run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

io::Tree check_report(const HFunction& f, Kappa k);

ExitCode cmd_check(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_portrait(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
ExitCode cmd_build(const RunConfig& cfg, std::ostream& out);

}  // namespace hsurf::cli
