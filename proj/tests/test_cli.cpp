#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "golden_render.hpp"
#include "hsurf/cli.hpp"
#include "hsurf/io/mesh.hpp"

using namespace hsurf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hsurf_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int shell(const std::string& args, const fs::path& dir) {
  const std::string cmd = "cd '" + dir.string() + "' && '" HSURF_CLI "' " + args + " >out.txt 2>err.txt";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

cli::RunConfig config(const std::string& command, const std::string& expr, Kappa k) {
  cli::RunConfig c;
  c.command = command;
  c.expr = expr;
  c.kappa = k;
  return c;
}

}  // namespace

TEST_CASE("exit-code contract through the binary") {
  TempDir t;
  CHECK(shell("check '1+y^2' --kappa -1", t.path) == 0);
  CHECK(shell("check 0.4 --kappa -1", t.path) == 2);
  CHECK(slurp((t.path / "out.txt").string()).find("witness: 0\n") != std::string::npos);
  CHECK(shell("check '1+('", t.path) == 1);
  CHECK(slurp((t.path / "err.txt").string()).find("offset 3") != std::string::npos);
  CHECK(shell("check 1 --kappa 2", t.path) == 1);
  CHECK(shell("frobnicate", t.path) == 1);
  CHECK(shell("classify 1 --kappa -1 --xi 0.8", t.path) == 0);
  CHECK(slurp((t.path / "out.txt").string()).find("kind: unduloid") != std::string::npos);
  CHECK(shell("classify 0.4 --kappa -1 --xi 0.8", t.path) == 2);
  CHECK(shell("build unduloid 1 --kappa -1 --xi 1.5", t.path) == 3);
  CHECK(shell("build sphere 0.4 --kappa -1", t.path) == 2);
  CHECK(shell("build sphere 1 --kappa 1 --theta-samples 4", t.path) == 1);
  CHECK(shell("build sphere 1 --kappa 1 --model disk", t.path) == 1);
}

TEST_CASE("classification examples") {
  std::ostringstream out, err;
  auto c = config("classify", "1", Kappa::Spherical);
  c.xi = 2.0344439;
  CHECK(cli::run(c, out, err) == cli::ExitCode::Ok);
  CHECK(out.str().find("kind: torus") != std::string::npos);
  out.str("");
  c = config("classify", "1", Kappa::Hyperbolic);
  c.xi = 0.5493061;
  CHECK(cli::run(c, out, err) == cli::ExitCode::Ok);
  CHECK(out.str().find("kind: cylinder") != std::string::npos);
  c.json = true;
  out.str("");
  CHECK(cli::run(c, out, err) == cli::ExitCode::Ok);
  CHECK(out.str().find("\"kind\": \"cylinder\"") != std::string::npos);
}

TEST_CASE("build writes profile CSV and OBJ with closed topology") {
  TempDir t;
  CHECK(shell("build sphere '1+y^2' --kappa -1", t.path) == 0);
  REQUIRE(fs::exists(t.path / "surface.csv"));
  REQUIRE(fs::exists(t.path / "surface.obj"));
  std::ifstream obj(t.path / "surface.obj");
  CHECK(io::analyze(io::read_obj(obj)).euler == 2);

  CHECK(shell("build torus 1 --kappa 1 --out tor", t.path) == 0);
  std::ifstream tor(t.path / "tor.obj");
  const io::MeshStats s = io::analyze(io::read_obj(tor));
  CHECK(s.euler == 0);
  CHECK(s.boundary_edges == 0);

  CHECK(shell("build nodoid '1+y^2' --kappa -1 --xi 1.5 --periods 3 --format obj --out nod.obj", t.path) == 0);
  CHECK(fs::exists(t.path / "nod.obj"));
  CHECK_FALSE(fs::exists(t.path / "nod.csv"));
  CHECK(shell("build cylinder 1 --kappa -1 --format csv --out cyl", t.path) == 0);
  CHECK(fs::exists(t.path / "cyl.csv"));
}

TEST_CASE("CLI figures match the goldens") {
  TempDir t;
  CHECK(shell("portrait '1+y^2' --kappa -1 --eps 1 --format svg --out portrait_eps_plus", t.path) == 0);
  CHECK(shell("portrait '1+y^2' --kappa -1 --eps -1 --format svg --out portrait_eps_minus", t.path) == 0);
  CHECK(shell("build nodoid '1+y^2' --kappa -1 --xi 1.5 --periods 3 --format svg --out nodoid_profile", t.path) == 0);
  for (const char* name : {"portrait_eps_plus.svg", "portrait_eps_minus.svg", "nodoid_profile.svg"}) {
    CAPTURE(name);
    CHECK(slurp((t.path / name).string()) == slurp(std::string(HSURF_GOLDEN_DIR) + "/" + name));
  }
}

TEST_CASE("portrait CSV and default outputs") {
  TempDir t;
  CHECK(shell("portrait 0.3 --kappa -1 --eps 1", t.path) == 0);
  REQUIRE(fs::exists(t.path / "portrait.svg"));
  REQUIRE(fs::exists(t.path / "portrait.csv"));
  const std::string csv = slurp((t.path / "portrait.csv").string());
  CHECK(csv.rfind("orbit_id,s,x,y\r\n", 0) == 0);
}

TEST_CASE("run config validation") {
  auto c = config("build", "1", Kappa::Hyperbolic);
  c.kind = "sphere";
  CHECK_NOTHROW(c.validate());
  CHECK(c.resolved_model() == Model::PoincareDisk);
  c.kind = "torus";
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.kind = "nodoid";
  CHECK_THROWS_AS(c.validate(), DomainError);  // needs --xi
  c = config("portrait", "1", Kappa::Spherical);
  c.format = cli::Format::Obj;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.format = cli::Format::Svg;
  c.out = "/nonexistent/dir/p";
  CHECK_THROWS_AS(c.validate(), DomainError);
}
