#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spaceform/cli.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/io.hpp"
#include "spaceform/twistor.hpp"

using namespace spaceform;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("spaceform_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& s) const { return path / s; }
};

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spaceform");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream log, err;
  return cli::main(static_cast<int>(argv.size()), argv.data(), log, err);
}

int run_config(const std::string& command, const fs::path& config, const fs::path& out) {
  return run_cli({command, "--config", config.string(), "--out", out.string()});
}

}  // namespace

TEST_CASE("tables round trip exactly") {
  const Grid g{-0.3, 1.0, 0.1, 0.25, 5, 7};
  const FundamentalData d = oracle::unit_sphere(g);
  std::stringstream s;
  io::write_table(s, io::fundamental_table(d));
  const io::Table t = io::read_table(s);
  CHECK(t.grid == g);
  const FundamentalData back = io::fundamental_from_table(t, d.model);
  for (std::size_t f = 0; f < d.fields.size(); ++f) CHECK(back.fields[f].values() == d.fields[f].values());
  CHECK_THROWS_AS(t.column("nope"), ParseError);
  CHECK(io::format_number(0.1) == "1.0000000000000001e-01");

  std::stringstream again;
  io::write_table(again, io::fundamental_table(back));
  std::stringstream first;
  io::write_table(first, io::fundamental_table(d));
  CHECK(first.str() == again.str());
}

TEST_CASE("malformed tables are rejected") {
  std::stringstream skew("u,v,a\n0,0,1\n0,1,1\n1,0,1\n1,3,1\n");
  CHECK_THROWS_AS(io::read_table(skew), ParseError);
  std::stringstream text("u,v,a\n0,0,x\n");
  CHECK_THROWS_AS(io::read_table(text), ParseError);
  std::stringstream header("a,b\n0,0\n");
  CHECK_THROWS_AS(io::read_table(header), ParseError);
}

TEST_CASE("twistor tables keep both branches") {
  const Grid g = Grid::square(-0.5, 0.5, 6);
  const TwistorInvariants t = twistor_invariants(oracle::unit_sphere(g));
  const TwistorInvariants back = io::twistor_from_table(io::twistor_table(t), SurfaceCase::Riemannian);
  for (int b = 0; b < 2; ++b) {
    CHECK(back.Y[b].values() == t.Y[b].values());
    CHECK(back.W[b].values() == t.W[b].values());
  }
  const TwistorInvariants l = twistor_invariants(oracle::unit_sphere(g, SurfaceCase::LorentzSpace));
  io::Table tab = io::twistor_table(l);
  const TwistorInvariants lb = io::twistor_from_table(tab, SurfaceCase::LorentzSpace);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(lb.Y[1][k] == std::conj(lb.Y[0][k]));
}

TEST_CASE("frames round trip through files") {
  TempDir dir("frames");
  const Grid g = Grid::square(0.0, 1.0, 5);
  const FundamentalData d = oracle::unit_sphere(g);
  const FrameIntegration fi = integrate_frame(d, canonical_initial_frame(d.model, d.lambda()[0]));
  io::write_frames(dir.path, fi.frames);
  const FrameField back = io::read_frames(dir.path, d.model);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(back.frames[k] == fi.frames.frames[k]);
  fs::remove(dir / "N2.csv");
  CHECK_THROWS_AS(io::read_frames(dir.path, d.model), ParseError);
}

TEST_CASE("cli exit codes") {
  TempDir dir("cli");
  const std::string grid = R"("grid": {"lo": -0.5, "hi": 0.5, "n": 41})";
  write_file(dir / "sphere.json",
             R"({"case": "RIEM", "L0": 0, )" + grid + R"(, "data": {"dataset": {"family": "sphere"}}})");
  write_file(dir / "random.json",
             R"({"case": "RIEM", "L0": 0, )" + grid +
                 R"(, "data": {"dataset": {"family": "random", "seed": 3}}})");
  write_file(dir / "missing.json", R"({"case": "RIEM", "L0": 0, "data": {"file": "nothere.csv"}})");
  write_file(dir / "unknown.json",
             R"({"case": "RIEM", "L0": 0, )" + grid +
                 R"(, "colour": 1, "data": {"dataset": {"family": "sphere"}}})");
  write_file(dir / "badcase.json",
             R"({"case": "EUCLID", "L0": 0, )" + grid + R"(, "data": {"dataset": {"family": "sphere"}}})");
  write_file(dir / "broken.json", "{\"case\": ");

  CHECK(run_config("check", dir / "sphere.json", dir / "o1") == cli::kOk);
  CHECK(fs::exists(dir / "o1" / "check_report.json"));
  CHECK(fs::exists(dir / "o1" / "gcr_residuals.csv"));
  CHECK(run_config("twistor", dir / "sphere.json", dir / "o2") == cli::kOk);
  CHECK(run_config("check", dir / "random.json", dir / "o3") == cli::kToleranceFailure);
  CHECK(run_config("check", dir / "missing.json", dir / "o4") == cli::kInputError);
  CHECK(run_config("check", dir / "unknown.json", dir / "o5") == cli::kInputError);
  CHECK(run_config("check", dir / "badcase.json", dir / "o6") == cli::kInputError);
  CHECK(run_config("check", dir / "broken.json", dir / "o7") == cli::kInputError);
  CHECK(run_config("check", dir / "absent.json", dir / "o8") == cli::kInputError);
  CHECK(run_cli({"check"}) == cli::kInputError);
  CHECK(run_cli({"frobnicate"}) == cli::kInputError);
  CHECK(run_cli({"group", "--out", (dir / "o9").string()}) == cli::kOk);
}

TEST_CASE("cli construct") {
  TempDir dir("construct");
  const Grid g = Grid::square(-0.5, 0.5, 41);
  DatasetSpec s;
  s.family = "small_sphere";
  s.L0 = 0.5;
  s.grid = g;
  io::write_table(dir / "inv.csv", io::twistor_table(twistor_invariants(make_dataset(s))));
  write_file(dir / "curved.json",
             R"({"case": "RIEM", "L0": 0.5, "construct": {"mode": "wxyz-curved", "invariants": "inv.csv"}})");
  write_file(dir / "flipped.json",
             R"({"case": "RIEM", "L0": -0.5, "construct": {"mode": "wxyz-curved", "invariants": "inv.csv"}})");
  write_file(dir / "delbar.json",
             R"({"case": "LOR_SPACE", "L0": -1, "grid": {"lo": -0.35, "hi": 0.35, "n": 40},
                 "construct": {"mode": "delbar", "p": "w", "r": 0}})");
  write_file(dir / "badpoly.json",
             R"({"case": "LOR_SPACE", "L0": -1, "grid": {"lo": -0.35, "hi": 0.35, "n": 40},
                 "construct": {"mode": "delbar", "p": "w^^2"}})");
  CHECK(run_config("construct", dir / "curved.json", dir / "o1") == cli::kOk);
  CHECK(fs::exists(dir / "o1" / "fundamental.csv"));
  CHECK(run_config("construct", dir / "flipped.json", dir / "o2") == cli::kInputError);
  CHECK(run_config("construct", dir / "delbar.json", dir / "o3") == cli::kOk);
  CHECK(read_file(dir / "o3" / "construct_report.json").find("\"max_abs_H\": 0.0") != std::string::npos);
  CHECK(run_config("construct", dir / "badpoly.json", dir / "o4") == cli::kInputError);
}

TEST_CASE("cli reconstruct and export") {
  TempDir dir("export");
  write_file(dir / "rec.json", R"({"case": "RIEM", "L0": 0, "grid": {"lo": -0.5, "hi": 0.5, "n": 21},
                                   "data": {"dataset": {"family": "sphere"}}})");
  CHECK(run_config("reconstruct", dir / "rec.json", dir / "rec") == cli::kOk);
  CHECK(fs::exists(dir / "rec" / "frames" / "F.csv"));
  const std::string good = R"({"case": "RIEM", "L0": 0, "export": {"frames": "rec/frames",
                               "projection": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]}})";
  write_file(dir / "export.json", good);
  write_file(dir / "rank2.json", R"({"case": "RIEM", "L0": 0, "export": {"frames": "rec/frames",
                                     "projection": [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]]}})");
  write_file(dir / "noframes.json", R"({"case": "RIEM", "L0": 0, "export": {"frames": "nowhere"}})");
  CHECK(run_config("export", dir / "export.json", dir / "m1") == cli::kOk);
  CHECK(run_config("export", dir / "export.json", dir / "m2") == cli::kOk);
  const std::string mesh = read_file(dir / "m1" / "mesh.obj");
  CHECK(!mesh.empty());
  CHECK(mesh == read_file(dir / "m2" / "mesh.obj"));
  CHECK(run_config("export", dir / "rank2.json", dir / "m3") == cli::kInputError);
  CHECK(run_config("export", dir / "noframes.json", dir / "m4") == cli::kInputError);
}
