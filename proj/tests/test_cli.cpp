#include <doctest.h>

#include "hodgewave/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace hodgewave;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hodgewave_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

std::string readFile(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string meshFile(const TempDir& dir, const RawMesh& mesh,
                     const std::string& name = "mesh.off") {
  return dir.file(name, writeOff(mesh));
}

} // namespace

TEST_CASE("config parsing") {
  SUBCASE("sections, comments, and typed getters") {
    Config cfg = Config::parse("# header comment\n"
                               "[mesh]\n"
                               "path = some.off  # trailing comment\n"
                               "[time]\n"
                               "dt = 0.25\n"
                               "steps = 100\n"
                               "[converge]\n"
                               "levels = 8, 16,32\n");
    CHECK(cfg.get("mesh", "path") == "some.off");
    CHECK(cfg.getDouble("time", "dt", 0.0) == 0.25);
    CHECK(cfg.getInt("time", "steps", 0) == 100);
    CHECK(cfg.getIntList("converge", "levels") == std::vector<int>{8, 16, 32});
    CHECK(cfg.getDouble("time", "missing", 7.5) == 7.5);
    CHECK(!cfg.has("time", "missing"));
  }
  SUBCASE("malformed line reports the line number") {
    CHECK_THROWS_WITH_AS(static_cast<void>(Config::parse("[a]\nkey_without_value\n")),
                         doctest::Contains("line 2"), ConfigError);
  }
  SUBCASE("missing required key throws") {
    Config cfg = Config::parse("[bc]\nkind = impedance\n");
    CHECK_THROWS_AS(static_cast<void>(cfg.requireDouble("bc", "c")), ConfigError);
  }
}

TEST_CASE("csv helpers") {
  TempDir dir;
  SUBCASE("formatCsvValue round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.718281828459045, -1e-30, 0.0, 123456.789}) {
      CHECK(std::stod(formatCsvValue(v)) == v);
    }
  }
  SUBCASE("field csv fills missing indices with the fallback") {
    std::string p = dir.file("f.csv", "simplex_index,value\n0,2.5\n3,-1.0\n");
    Eigen::VectorXd v = readFieldCsv(p, 5, 9.0);
    CHECK(v[0] == 2.5);
    CHECK(v[1] == 9.0);
    CHECK(v[3] == -1.0);
    CHECK(v[4] == 9.0);
  }
  SUBCASE("matrix csv") {
    std::string p = dir.file("m.csv", "1,2,3\n4,5,6\n");
    Eigen::MatrixXd m = readMatrixCsv(p);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 6.0);
  }
}

TEST_CASE("profile evaluation") {
  auto cx = buildComplex(shapes::rectangle(1.0, 0.5, 4, 2));
  Config cfg = Config::parse("[initial]\namplitude = 2.0\n");
  SUBCASE("standing_wave_x matches the cosine") {
    ProfileSamples s = evalProfile("standing_wave_x", cx, cfg);
    for (int v = 0; v < cx.count(0); ++v)
      CHECK(s.u0[v] == doctest::Approx(2.0 * std::cos(M_PI * cx.vertices(v, 0))));
    CHECK(s.v0.norm() == 0.0);
  }
  SUBCASE("standing_wave_xy vanishes on the boundary") {
    ProfileSamples s = evalProfile("standing_wave_xy", cx, cfg);
    auto bd = extractBoundary(cx);
    for (int lv = 0; lv < bd.vertexCount(); ++lv)
      CHECK(s.u0[bd.vertexMap[lv]] == doctest::Approx(0.0));
  }
  SUBCASE("gaussian_bump peaks at its center") {
    Config c2 = Config::parse("[initial]\ncenter_x = 0.5\ncenter_y = 0.25\nwidth = 0.1\n");
    ProfileSamples s = evalProfile("gaussian_bump", cx, c2);
    int peak = -1;
    s.u0.maxCoeff(&peak);
    CHECK(cx.vertices(peak, 0) == doctest::Approx(0.5));
    CHECK(cx.vertices(peak, 1) == doctest::Approx(0.25));
  }
  SUBCASE("unknown profile throws") {
    CHECK_THROWS_AS(static_cast<void>(evalProfile("nope", cx, cfg)), ConfigError);
  }
  SUBCASE("exact omega is zero at t = 0") {
    CHECK(exactOmega("standing_wave_x", cx, cfg, 0.0).norm() == 0.0);
  }
  SUBCASE("profiles without a closed form have no reference") {
    CHECK_THROWS_AS(static_cast<void>(exactOmega("gaussian_bump", cx, cfg, 1.0)),
                    ConfigError);
  }
}

TEST_CASE("check-mesh command") {
  TempDir dir;
  std::ostringstream out;
  SUBCASE("valid mesh passes") {
    Config cfg;
    cfg.set("mesh", "path", meshFile(dir, shapes::rectangle(1.0, 0.5, 4, 2)));
    CHECK(cmdCheckMesh(cfg, out) == 0);
    CHECK(out.str().find("pass") != std::string::npos);
  }
  SUBCASE("missing file fails with exit 1") {
    Config cfg;
    cfg.set("mesh", "path", (dir.path / "absent.off").string());
    CHECK(cmdCheckMesh(cfg, out) == 1);
  }
  SUBCASE("non-orientable mesh fails with exit 1") {
    Config cfg;
    cfg.set("mesh", "path", meshFile(dir, shapes::moebius()));
    CHECK(cmdCheckMesh(cfg, out) == 1);
    CHECK(out.str().find("orientable") != std::string::npos);
  }
  SUBCASE("garbage OFF fails with a line number") {
    Config cfg;
    cfg.set("mesh", "path", dir.file("bad.off", "OFF\n3 1 0\n0 0\n"));
    CHECK(cmdCheckMesh(cfg, out) == 1);
    CHECK(out.str().find("line") != std::string::npos);
  }
}

TEST_CASE("check-bc command") {
  TempDir dir;
  Config cfg;
  cfg.set("mesh", "path", meshFile(dir, shapes::rectangle(1.0, 0.5, 4, 2)));
  std::ostringstream out;
  SUBCASE("normal_zero is admissible") {
    cfg.set("bc", "kind", "normal_zero");
    CHECK(cmdCheckBc(cfg, out) == 0);
    CHECK(out.str().find("conservative:         yes") != std::string::npos);
  }
  SUBCASE("negative impedance is rejected") {
    cfg.set("bc", "kind", "impedance");
    cfg.set("bc", "c", "-1.0");
    CHECK(cmdCheckBc(cfg, out) == 1);
    CHECK(out.str().find("FAIL") != std::string::npos);
  }
  SUBCASE("custom bc from csv matrices") {
    auto cx = buildComplex(shapes::rectangle(1.0, 0.5, 4, 2));
    int nb = extractBoundary(cx).vertexCount();
    std::string eye, zero;
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        eye += (i == j ? "1" : "0");
        zero += "0";
        if (j + 1 < nb) { eye += ","; zero += ","; }
      }
      eye += "\n";
      zero += "\n";
    }
    cfg.set("bc", "kind", "custom");
    cfg.set("bc", "v1_csv", dir.file("v1.csv", eye));
    cfg.set("bc", "v2_csv", dir.file("v2.csv", zero));
    CHECK(cmdCheckBc(cfg, out) == 0);
  }
  SUBCASE("closed mesh has nothing to check") {
    Config closed;
    closed.set("mesh", "path", meshFile(dir, shapes::icosphere(0)));
    CHECK(cmdCheckBc(closed, out) == 1);
  }
  SUBCASE("unknown kind fails") {
    cfg.set("bc", "kind", "periodic");
    CHECK(cmdCheckBc(cfg, out) == 1);
  }
}

TEST_CASE("simulate command") {
  TempDir dir;
  Config cfg;
  cfg.set("mesh", "path", meshFile(dir, shapes::rectangle(1.0, 0.5, 8, 4)));
  cfg.set("bc", "kind", "normal_zero");
  cfg.set("initial", "profile", "standing_wave_x");
  cfg.set("time", "dt", "0.03125");
  cfg.set("time", "steps", "40");
  cfg.set("output", "dir", (dir.path / "out").string());
  RunOptions opts;
  opts.snapshotStride = 20;

  SUBCASE("writes energy.csv and snapshots") {
    std::ostringstream out;
    REQUIRE(cmdSimulate(cfg, opts, out) == 0);
    std::string energy = readFile(dir.path / "out" / "energy.csv");
    CHECK(energy.rfind("step,time,energy,boundary_power,solver_residual\n", 0) == 0);
    // header + 41 records
    CHECK(std::count(energy.begin(), energy.end(), '\n') == 42);
    for (int s : {0, 20, 40})
      CHECK(fs::exists(dir.path / "out" / ("state_" + std::to_string(s) + ".csv")));
    std::string state = readFile(dir.path / "out" / "state_0.csv");
    CHECK(state.rfind("simplex_kind,index,value\n", 0) == 0);
    CHECK(state.find("vertex,0,") != std::string::npos);
    CHECK(state.find("edge,0,") != std::string::npos);
  }
  SUBCASE("reruns are bit-identical") {
    std::ostringstream out;
    REQUIRE(cmdSimulate(cfg, opts, out) == 0);
    std::string first = readFile(dir.path / "out" / "energy.csv");
    std::string firstState = readFile(dir.path / "out" / "state_40.csv");
    REQUIRE(cmdSimulate(cfg, opts, out) == 0);
    CHECK(readFile(dir.path / "out" / "energy.csv") == first);
    CHECK(readFile(dir.path / "out" / "state_40.csv") == firstState);
  }
  SUBCASE("inadmissible bc exits 2 without unsafe, runs with it") {
    cfg.set("bc", "kind", "impedance");
    cfg.set("bc", "c", "-1.0");
    std::ostringstream out;
    CHECK(cmdSimulate(cfg, opts, out) == 2);
    CHECK(out.str().find("--unsafe") != std::string::npos);
    RunOptions forced = opts;
    forced.unsafe = true;
    std::ostringstream out2;
    CHECK(cmdSimulate(cfg, forced, out2) == 0);
  }
  SUBCASE("bad config exits 1") {
    cfg.set("time", "steps", "-3");
    std::ostringstream out;
    CHECK(cmdSimulate(cfg, opts, out) == 1);
  }
}

TEST_CASE("converge command") {
  TempDir dir;
  Config cfg;
  cfg.set("bc", "kind", "normal_zero");
  cfg.set("initial", "profile", "standing_wave_x");
  cfg.set("converge", "levels", "4,8");
  cfg.set("converge", "t_final", "0.25");
  cfg.set("output", "dir", (dir.path / "conv").string());
  RunOptions opts;

  SUBCASE("writes convergence.csv with one row per level") {
    std::ostringstream out;
    REQUIRE(cmdConverge(cfg, opts, out) == 0);
    std::string csv = readFile(dir.path / "conv" / "convergence.csv");
    CHECK(csv.rfind("h,dt,l2_error_omega,observed_order\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    // first row has no order entry, second row does
    std::istringstream lines(csv);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(row1.back() == ',');
    CHECK(row2.back() != ',');
  }
  SUBCASE("unknown mesh kind exits 1") {
    cfg.set("converge", "mesh", "annulus");
    std::ostringstream out;
    CHECK(cmdConverge(cfg, opts, out) == 1);
  }
  SUBCASE("missing levels exits 1") {
    Config bare;
    bare.set("bc", "kind", "normal_zero");
    std::ostringstream out;
    CHECK(cmdConverge(bare, opts, out) == 1);
  }
}
