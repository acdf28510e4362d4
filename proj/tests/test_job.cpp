#include "roboscan/error.hpp"
#include "roboscan/job.hpp"
#include "roboscan/meshio.hpp"
#include "roboscan/targets.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace roboscan;
namespace fs = std::filesystem;

namespace {

std::string airfoil_config(const std::string& extra_grid = "") {
  return "# airfoil scan\n"
         "[scene]\nmesh = wing.stl\ntable_z = 0\nfloor_mode = table\n\n"
         "[grid]\ncorner = 253 -72\nsafe_z = 50\nrows = 20\ncols = 25\nrow_spacing = 6\ncol_spacing = 6\nstep = 10\n" +
         extra_grid +
         "\n[noise]\nsigma = 0.01\ndrift = 0.00001\nseed = 42\n\n"
         "[output]\nstl = out/scan.stl\nxyz = out/scan.xyz\ntrace = out/trace.csv\nreport = out/report.txt\n";
}

fs::path setup(const std::string& name, const std::string& config) {
  const fs::path dir = testing::scratch_dir(name);
  meshio::write_file(dir / "wing.stl", meshio::write_stl_binary(make_wing(WingSpec{})));
  fs::create_directories(dir / "out");
  meshio::write_file(dir / "job.cfg", config);
  return dir;
}

std::string slurp(const fs::path& p) {
  const auto b = meshio::read_file(p);
  return std::string(b.begin(), b.end());
}

std::string parse_error_of(const std::string& text) {
  try {
    parse_job(text, "/tmp");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    return e.what();
  }
  FAIL("expected a parse error for: " << text);
  return {};
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(ROBOSCAN_CLI) + " " + args + " 2>&1";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  const int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_SUITE("job") {
  TEST_CASE("config parsing") {
    const ScanJob job = parse_job(airfoil_config("serpentine = true\n") +
                                      "[robot]\nd1 = 180\njoint2_limits = -10 120\n[test_b]\ndistances = 150 250\n",
                                  "/data/jobs");
    CHECK(job.scene.mesh == fs::path("/data/jobs/wing.stl"));
    CHECK(job.output.report == fs::path("/data/jobs/out/report.txt"));
    CHECK(job.grid.x0 == 253);
    CHECK(job.grid.y0 == -72);
    CHECK(job.grid.n_rows == 20);
    CHECK(job.grid.n_cols == 25);
    CHECK(job.grid.serpentine);
    CHECK(job.noise.seed == 42);
    CHECK(job.noise.drift_per_contact == 1e-5);
    CHECK(job.robot.d1 == 180);
    CHECK(job.robot.limits[1].lo == doctest::Approx(deg_to_rad(-10)));
    CHECK(job.robot.limits[1].hi == doctest::Approx(deg_to_rad(120)));
    CHECK(job.test_b.distances == std::vector<double>{150, 250});
  }

  TEST_CASE("parse errors carry the line number") {
    CHECK(parse_error_of("[grid]\nrows = 3\nrows = 4\n").find("line 3") != std::string::npos);
    CHECK(parse_error_of("[grid]\nrows = 3.5\n").find("line 2") != std::string::npos);
    CHECK(parse_error_of("\n\n[gird]\n").find("line 3") != std::string::npos);
    CHECK(parse_error_of("[grid]\ncolour = red\n").find("unknown key 'colour'") != std::string::npos);
    CHECK(parse_error_of("rows = 3\n").find("line 1") != std::string::npos);
    CHECK(parse_error_of("[grid]\ncorner = 1\n").find("expected 2") != std::string::npos);
    CHECK(parse_error_of("[grid]\nserpentine = maybe\n").find("line 2") != std::string::npos);
    CHECK(parse_error_of("[noise]\nsigma = abc\n").find("'abc'") != std::string::npos);
    CHECK(parse_error_of("[robot]\njoint7_limits = 0 1\n").find("unknown key") != std::string::npos);
    CHECK(parse_error_of("[robot]\njoint3_limits = 5 1\n").find("line 2") != std::string::npos);
    CHECK(parse_error_of("[scene]\nfloor_mode = lava\n").find("line 2") != std::string::npos);
    CHECK(parse_error_of("[grid\n").find("line 1") != std::string::npos);
  }

  TEST_CASE("echoed config parses back to itself") {
    const ScanJob job = parse_job(airfoil_config() + "[test_a]\ncenter = 310.5 -2 30\n[noise]\nsigma_per_mm = 1e-5\n",
                                  "/x");
    const std::string text = format_job(job);
    CHECK(format_job(parse_job(text, "/elsewhere")) == text);
    // Report-only sections are skipped on input.
    CHECK(format_job(parse_job("[result]\nstatus = ok\nanything = 1\n[summary]\nx = 2\n" + text, "/")) == text);
  }

  TEST_CASE("airfoil job end to end") {
    const fs::path dir = setup("job_airfoil", airfoil_config());
    const ScanJob job = load_job(dir / "job.cfg");
    const JobOutcome out = run_job(job);
    REQUIRE_MESSAGE(out.exit_code == kExitOk, out.message);
    CHECK(out.summary.probed == 500);
    CHECK(out.summary.mesh_contacts == 500);
    CHECK(out.summary.triangles == 912);

    const std::string xyz = slurp(dir / "out/scan.xyz");
    CHECK(std::count(xyz.begin(), xyz.end(), '\n') == 500);
    CHECK(fs::file_size(dir / "out/scan.stl") == 84 + 50 * 912);
    CHECK(meshio::load_stl(dir / "out/scan.stl").size() == 912);
    const std::string trace = slurp(dir / "out/trace.csv");
    CHECK(trace.rfind("index,theta1_deg,theta2_deg,theta3_deg,theta4_deg,theta5_deg,theta6_deg\n", 0) == 0);
    const std::string report = slurp(dir / "out/report.txt");
    CHECK(report.find("status = ok") != std::string::npos);
    CHECK(report.find("triangles = 912") != std::string::npos);
    CHECK(report.find(format_job(job)) != std::string::npos);

    // Rerun: identical bytes.
    const std::string stl = slurp(dir / "out/scan.stl");
    REQUIRE(run_job(job).exit_code == kExitOk);
    CHECK(slurp(dir / "out/scan.stl") == stl);
    CHECK(slurp(dir / "out/scan.xyz") == xyz);
    CHECK(slurp(dir / "out/trace.csv") == trace);
    CHECK(slurp(dir / "out/report.txt") == report);

    // The report is itself a config reproducing the run.
    const ScanJob again = parse_job(report, dir);
    CHECK(format_job(again) == format_job(job));
  }

  TEST_CASE("unreachable corner aborts without geometry") {
    std::string cfg = airfoil_config();
    cfg.replace(cfg.find("corner = 253 -72"), 16, "corner = 253 -72\n");
    cfg.replace(cfg.find("rows = 20"), 9, "rows = 60");  // far rows run past the reach limit
    const fs::path dir = setup("job_unreachable", cfg);
    const JobOutcome out = run_job(load_job(dir / "job.cfg"));
    CHECK(out.exit_code == kExitUnreachable);
    CHECK(out.stage == "precheck");
    CHECK_FALSE(fs::exists(dir / "out/scan.stl"));
    CHECK_FALSE(fs::exists(dir / "out/scan.xyz"));
    CHECK_FALSE(fs::exists(dir / "out/trace.csv"));
    const std::string report = slurp(dir / "out/report.txt");
    CHECK(report.find("exit_code = 3") != std::string::npos);
    CHECK(report.find("stage = precheck") != std::string::npos);
  }

  TEST_CASE("exit codes by error class") {
    CHECK(exit_code_for(ErrorKind::kParse) == 2);
    CHECK(exit_code_for(ErrorKind::kUnreachable) == 3);
    CHECK(exit_code_for(ErrorKind::kJointLimit) == 4);
    CHECK(exit_code_for(ErrorKind::kIo) == 5);
    CHECK(exit_code_for(ErrorKind::kSingular) == 6);
    CHECK(exit_code_for(ErrorKind::kInvalidArgument) == 7);

    std::string cfg = airfoil_config();
    cfg.replace(cfg.find("mesh = wing.stl"), 15, "mesh = nowhere.stl");
    const fs::path dir = setup("job_io", cfg);
    const JobOutcome out = run_job(load_job(dir / "job.cfg"));
    CHECK(out.exit_code == kExitIo);
    CHECK(out.stage == "load-scene");
  }

  TEST_CASE("command line") {
    const fs::path dir = setup("job_cli", airfoil_config());
    Run r = run_cli("scan " + (dir / "job.cfg").string());
    CHECK_MESSAGE(r.status == 0, r.out);
    CHECK(r.out.find("triangles = 912") != std::string::npos);

    r = run_cli("compare " + (dir / "out/scan.xyz").string() + " " + (dir / "out/scan.xyz").string());
    CHECK(r.status == 0);
    CHECK(r.out.find("cd = 0\n") != std::string::npos);

    r = run_cli("compare " + (dir / "out/scan.stl").string() + " " + (dir / "wing.stl").string() + " --samples 2000");
    CHECK(r.status == 0);
    CHECK(r.out.find("n = 2000") != std::string::npos);

    meshio::write_file(dir / "bad.cfg", std::string("[grid]\nrows = x\n"));
    r = run_cli("scan " + (dir / "bad.cfg").string());
    CHECK(r.status == 2);
    CHECK(r.out.find("line 2") != std::string::npos);

    CHECK(run_cli("scan " + (dir / "missing.cfg").string()).status == 5);
    CHECK(run_cli("ik 2000 0 0").status == 3);
    CHECK(run_cli("fk 0 200 0 0 0 0").status == 4);
    CHECK(run_cli("frobnicate").status == 1);

    r = run_cli("test-a");
    CHECK(r.status == 0);
    CHECK(r.out.find("Average                          0.000000") != std::string::npos);
    const Run a1 = run_cli("test-a --sigma 0.02 --seed 7"), a2 = run_cli("test-a --sigma 0.02 --seed 7");
    CHECK(a1.out == a2.out);

    r = run_cli("ik 400 0 60");
    CHECK(r.status == 0);
    CHECK(r.out.find("joints_deg = 0.000000") != std::string::npos);

    r = run_cli("make-target plate --out " + (dir / "plate.stl").string());
    CHECK(r.status == 0);
    CHECK(meshio::load_stl(dir / "plate.stl").size() == 12);
  }
}
