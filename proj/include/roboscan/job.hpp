#pragma once

// Scan-job configuration and end-to-end runners behind the command line.
//
// Config grammar (one setting per line):
//
//   file    := { line }
//   line    := blank | comment | section | setting
//   comment := '#' text
//   section := '[' name ']'
//   setting := key '=' value { value }      (values separated by spaces)
//
// Lengths are millimetres and angles degrees. Relative paths resolve against
// the directory of the config file. Sections: robot, scene, grid, noise,
// output, test_a, test_b. Sections [result] and [summary] are written by the
// tool into reports and are ignored on input, so a report can be fed back as
// a config.

#include "roboscan/error.hpp"
#include "roboscan/kinematics.hpp"
#include "roboscan/metrics.hpp"
#include "roboscan/scanner.hpp"
#include "roboscan/scene.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace roboscan {

struct SceneConfig {
  std::filesystem::path mesh;
  double table_z = 0.0;
  FloorMode floor_mode = FloorMode::kTable;
};

struct OutputConfig {
  std::filesystem::path stl;
  std::filesystem::path xyz;
  std::filesystem::path trace;
  std::filesystem::path report;
  bool flip_normals = false;
  bool ascii_stl = false;
};

struct ScanJob {
  RobotGeometry robot;  // limits derived from limits_deg
  std::array<std::array<double, 2>, kNumJoints> limits_deg = kDefaultLimitsDeg;
  SceneConfig scene;
  ScanGrid grid;
  NoiseModel noise;
  OutputConfig output;
  TestAConfig test_a;
  TestBConfig test_b;
};

/// Throws Error(kParse) with the offending line number.
ScanJob parse_job(std::string_view text, const std::filesystem::path& base_dir);
ScanJob load_job(const std::filesystem::path& path);

/// Config text that parses back to the same job.
std::string format_job(const ScanJob& job);

/// Process exit codes, one per error class.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitUnreachable = 3,
  kExitJointLimit = 4,
  kExitIo = 5,
  kExitSingular = 6,
  kExitInvalid = 7,
};

int exit_code_for(ErrorKind kind);

struct JobOutcome {
  int exit_code = kExitOk;
  std::string stage;    // last stage entered
  std::string message;  // diagnostic on failure
  ScanSummary summary;
};

/// Reachability pre-check, scan, triangulation, then artifact writes. No
/// geometry artifacts are written when any earlier stage fails; the report is
/// written in either case when a report path is configured.
JobOutcome run_job(const ScanJob& job);

std::string format_trace_csv(const JointTrace& trace);

}  // namespace roboscan
