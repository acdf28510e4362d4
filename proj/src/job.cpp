#include "roboscan/job.hpp"

#include "roboscan/format.hpp"
#include "roboscan/meshio.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace roboscan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

struct Setting {
  int line;
  std::string key;
  std::string_view raw;  // everything after '='
};

class Parser {
 public:
  Parser(std::string_view text, std::filesystem::path base) : base_(std::move(base)) { tokenize(text); }

  ScanJob parse() {
    ScanJob job;
    for (const auto& [section, settings] : sections_) {
      for (const auto& s : settings) apply(job, section, s);
    }
    for (std::size_t j = 0; j < kNumJoints; ++j)
      job.robot.limits[j] = {deg_to_rad(job.limits_deg[j][0]), deg_to_rad(job.limits_deg[j][1])};
    return job;
  }

 private:
  [[noreturn]] static void fail(int line, const std::string& msg) {
    throw Error(ErrorKind::kParse, "config line " + std::to_string(line) + ": " + msg);
  }

  void tokenize(std::string_view text) {
    static const std::set<std::string> known{"robot", "scene", "grid", "noise", "output", "test_a", "test_b"};
    static const std::set<std::string> ignored{"result", "summary"};
    std::string section;
    bool skipping = false;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        skipping = ignored.count(section) > 0;
        if (!skipping && !known.count(section)) fail(line_no, "unknown section [" + section + "]");
        continue;
      }
      if (skipping) continue;
      if (section.empty()) fail(line_no, "setting outside of a section");
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) fail(line_no, "missing key");
      if (!seen.insert(section + "." + key).second) fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
      sections_.emplace_back();
      sections_.back().first = section;
      sections_.back().second.push_back({line_no, key, trim(line.substr(eq + 1))});
    }
  }

  static double number(const Setting& s, std::string_view tok) {
    double v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
      fail(s.line, "'" + s.key + "': expected a number, found '" + std::string(tok) + "'");
    return v;
  }

  static std::vector<double> numbers(const Setting& s, std::size_t want) {
    const auto toks = split_ws(s.raw);
    if (want && toks.size() != want)
      fail(s.line, "'" + s.key + "': expected " + std::to_string(want) + " value(s), found " + std::to_string(toks.size()));
    if (toks.empty()) fail(s.line, "'" + s.key + "': missing value");
    std::vector<double> out;
    for (auto t : toks) out.push_back(number(s, t));
    return out;
  }

  static double scalar(const Setting& s) { return numbers(s, 1)[0]; }

  static long long integer(const Setting& s) {
    const auto toks = split_ws(s.raw);
    long long v = 0;
    if (toks.size() == 1) {
      const auto res = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), v);
      if (res.ec == std::errc() && res.ptr == toks[0].data() + toks[0].size()) return v;
    }
    fail(s.line, "'" + s.key + "': expected an integer");
  }

  static bool boolean(const Setting& s) {
    if (s.raw == "true" || s.raw == "1" || s.raw == "yes") return true;
    if (s.raw == "false" || s.raw == "0" || s.raw == "no") return false;
    fail(s.line, "'" + s.key + "': expected true or false");
  }

  std::filesystem::path path(const Setting& s) const {
    if (s.raw.empty()) return {};
    std::filesystem::path p{std::string(s.raw)};
    if (p.is_relative()) p = base_ / p;
    return p.lexically_normal();
  }

  void apply(ScanJob& job, const std::string& section, const Setting& s) const {
    const std::string& k = s.key;
    auto unknown = [&] { fail(s.line, "unknown key '" + k + "' in [" + section + "]"); };
    if (section == "robot") {
      auto& r = job.robot;
      if (k == "d1") r.d1 = scalar(s);
      else if (k == "l1") r.l1 = scalar(s);
      else if (k == "l2") r.l2 = scalar(s);
      else if (k == "d4") r.d4 = scalar(s);
      else if (k == "d6") r.d6 = scalar(s);
      else if (k.size() == 13 && k.starts_with("joint") && k.ends_with("_limits") && k[5] >= '1' && k[5] <= '6') {
        const auto v = numbers(s, 2);
        if (!(v[0] <= v[1])) fail(s.line, "'" + k + "': lower limit exceeds upper limit");
        job.limits_deg[static_cast<std::size_t>(k[5] - '1')] = {v[0], v[1]};
      } else unknown();
    } else if (section == "scene") {
      if (k == "mesh") job.scene.mesh = path(s);
      else if (k == "table_z") job.scene.table_z = scalar(s);
      else if (k == "floor_mode") {
        if (s.raw == "table") job.scene.floor_mode = FloorMode::kTable;
        else if (s.raw == "skip") job.scene.floor_mode = FloorMode::kSkip;
        else fail(s.line, "floor_mode must be 'table' or 'skip'");
      } else unknown();
    } else if (section == "grid") {
      auto& g = job.grid;
      if (k == "corner") {
        const auto v = numbers(s, 2);
        g.x0 = v[0];
        g.y0 = v[1];
      } else if (k == "safe_z") g.safe_z = scalar(s);
      else if (k == "rows") g.n_rows = static_cast<int>(integer(s));
      else if (k == "cols") g.n_cols = static_cast<int>(integer(s));
      else if (k == "row_spacing") g.row_spacing = scalar(s);
      else if (k == "col_spacing") g.col_spacing = scalar(s);
      else if (k == "step") g.step = scalar(s);
      else if (k == "serpentine") g.serpentine = boolean(s);
      else unknown();
    } else if (section == "noise") {
      auto& n = job.noise;
      if (k == "sigma") n.sigma_contact = scalar(s);
      else if (k == "sigma_per_mm") n.sigma_per_mm = scalar(s);
      else if (k == "drift") n.drift_per_contact = scalar(s);
      else if (k == "seed") {
        const long long v = integer(s);
        if (v < 0) fail(s.line, "seed must be >= 0");
        n.seed = static_cast<std::uint64_t>(v);
      } else unknown();
    } else if (section == "output") {
      auto& o = job.output;
      if (k == "stl") o.stl = path(s);
      else if (k == "xyz") o.xyz = path(s);
      else if (k == "trace") o.trace = path(s);
      else if (k == "report") o.report = path(s);
      else if (k == "flip_normals") o.flip_normals = boolean(s);
      else if (k == "ascii_stl") o.ascii_stl = boolean(s);
      else unknown();
    } else if (section == "test_a") {
      auto& a = job.test_a;
      if (k == "center") {
        const auto v = numbers(s, 3);
        a.center = Vec3(v[0], v[1], v[2]);
      } else if (k == "diameter") a.diameter = scalar(s);
      else if (k == "standoff") a.standoff = scalar(s);
      else unknown();
    } else if (section == "test_b") {
      auto& b = job.test_b;
      if (k == "distances") b.distances = numbers(s, 0);
      else if (k == "repeats") b.repeats = static_cast<int>(integer(s));
      else if (k == "surface_z") b.surface_z = scalar(s);
      else if (k == "standoff") b.standoff = scalar(s);
      else unknown();
    }
  }

  std::filesystem::path base_;
  std::vector<std::pair<std::string, std::vector<Setting>>> sections_;
};

std::string join_exact(std::initializer_list<double> vs) {
  std::string out;
  for (double v : vs) {
    if (!out.empty()) out += ' ';
    out += exact(v);
  }
  return out;
}

std::string summary_block(const JobOutcome& o) {
  std::ostringstream os;
  os << "[result]\n";
  os << "status = " << (o.exit_code == kExitOk ? "ok" : "error") << "\n";
  os << "exit_code = " << o.exit_code << "\n";
  os << "stage = " << o.stage << "\n";
  if (!o.message.empty()) os << "message = " << o.message << "\n";
  os << "\n[summary]\n";
  os << "points_probed = " << o.summary.probed << "\n";
  os << "mesh_contacts = " << o.summary.mesh_contacts << "\n";
  os << "table_contacts = " << o.summary.table_contacts << "\n";
  os << "misses = " << o.summary.misses << "\n";
  os << "unreachable = " << o.summary.unreachable << "\n";
  os << "triangles = " << o.summary.triangles << "\n";
  return os.str();
}

}  // namespace

ScanJob parse_job(std::string_view text, const std::filesystem::path& base_dir) {
  return Parser(text, base_dir).parse();
}

ScanJob load_job(const std::filesystem::path& path) {
  const auto bytes = meshio::read_file(path);
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  auto base = std::filesystem::absolute(path).parent_path();
  try {
    return parse_job(text, base);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_job(const ScanJob& job) {
  std::ostringstream os;
  const auto& r = job.robot;
  os << "[robot]\n";
  os << "d1 = " << exact(r.d1) << "\nl1 = " << exact(r.l1) << "\nl2 = " << exact(r.l2) << "\nd4 = " << exact(r.d4)
     << "\nd6 = " << exact(r.d6) << "\n";
  for (std::size_t j = 0; j < kNumJoints; ++j)
    os << "joint" << (j + 1) << "_limits = " << join_exact({job.limits_deg[j][0], job.limits_deg[j][1]}) << "\n";
  os << "\n[scene]\n";
  os << "mesh = " << job.scene.mesh.string() << "\n";
  os << "table_z = " << exact(job.scene.table_z) << "\n";
  os << "floor_mode = " << to_string(job.scene.floor_mode) << "\n";
  const auto& g = job.grid;
  os << "\n[grid]\n";
  os << "corner = " << join_exact({g.x0, g.y0}) << "\n";
  os << "safe_z = " << exact(g.safe_z) << "\n";
  os << "rows = " << g.n_rows << "\ncols = " << g.n_cols << "\n";
  os << "row_spacing = " << exact(g.row_spacing) << "\ncol_spacing = " << exact(g.col_spacing) << "\n";
  os << "step = " << exact(g.step) << "\n";
  os << "serpentine = " << (g.serpentine ? "true" : "false") << "\n";
  const auto& n = job.noise;
  os << "\n[noise]\n";
  os << "sigma = " << exact(n.sigma_contact) << "\nsigma_per_mm = " << exact(n.sigma_per_mm)
     << "\ndrift = " << exact(n.drift_per_contact) << "\nseed = " << n.seed << "\n";
  const auto& o = job.output;
  os << "\n[output]\n";
  os << "stl = " << o.stl.string() << "\nxyz = " << o.xyz.string() << "\ntrace = " << o.trace.string()
     << "\nreport = " << o.report.string() << "\n";
  os << "flip_normals = " << (o.flip_normals ? "true" : "false") << "\n";
  os << "ascii_stl = " << (o.ascii_stl ? "true" : "false") << "\n";
  os << "\n[test_a]\n";
  os << "center = " << join_exact({job.test_a.center.x(), job.test_a.center.y(), job.test_a.center.z()}) << "\n";
  os << "diameter = " << exact(job.test_a.diameter) << "\nstandoff = " << exact(job.test_a.standoff) << "\n";
  os << "\n[test_b]\n";
  os << "distances =";
  for (double d : job.test_b.distances) os << ' ' << exact(d);
  os << "\nrepeats = " << job.test_b.repeats << "\nsurface_z = " << exact(job.test_b.surface_z)
     << "\nstandoff = " << exact(job.test_b.standoff) << "\n";
  return os.str();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return kExitConfig;
    case ErrorKind::kUnreachable: return kExitUnreachable;
    case ErrorKind::kJointLimit: return kExitJointLimit;
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kSingular: return kExitSingular;
    case ErrorKind::kInvalidArgument: return kExitInvalid;
  }
  return kExitInvalid;
}

std::string format_trace_csv(const JointTrace& trace) {
  std::string out = "index,theta1_deg,theta2_deg,theta3_deg,theta4_deg,theta5_deg,theta6_deg\n";
  for (const auto& e : trace) {
    out += std::to_string(e.index);
    for (int j = 0; j < kNumJoints; ++j) {
      out += ',';
      out += fixed6(rad_to_deg(e.angles[j]));
    }
    out += '\n';
  }
  return out;
}

JobOutcome run_job(const ScanJob& job) {
  JobOutcome outcome;
  ScanResult result;
  auto stage = [&](const char* name) { outcome.stage = name; };
  try {
    stage("validate");
    job.robot.validate();
    job.grid.validate();
    job.noise.validate();
    if (job.scene.mesh.empty()) throw Error(ErrorKind::kParse, "config: [scene] mesh is required");

    stage("load-scene");
    const TargetScene scene(meshio::load_stl(job.scene.mesh), job.scene.table_z, job.scene.floor_mode);

    stage("precheck");
    if (const auto bad = unreachable_grid_points(job.grid, job.robot); !bad.empty()) {
      std::ostringstream os;
      os << bad.size() << " grid point(s) unreachable at safe height, first (" << bad.front().first << ","
         << bad.front().second << ")";
      throw Error(ErrorKind::kUnreachable, os.str());
    }

    stage("scan");
    result = run_scan(job.grid, job.robot, scene, job.noise, TriangulateOptions{job.output.flip_normals});
    outcome.summary = result.summary;

    stage("write");
    // Encode everything first so an encoding failure leaves no artifacts behind.
    const auto stl = job.output.ascii_stl ? std::vector<std::uint8_t>{} : meshio::write_stl_binary(result.mesh);
    const auto stl_text = job.output.ascii_stl ? meshio::write_stl_ascii(result.mesh) : std::string{};
    if (!job.output.stl.empty()) {
      if (job.output.ascii_stl) meshio::write_file(job.output.stl, stl_text);
      else meshio::write_file(job.output.stl, stl);
    }
    if (!job.output.xyz.empty()) meshio::write_file(job.output.xyz, meshio::write_xyz(result.points.measured_points()));
    if (!job.output.trace.empty()) meshio::write_file(job.output.trace, format_trace_csv(result.trace));
    stage("done");
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e.kind());
    outcome.message = e.what();
  }

  if (!job.output.report.empty()) {
    try {
      meshio::write_file(job.output.report, "# roboscan scan report\n" + summary_block(outcome) + "\n" + format_job(job));
    } catch (const Error& e) {
      if (outcome.exit_code == kExitOk) {
        outcome.exit_code = exit_code_for(e.kind());
        outcome.message = e.what();
      }
    }
  }
  return outcome;
}

}  // namespace roboscan
