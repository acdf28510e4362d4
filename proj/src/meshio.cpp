#include "roboscan/meshio.hpp"

#include "roboscan/error.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace roboscan::meshio {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f32(const std::uint8_t* p) { return static_cast<double>(std::bit_cast<float>(get_u32(p))); }

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::kParse, msg); }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

// Whitespace tokenizer that remembers the line of each token.
class Tokens {
 public:
  explicit Tokens(std::string_view text) : text_(text) {}

  bool next(std::string_view& tok) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok = text_.substr(start, pos_ - start);
    return true;
  }

  // Remainder of the current line, used for solid/endsolid names.
  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  int line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string at_line(int line) { return " at line " + std::to_string(line); }

void expect(Tokens& t, std::string_view word) {
  std::string_view tok;
  if (!t.next(tok)) parse_error("ASCII STL: expected '" + std::string(word) + "' but reached end of file" + at_line(t.line()));
  if (tok != word)
    parse_error("ASCII STL: expected '" + std::string(word) + "', found '" + std::string(tok) + "'" + at_line(t.line()));
}

Vec3 read_vec(Tokens& t) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    std::string_view tok;
    if (!t.next(tok)) parse_error("ASCII STL: truncated coordinate" + at_line(t.line()));
    double d = 0;
    if (!parse_double(tok, d)) parse_error("ASCII STL: malformed number '" + std::string(tok) + "'" + at_line(t.line()));
    v[i] = d;
  }
  return v;
}

TriangleMesh read_ascii(std::string_view text) {
  Tokens t(text);
  expect(t, "solid");
  t.skip_line();
  TriangleMesh mesh;
  std::string_view tok;
  while (true) {
    if (!t.next(tok)) parse_error("ASCII STL: missing 'endsolid'" + at_line(t.line()));
    if (tok == "endsolid") break;
    if (tok != "facet") parse_error("ASCII STL: expected 'facet', found '" + std::string(tok) + "'" + at_line(t.line()));
    expect(t, "normal");
    Triangle tri;
    tri.normal = read_vec(t);
    expect(t, "outer");
    expect(t, "loop");
    for (Vec3* v : {&tri.v1, &tri.v2, &tri.v3}) {
      expect(t, "vertex");
      *v = read_vec(t);
    }
    expect(t, "endloop");
    expect(t, "endfacet");
    mesh.push_back(tri);
  }
  return mesh;
}

bool looks_ascii(std::span<const std::uint8_t> bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(bytes[i])) ++i;
  return bytes.size() - i >= 5 && std::memcmp(bytes.data() + i, "solid", 5) == 0;
}

TriangleMesh read_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kStlHeaderSize + 4)
    parse_error("binary STL: truncated header, file has " + std::to_string(bytes.size()) + " bytes, need 84");
  const std::uint32_t count = get_u32(bytes.data() + kStlHeaderSize);
  const std::uint64_t expected = kStlHeaderSize + 4 + std::uint64_t{kStlRecordSize} * count;
  if (bytes.size() < expected) {
    const std::uint64_t whole = (bytes.size() - kStlHeaderSize - 4) / kStlRecordSize;
    parse_error("binary STL: truncated at byte " + std::to_string(kStlHeaderSize + 4 + whole * kStlRecordSize) +
                " in triangle " + std::to_string(whole) + " of " + std::to_string(count));
  }
  if (bytes.size() != expected)
    parse_error("binary STL: count mismatch, header declares " + std::to_string(count) + " triangles (" +
                std::to_string(expected) + " bytes) but file has " + std::to_string(bytes.size()) + " bytes");
  TriangleMesh mesh(count);
  const std::uint8_t* p = bytes.data() + kStlHeaderSize + 4;
  for (auto& tri : mesh) {
    for (Vec3* v : {&tri.normal, &tri.v1, &tri.v2, &tri.v3}) {
      for (int i = 0; i < 3; ++i, p += 4) (*v)[i] = get_f32(p);
    }
    p += 2;
  }
  return mesh;
}

}  // namespace

std::vector<std::uint8_t> write_stl_binary(const TriangleMesh& mesh) {
  if (mesh.size() > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::kInvalidArgument, "binary STL: triangle count exceeds 2^32 - 1");
  std::vector<std::uint8_t> out;
  out.reserve(kStlHeaderSize + 4 + kStlRecordSize * mesh.size());
  out.insert(out.end(), kStlSignature.begin(), kStlSignature.end());
  out.resize(kStlHeaderSize, 0);
  put_u32(out, static_cast<std::uint32_t>(mesh.size()));
  for (const auto& t : mesh) {
    for (const Vec3* v : {&t.normal, &t.v1, &t.v2, &t.v3}) {
      put_f32(out, v->x());
      put_f32(out, v->y());
      put_f32(out, v->z());
    }
    out.push_back(0);
    out.push_back(0);
  }
  return out;
}

std::string write_stl_ascii(const TriangleMesh& mesh, std::string_view name) {
  std::string out;
  out += "solid ";
  out += name;
  out += '\n';
  auto vec = [&](const Vec3& v) {
    out += format_double(v.x()) + ' ' + format_double(v.y()) + ' ' + format_double(v.z()) + '\n';
  };
  for (const auto& t : mesh) {
    out += "  facet normal ";
    vec(t.normal);
    out += "    outer loop\n";
    for (const Vec3* v : {&t.v1, &t.v2, &t.v3}) {
      out += "      vertex ";
      vec(*v);
    }
    out += "    endloop\n  endfacet\n";
  }
  out += "endsolid ";
  out += name;
  out += '\n';
  return out;
}

TriangleMesh read_stl(std::span<const std::uint8_t> bytes) {
  if (looks_ascii(bytes)) {
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    try {
      return read_ascii(text);
    } catch (const Error&) {
      // Binary files may legally start with "solid"; accept them if the size law holds.
      if (bytes.size() >= kStlHeaderSize + 4) {
        const std::uint32_t count = get_u32(bytes.data() + kStlHeaderSize);
        if (bytes.size() == kStlHeaderSize + 4 + std::uint64_t{kStlRecordSize} * count) return read_binary(bytes);
      }
      throw;
    }
  }
  return read_binary(bytes);
}

std::string write_xyz(const PointCloud& points) {
  std::string out;
  out.reserve(points.size() * 40);
  char buf[128];
  for (const auto& p : points) {
    const int n = std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", p.x(), p.y(), p.z());
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

PointCloud read_xyz(std::string_view text) {
  PointCloud cloud;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    Tokens t(line);
    std::string_view tok;
    std::array<double, 3> xyz{};
    int n = 0;
    while (t.next(tok)) {
      if (n == 3 || !parse_double(tok, xyz[static_cast<std::size_t>(n)]))
        parse_error("XYZ: malformed line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
      ++n;
    }
    if (n == 0) continue;
    if (n != 3) parse_error("XYZ: malformed line " + std::to_string(line_no) + ": expected 3 values, found " + std::to_string(n));
    cloud.emplace_back(xyz[0], xyz[1], xyz[2]);
  }
  return cloud;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed for '" + path.string() + "'");
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot open '" + tmp.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::kIo, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

TriangleMesh load_stl(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return read_stl(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

PointCloud load_xyz(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return read_xyz(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace roboscan::meshio
