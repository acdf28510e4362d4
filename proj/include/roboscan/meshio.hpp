#pragma once

// STL (binary and ASCII) and XYZ point-cloud interchange.
//
// Binary STL layout, little-endian:
//   80-byte header | u32 count | count x (12 x f32 normal,v1,v2,v3 | u16 attr=0)
// so a file is always 84 + 50 * count bytes. Coordinates are narrowed to
// 32-bit floats on write.

#include "roboscan/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roboscan::meshio {

inline constexpr std::size_t kStlHeaderSize = 80;
inline constexpr std::size_t kStlRecordSize = 50;

/// Header text written into binary files; zero padded to 80 bytes.
inline constexpr std::string_view kStlSignature = "roboscan binary STL";

std::vector<std::uint8_t> write_stl_binary(const TriangleMesh& mesh);
std::string write_stl_ascii(const TriangleMesh& mesh, std::string_view name = "roboscan");

/// Auto-detects ASCII vs binary. Throws Error(kParse) with a byte offset or line number.
TriangleMesh read_stl(std::span<const std::uint8_t> bytes);

/// Six fractional digits, one "x y z" line per point.
std::string write_xyz(const PointCloud& points);
PointCloud read_xyz(std::string_view text);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes atomically via a temporary sibling file.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, std::string_view text);

TriangleMesh load_stl(const std::filesystem::path& path);
PointCloud load_xyz(const std::filesystem::path& path);

}  // namespace roboscan::meshio
