#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "hjsweep/field.hpp"

namespace hjsweep::io {

// Text field format, version 1:
//
//   # hjsweep-field v1
//   # dim=2 xmin=<r> xmax=<r> ymin=<r> ymax=<r> I=<d> J=<d>
//   <J+1 lines of I+1 comma-separated values, row j = 0 first>
//
// 3D files add zmin, zmax, K and periodic_z to the second line and repeat the
// block of J+1 rows for every distinct k. Values use 17 significant digits in
// scientific notation ("inf" / "-inf" for infinities), so a round trip is
// bit-exact.

void write_field(std::ostream& os, const Field2& field);
void write_field(std::ostream& os, const Field3& field);
/// The k-th slab of a 3D field, written as a 2D file.
void write_slice(std::ostream& os, const Field3& field, int k);

void export_field(const Field2& field, const std::filesystem::path& path);
void export_field(const Field3& field, const std::filesystem::path& path);
void export_slice(const Field3& field, int k, const std::filesystem::path& path);

using AnyField = std::variant<Field2, Field3>;

/// Throws std::runtime_error naming the path (or "<stream>") on malformed input.
AnyField read_field(std::istream& is, const std::string& name = "<stream>");
AnyField import_field(const std::filesystem::path& path);

}  // namespace hjsweep::io
