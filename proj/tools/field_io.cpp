#include "field_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace hjsweep::io {

namespace {

constexpr const char* kMagic = "# hjsweep-field v1";

std::string format_value(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

double parse_value(std::string_view s, const std::string& name) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error(name + ": bad number '" + std::string(s) + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& name) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error(name + ": bad integer '" + s + "'");
  return v;
}

template <class Get>
void write_rows(std::ostream& os, int I, int J, Get&& get) {
  std::string line;
  for (int j = 0; j <= J; ++j) {
    line.clear();
    for (int i = 0; i <= I; ++i) {
      if (i) line += ',';
      line += format_value(get(i, j));
    }
    line += '\n';
    os << line;
  }
}

void write_header2(std::ostream& os, double xmin, double xmax, double ymin, double ymax, int I, int J) {
  os << kMagic << '\n'
     << "# dim=2 xmin=" << format_value(xmin) << " xmax=" << format_value(xmax) << " ymin=" << format_value(ymin)
     << " ymax=" << format_value(ymax) << " I=" << I << " J=" << J << '\n';
}

template <class Set>
void read_rows(std::istream& is, int I, int J, const std::string& name, Set&& set) {
  std::string line;
  for (int j = 0; j <= J; ++j) {
    if (!std::getline(is, line)) throw std::runtime_error(name + ": truncated data");
    std::string_view rest(line);
    for (int i = 0; i <= I; ++i) {
      const auto comma = rest.find(',');
      const bool last = i == I;
      if (last != (comma == std::string_view::npos))
        throw std::runtime_error(name + ": row " + std::to_string(j) + " has the wrong number of values");
      set(i, j, parse_value(rest.substr(0, comma), name));
      if (!last) rest.remove_prefix(comma + 1);
    }
  }
}

template <class Write>
void to_file(const std::filesystem::path& path, Write&& write) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
  write(os);
  os.flush();
  if (!os) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

void write_field(std::ostream& os, const Field2& field) {
  const Grid2& g = field.grid();
  write_header2(os, g.xmin(), g.xmax(), g.ymin(), g.ymax(), g.I(), g.J());
  write_rows(os, g.I(), g.J(), [&](int i, int j) { return field(i, j); });
}

void write_field(std::ostream& os, const Field3& field) {
  const Grid3& g = field.grid();
  os << kMagic << '\n'
     << "# dim=3 xmin=" << format_value(g.xmin()) << " xmax=" << format_value(g.xmax())
     << " ymin=" << format_value(g.ymin()) << " ymax=" << format_value(g.ymax())
     << " zmin=" << format_value(g.zmin()) << " zmax=" << format_value(g.zmax()) << " I=" << g.I()
     << " J=" << g.J() << " K=" << g.K() << " periodic_z=" << (g.periodic_z() ? 1 : 0) << '\n';
  for (int k = 0; k < g.nodes_z(); ++k) write_rows(os, g.I(), g.J(), [&](int i, int j) { return field(i, j, k); });
}

void write_slice(std::ostream& os, const Field3& field, int k) {
  const Grid3& g = field.grid();
  if (k < 0 || k >= g.nodes_z()) throw std::out_of_range("write_slice: k outside the grid");
  write_header2(os, g.xmin(), g.xmax(), g.ymin(), g.ymax(), g.I(), g.J());
  write_rows(os, g.I(), g.J(), [&](int i, int j) { return field(i, j, k); });
}

void export_field(const Field2& field, const std::filesystem::path& path) {
  to_file(path, [&](std::ostream& os) { write_field(os, field); });
}

void export_field(const Field3& field, const std::filesystem::path& path) {
  to_file(path, [&](std::ostream& os) { write_field(os, field); });
}

void export_slice(const Field3& field, int k, const std::filesystem::path& path) {
  to_file(path, [&](std::ostream& os) { write_slice(os, field, k); });
}

AnyField read_field(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw std::runtime_error(name + ": missing '" + kMagic + "' header");
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw std::runtime_error(name + ": missing dimension line");

  std::map<std::string, std::string> kv;
  std::istringstream hs(line.substr(2));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error(name + ": bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error(name + ": header lacks '" + key + "'");
    return it->second;
  };
  auto real = [&](const std::string& key) { return parse_value(get(key), name); };
  auto integer = [&](const std::string& key) { return parse_int(get(key), name); };

  const int dim = integer("dim");
  if (dim == 2) {
    const Grid2 g({real("xmin"), real("xmax"), real("ymin"), real("ymax")}, integer("I"), integer("J"), 1);
    Field2 f(g, FieldOrientation::MinInfInit);
    read_rows(is, g.I(), g.J(), name, [&](int i, int j, double v) { f(i, j) = v; });
    return f;
  }
  if (dim == 3) {
    const Grid3 g({real("xmin"), real("xmax"), real("ymin"), real("ymax"), real("zmin"), real("zmax")}, integer("I"),
                  integer("J"), integer("K"), 1, integer("periodic_z") != 0);
    Field3 f(g, FieldOrientation::MinInfInit);
    for (int k = 0; k < g.nodes_z(); ++k)
      read_rows(is, g.I(), g.J(), name, [&](int i, int j, double v) { f(i, j, k) = v; });
    return f;
  }
  throw std::runtime_error(name + ": unsupported dim " + std::to_string(dim));
}

AnyField import_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error(path.string() + ": cannot open for reading");
  return read_field(is, path.string());
}

}  // namespace hjsweep::io
