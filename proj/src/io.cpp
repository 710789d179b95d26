#include "lsd/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lsd/errors.hpp"

namespace lsd::io {

namespace {

double parse_double(std::string_view text, std::size_t lineno) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

void write_metadata(std::ostream& out, std::span<const std::string> metadata) {
  for (const auto& line : metadata) out << "# " << line << '\n';
}

// Splits "a,b" into two fields; anything else is a parse error.
std::pair<std::string_view, std::string_view> two_fields(std::string_view line, std::size_t lineno) {
  const auto comma = line.find(',');
  if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("line " + std::to_string(lineno) + ": expected two comma-separated fields");
  }
  return {line.substr(0, comma), line.substr(comma + 1)};
}

}  // namespace

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

void write_density_csv(std::ostream& out, const DensityCurve& curve,
                       std::span<const std::string> metadata) {
  write_metadata(out, metadata);
  out << "x,density\n";
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    out << format_full(curve.xs[i]) << ',' << format_full(curve.hs[i]) << '\n';
  }
}

DensityTable read_density_csv(std::istream& in) {
  DensityTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.metadata.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    if (!header) {
      if (line != "x,density") throw ParseError("density CSV: missing 'x,density' header");
      header = true;
      continue;
    }
    const auto [x, h] = two_fields(line, lineno);
    table.xs.push_back(parse_double(x, lineno));
    table.hs.push_back(parse_double(h, lineno));
  }
  if (!header) throw ParseError("density CSV: missing 'x,density' header");
  return table;
}

void write_eigenvalue_csv(std::ostream& out, std::span<const double> eigenvalues,
                          std::span<const std::string> metadata) {
  write_metadata(out, metadata);
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    out << i << ',' << format_full(eigenvalues[i]) << '\n';
  }
}

std::vector<double> read_eigenvalue_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "index,eigenvalue") throw ParseError("eigenvalue CSV: missing header");
      header = true;
      continue;
    }
    values.push_back(parse_double(two_fields(line, lineno).second, lineno));
  }
  if (!header) throw ParseError("eigenvalue CSV: missing header");
  return values;
}

void write_panel_csv(std::ostream& out, const Matrix& panel) {
  out << "t";
  for (std::size_t i = 0; i < panel.rows(); ++i) out << ",x" << i;
  out << '\n';
  for (std::size_t t = 0; t < panel.cols(); ++t) {
    out << t + 1;
    for (std::size_t i = 0; i < panel.rows(); ++i) out << ',' << format_full(panel(i, t));
    out << '\n';
  }
}

nlohmann::json support_json(const SupportInfo& info) {
  return {
      {"x1", info.x1},
      {"x2", info.x2},
      {"s1", info.s1},
      {"s2", info.s2},
      {"a", info.a},
      {"b", info.b},
      {"point_mass_at_zero", info.point_mass_at_zero},
      {"c", info.c},
      {"hard_edge_at_zero", info.hard_edge_at_zero},
  };
}

}  // namespace lsd::io
