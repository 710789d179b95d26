#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lsd/matrix.hpp"
#include "lsd/stieltjes.hpp"
#include "lsd/support.hpp"

#include "json.hpp"

namespace lsd::io {

/// Shortest form that round-trips (17 significant digits).
std::string format_full(double v);
/// 6 significant digits, for logs.
std::string format_short(double v);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// '#'-prefixed metadata lines, then `x,density` rows.
void write_density_csv(std::ostream& out, const DensityCurve& curve,
                       std::span<const std::string> metadata);

struct DensityTable {
  std::vector<double> xs;
  std::vector<double> hs;
  std::vector<std::string> metadata;  ///< comment lines without the leading "# "
};

DensityTable read_density_csv(std::istream& in);

/// '#'-prefixed metadata lines, then `index,eigenvalue` rows in ascending order.
void write_eigenvalue_csv(std::ostream& out, std::span<const double> eigenvalues,
                          std::span<const std::string> metadata);

std::vector<double> read_eigenvalue_csv(std::istream& in);

/// One line per epoch t: `t,x_0t,...,x_{p-1}t`.
void write_panel_csv(std::ostream& out, const Matrix& panel);

nlohmann::json support_json(const SupportInfo& info);

}  // namespace lsd::io
