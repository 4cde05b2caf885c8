#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>

namespace restframe::csv {

/// Shortest round-trip decimal representation ("%.17g"), locale independent.
std::string format(double v);

void row(std::ostream& os, std::initializer_list<double> values);
void row(std::ostream& os, std::span<const double> values);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace restframe::csv
