#include "restframe/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

#include "restframe/errors.hpp"

namespace restframe::csv {

std::string format(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

void row(std::ostream& os, std::span<const double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format(v);
    first = false;
  }
  os << '\n';
}

void row(std::ostream& os, std::initializer_list<double> values) {
  row(os, std::span<const double>(values.begin(), values.size()));
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw ValidationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ValidationError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace restframe::csv
