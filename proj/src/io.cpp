#include "mixedsde/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mixedsde/errors.hpp"

namespace mixedsde {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_path_csv(const std::filesystem::path& file, const GridPath& path) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot open " + file.string() + " for writing");
  out << "t,value\n";
  for (Eigen::Index k = 0; k <= path.steps(); ++k) {
    out << format_double(path.time(k)) << ',' << format_double(path.values[k]) << '\n';
  }
  if (!out) throw NumericError("write failed: " + file.string());
}

GridPath read_path_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(file.string() + ": empty file");

  std::vector<double> times, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(file.string() + ": malformed row");
    try {
      times.push_back(std::stod(line.substr(0, comma)));
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigError(file.string() + ": malformed number in row");
    }
  }
  if (times.size() < 2) throw ConfigError(file.string() + ": needs at least 2 rows");

  const double t0 = times.front();
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw ConfigError(file.string() + ": non-increasing time column");
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double expected = t0 + dt * static_cast<double>(k);
    if (std::abs(times[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ConfigError(file.string() + ": time column is not a uniform grid");
    }
  }
  Eigen::ArrayXd v = Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                      static_cast<Eigen::Index>(values.size()));
  GridPath path(t0, dt, std::move(v));
  path.require_finite(file.string().c_str());
  return path;
}

void write_table_csv(const std::filesystem::path& file,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot open " + file.string() + " for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw ConfigError("table row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw NumericError("write failed: " + file.string());
}

}  // namespace mixedsde
