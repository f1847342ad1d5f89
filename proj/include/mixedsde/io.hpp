#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mixedsde/grid_path.hpp"

namespace mixedsde {

// 17 significant digits: doubles round-trip losslessly through the CSV.
std::string format_double(double x);

// CSV with header "t,value", one row per grid point.
void write_path_csv(const std::filesystem::path& file, const GridPath& path);

// Reads a two-column CSV written by write_path_csv (any header names are
// accepted); the time column must form a uniform grid.
GridPath read_path_csv(const std::filesystem::path& file);

// Generic rectangular CSV used for per-seed records and plot data.
void write_table_csv(const std::filesystem::path& file,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

}  // namespace mixedsde
