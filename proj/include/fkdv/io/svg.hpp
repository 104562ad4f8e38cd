#pragma once

#include <filesystem>
#include <string>

#include "fkdv/report.hpp"

namespace fkdv::io {

/// Line or scatter plot of fig.y_columns against fig.x_column of `table`.
/// On log axes non-positive values are skipped.
std::string render_svg(const FigureSpec& fig, const Table& table);
void write_svg(const FigureSpec& fig, const Table& table, const std::filesystem::path& path);

}  // namespace fkdv::io
