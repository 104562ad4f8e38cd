#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "fkdv/report.hpp"

namespace fkdv::io {

/// I/O failure; what() names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::filesystem::path p)
      : std::runtime_error(what), path(std::move(p)) {}
  std::filesystem::path path;
};

/// Header row, then one line per row. Reals use 17 significant digits.
/// Strings are quoted when they contain a delimiter, a quote, a line break,
/// or would otherwise read back as a number. Every line ends in '\n'.
std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::filesystem::path& path);

/// Inverse of to_csv: unquoted fields that parse fully as a double become
/// numbers, everything else stays text.
Table parse_csv(const std::string& text, std::string name = {});
Table read_csv(const std::filesystem::path& path);

}  // namespace fkdv::io
