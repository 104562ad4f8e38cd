#include "fkdv/io/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fkdv::io {
namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parses_as_real(const std::string& s, double* out = nullptr) {
  if (s.empty() || std::isspace(static_cast<unsigned char>(s.front()))) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  if (out) *out = v;
  return true;
}

std::string quote_if_needed(const std::string& s) {
  const bool special = s.find_first_of(",\"\r\n") != std::string::npos;
  if (!special && !parses_as_real(s)) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_file(const std::string& body, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message(), path);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing", path);
  out << body;
  out.close();
  if (!out) throw IoError("write to " + path.string() + " failed", path);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += quote_if_needed(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_real(*d);
      } else {
        out += quote_if_needed(std::get<std::string>(row[i]));
      }
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  write_file(to_csv(table), path);
}

Table parse_csv(const std::string& text, std::string name) {
  std::vector<std::vector<Cell>> records;
  std::vector<Cell> record;
  std::string field;
  bool quoted = false, was_quoted = false, any = false;
  auto end_field = [&] {
    double v = 0.0;
    if (!was_quoted && parses_as_real(field, &v)) {
      record.emplace_back(v);
    } else {
      record.emplace_back(field);
    }
    field.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = was_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_field();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted field");
  if (any) {
    end_field();
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::invalid_argument("missing header row");

  std::vector<std::string> header;
  for (const auto& c : records.front()) {
    header.push_back(std::holds_alternative<std::string>(c) ? std::get<std::string>(c)
                                                            : format_real(std::get<double>(c)));
  }
  Table t(std::move(name), std::move(header));
  for (std::size_t r = 1; r < records.size(); ++r) t.add_row(std::move(records[r]));
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_csv(buf.str(), path.stem().string());
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what(), path);
  }
}

}  // namespace fkdv::io
