#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fkdv::io {

enum class ValueType { real, integer, boolean, string, real_list, int_list, string_list };

/// One typed configuration value. Only the member matching the type is set.
struct Value {
  ValueType type = ValueType::real;
  double real = 0.0;
  long integer = 0;
  bool boolean = false;
  std::string text;
  std::vector<double> reals;
  std::vector<long> integers;
  std::vector<std::string> strings;
};

struct SchemaEntry {
  std::string key;
  ValueType type;
  /// Raw default; "required" and "none" are markers.
  std::string default_text;
  std::string constraint;
  std::string description;

  bool required() const { return default_text == "required"; }
  bool optional_without_default() const { return default_text == "none"; }
};

struct Schema {
  std::string command;
  std::vector<SchemaEntry> entries;

  const SchemaEntry* find(std::string_view key) const;
};

/// Parses the schema text format: one `name type default constraint description`
/// row per key, `#` starts a comment line.
Schema parse_schema(std::string_view command, std::string_view text);

/// The shipped schema for a command, common keys included.
const Schema& schema_for(std::string_view command);

const std::vector<std::string>& commands();

struct RunConfig {
  std::string command;
  std::map<std::string, Value> values;
  /// Keys given explicitly in the document, in order, for the manifest echo.
  std::vector<std::string> explicit_keys;
  std::string output_dir = "out";
  long seed = 0;
  unsigned workers = 0;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool boolean(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  const std::vector<double>& reals(const std::string& key) const;
  const std::vector<long>& integers(const std::string& key) const;
  const std::vector<std::string>& strings(const std::string& key) const;
  /// The resolved configuration as `key = value` lines in schema order.
  std::string echo() const;
};

/// Every violation found in one pass.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> v);
  std::vector<std::string> violations;
};

/// Document format: `key = value` per line, `#` comments, arrays as
/// `[a, b, c]`, strings bare or double-quoted, booleans true/false. A
/// `command = name` line is allowed and must match `command`.
RunConfig parse_config(std::string_view document, std::string_view command);

/// Closest schema key by edit distance, if close enough to be a likely typo.
std::optional<std::string> nearest_key(const Schema& schema, std::string_view key);

std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace fkdv::io
