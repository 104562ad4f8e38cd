#include "fkdv/io/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "fkdv/report.hpp"

namespace fkdv::io {
namespace {

struct EmbeddedSchema {
  const char* command;
  const char* text;
};

constexpr EmbeddedSchema kEmbedded[] = {
#include "fkdv_schemas.inc"
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<ValueType> parse_type(const std::string& t) {
  if (t == "real") return ValueType::real;
  if (t == "int") return ValueType::integer;
  if (t == "bool") return ValueType::boolean;
  if (t == "string") return ValueType::string;
  if (t == "real_list") return ValueType::real_list;
  if (t == "int_list") return ValueType::int_list;
  if (t == "string_list") return ValueType::string_list;
  return std::nullopt;
}

std::optional<double> to_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_integer(const std::string& s) {
  if (s.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) return std::nullopt;
  return v;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

// Splits "[a, b, "c,d"]" into its elements; nullopt when the brackets are missing.
std::optional<std::vector<std::string>> split_list(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  const std::string body = trim(std::string_view(s).substr(1, s.size() - 2));
  std::vector<std::string> out;
  if (body.empty()) return out;
  std::string cur;
  bool quoted = false;
  for (char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string type_name(ValueType t) {
  switch (t) {
    case ValueType::real: return "a real number";
    case ValueType::integer: return "an integer";
    case ValueType::boolean: return "true or false";
    case ValueType::string: return "a string";
    case ValueType::real_list: return "a list of real numbers";
    case ValueType::int_list: return "a list of integers";
    case ValueType::string_list: return "a list of strings";
  }
  return "a value";
}

// Parses `raw` as type t. Returns an error message on failure.
std::optional<std::string> parse_value(ValueType t, const std::string& raw, Value& out) {
  out = Value{};
  out.type = t;
  switch (t) {
    case ValueType::real: {
      const auto v = to_real(raw);
      if (!v) return "must be " + type_name(t) + " (got '" + raw + "')";
      out.real = *v;
      return std::nullopt;
    }
    case ValueType::integer: {
      const auto v = to_integer(raw);
      if (!v) return "must be " + type_name(t) + " (got '" + raw + "')";
      out.integer = *v;
      out.real = static_cast<double>(*v);
      return std::nullopt;
    }
    case ValueType::boolean:
      if (raw == "true") {
        out.boolean = true;
      } else if (raw == "false") {
        out.boolean = false;
      } else {
        return "must be " + type_name(t) + " (got '" + raw + "')";
      }
      return std::nullopt;
    case ValueType::string:
      out.text = unquote(raw);
      return std::nullopt;
    default:
      break;
  }
  const auto items = split_list(raw);
  if (!items) return "must be " + type_name(t) + " written as [a, b, ...] (got '" + raw + "')";
  for (const auto& item : *items) {
    if (t == ValueType::real_list) {
      const auto v = to_real(item);
      if (!v) return "must be " + type_name(t) + " (bad element '" + item + "')";
      out.reals.push_back(*v);
    } else if (t == ValueType::int_list) {
      const auto v = to_integer(item);
      if (!v) return "must be " + type_name(t) + " (bad element '" + item + "')";
      out.integers.push_back(*v);
      out.reals.push_back(static_cast<double>(*v));
    } else {
      out.strings.push_back(unquote(item));
    }
  }
  return std::nullopt;
}

// Checks one scalar against a constraint expression such as ">0", "[-1,2)",
// "even&>=8" or "one_of:a|b". Returns the failure message.
std::optional<std::string> check_constraint(const std::string& constraint, double num,
                                            const std::string& text, bool numeric) {
  if (constraint.empty() || constraint == "-") return std::nullopt;
  std::stringstream ss(constraint);
  std::string tok;
  while (std::getline(ss, tok, '&')) {
    if (tok.rfind("one_of:", 0) == 0) {
      std::vector<std::string> options;
      std::stringstream os(tok.substr(7));
      std::string o;
      while (std::getline(os, o, '|')) options.push_back(o);
      if (std::find(options.begin(), options.end(), text) == options.end()) {
        std::string list;
        for (const auto& x : options) list += (list.empty() ? "" : ", ") + x;
        return "must be one of " + list + " (got '" + text + "')";
      }
      continue;
    }
    if (!numeric) continue;
    const std::string got = " (got " + format_double(num) + ")";
    if (tok == "even") {
      if (std::fmod(num, 2.0) != 0.0) return "must be even" + got;
      continue;
    }
    if (tok.front() == '[' || tok.front() == '(') {
      const auto comma = tok.find(',');
      const auto lo = to_real(tok.substr(1, comma - 1));
      const auto hi = to_real(tok.substr(comma + 1, tok.size() - comma - 2));
      const bool lo_ok = tok.front() == '[' ? num >= *lo : num > *lo;
      const bool hi_ok = tok.back() == ']' ? num <= *hi : num < *hi;
      if (!lo_ok || !hi_ok) return "must lie in " + tok + got;
      continue;
    }
    std::string op;
    std::size_t k = 0;
    while (k < tok.size() && (tok[k] == '<' || tok[k] == '>' || tok[k] == '=')) op += tok[k++];
    const double bound = *to_real(tok.substr(k));
    bool ok = true;
    if (op == ">") ok = num > bound;
    if (op == ">=") ok = num >= bound;
    if (op == "<") ok = num < bound;
    if (op == "<=") ok = num <= bound;
    if (!ok) return "must be " + op + " " + format_double(bound) + got;
  }
  return std::nullopt;
}

std::optional<std::string> check_value(const SchemaEntry& e, const Value& v) {
  switch (v.type) {
    case ValueType::real:
    case ValueType::integer:
      return check_constraint(e.constraint, v.real, format_double(v.real), true);
    case ValueType::boolean:
      return std::nullopt;
    case ValueType::string:
      return check_constraint(e.constraint, 0.0, v.text, false);
    case ValueType::real_list:
    case ValueType::int_list:
      for (double x : v.reals) {
        if (auto m = check_constraint(e.constraint, x, format_double(x), true)) return "elements " + *m;
      }
      return std::nullopt;
    case ValueType::string_list:
      for (const auto& s : v.strings) {
        if (auto m = check_constraint(e.constraint, 0.0, s, false)) return "elements " + *m;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

bool increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

// Rules that tie several keys together.
void cross_checks(const RunConfig& c, std::vector<std::string>& out) {
  auto have = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (!c.has(k)) return false;
    }
    return true;
  };
  const std::string& cmd = c.command;
  if (cmd == "inflate-periodic" && have({"s", "allow_any_s", "n_values", "alpha"})) {
    const double s = c.real("s");
    if (!c.boolean("allow_any_s") && !(s < -2.0)) out.push_back("s must be < -2 (the two-mode construction needs s < -2; set allow_any_s = true for scaling studies)");
    if (!increasing(c.reals("n_values"))) out.push_back("n_values must be increasing");
    if (c.reals("n_values").empty()) out.push_back("n_values must not be empty");
  }
  if (cmd == "inflate-line" && have({"s", "alpha", "allow_any_s", "time_fractions"})) {
    const double s = c.real("s"), a = c.real("alpha");
    if (!c.boolean("allow_any_s")) {
      if (!(a >= -1.0 && a < -1.0 / 3.0)) out.push_back("alpha must lie in [-1, -1/3)");
      if (!(s > 5.0 / 6.0 && s < 0.5 - a)) out.push_back("s must lie in (5/6, 1/2 - alpha)");
    }
    if (!increasing(c.reals("time_fractions"))) out.push_back("time_fractions must be increasing");
  }
  if (cmd == "zero-dispersion" && have({"nu_values", "T_obs", "amplitude", "datum"})) {
    if (!decreasing(c.reals("nu_values"))) out.push_back("nu_values must be decreasing");
    if (c.reals("nu_values").size() < 2) out.push_back("nu_values needs at least two entries");
    // inf u0' = -amplitude for both shipped data.
    const double T_star = 1.0 / c.real("amplitude");
    if (!(c.real("T_obs") < 0.95 * T_star)) {
      out.push_back("T_obs must be < 0.95 T* = " + format_double(0.95 * T_star));
    }
  }
  if (cmd == "breaking-time" && have({"alpha", "allow_any_alpha"})) {
    const double a = c.real("alpha");
    if (!c.boolean("allow_any_alpha") && !(a > -1.0 && a < -1.0 / 3.0)) {
      out.push_back("alpha must lie in (-1, -1/3)");
    }
  }
  if (cmd == "symmetry-check" && have({"omega", "t", "N", "period"})) {
    const double cells = c.real("omega") * c.real("t") * c.real("N") / c.real("period");
    const double whole = std::round(cells);
    if (std::abs(cells - whole) > 1e-9 * std::max(1.0, std::abs(cells))) {
      const double nearest = whole * c.real("period") / (c.real("N") * c.real("t"));
      char shown[32];
      std::snprintf(shown, sizeof shown, "%.12g", nearest);
      out.push_back("omega t N / period = " + format_double(cells) +
                    " must be an integer; nearest valid omega is " + shown);
    }
  }
  if (cmd == "burgers" && c.has("gaps") && c.reals("gaps").size() < 2) {
    out.push_back("gaps needs at least two entries");
  }
}

}  // namespace

const SchemaEntry* Schema::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

Schema parse_schema(std::string_view command, std::string_view text) {
  Schema s;
  s.command = std::string(command);
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream row(t);
    SchemaEntry e;
    std::string type;
    if (!(row >> e.key >> type >> e.default_text >> e.constraint)) {
      throw std::invalid_argument("schema " + s.command + " line " + std::to_string(lineno) +
                                  ": expected name, type, default, constraint");
    }
    const auto vt = parse_type(type);
    if (!vt) {
      throw std::invalid_argument("schema " + s.command + " line " + std::to_string(lineno) +
                                  ": unknown type " + type);
    }
    e.type = *vt;
    std::getline(row, e.description);
    e.description = trim(e.description);
    s.entries.push_back(std::move(e));
  }
  return s;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"simulate",        "burgers",       "inflate-periodic",
                                             "inflate-line",    "zero-dispersion", "breaking-time",
                                             "symmetry-check"};
  return list;
}

const Schema& schema_for(std::string_view command) {
  static const std::map<std::string, Schema, std::less<>> table = [] {
    std::map<std::string, Schema, std::less<>> m;
    std::string common;
    for (const auto& e : kEmbedded) {
      if (std::string_view(e.command) == "common") common = e.text;
    }
    for (const auto& e : kEmbedded) {
      if (std::string_view(e.command) == "common") continue;
      m.emplace(e.command, parse_schema(e.command, std::string(e.text) + "\n" + common));
    }
    return m;
  }();
  const auto it = table.find(command);
  if (it == table.end()) throw std::invalid_argument("unknown command '" + std::string(command) + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const { return values.at(key).real; }
long RunConfig::integer(const std::string& key) const { return values.at(key).integer; }
bool RunConfig::boolean(const std::string& key) const { return values.at(key).boolean; }
const std::string& RunConfig::text(const std::string& key) const { return values.at(key).text; }
const std::vector<double>& RunConfig::reals(const std::string& key) const {
  return values.at(key).reals;
}
const std::vector<long>& RunConfig::integers(const std::string& key) const {
  return values.at(key).integers;
}
const std::vector<std::string>& RunConfig::strings(const std::string& key) const {
  return values.at(key).strings;
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << "command = " << command << "\n";
  for (const auto& e : schema_for(command).entries) {
    const auto it = values.find(e.key);
    if (it == values.end()) continue;
    const Value& v = it->second;
    out << e.key << " = ";
    switch (v.type) {
      case ValueType::real: out << format_double(v.real); break;
      case ValueType::integer: out << v.integer; break;
      case ValueType::boolean: out << (v.boolean ? "true" : "false"); break;
      case ValueType::string: out << v.text; break;
      case ValueType::real_list:
      case ValueType::int_list:
      case ValueType::string_list: {
        out << "[";
        const std::size_t n = v.type == ValueType::string_list ? v.strings.size() : v.reals.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (i) out << ", ";
          if (v.type == ValueType::string_list) {
            out << v.strings[i];
          } else if (v.type == ValueType::int_list) {
            out << v.integers[i];
          } else {
            out << format_double(v.reals[i]);
          }
        }
        out << "]";
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& s : v) msg += "\n  " + s;
        return msg;
      }()),
      violations(std::move(v)) {}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::optional<std::string> nearest_key(const Schema& schema, std::string_view key) {
  std::optional<std::string> best;
  std::size_t best_d = 0;
  for (const auto& e : schema.entries) {
    const std::size_t d = edit_distance(key, e.key);
    if (!best || d < best_d) {
      best = e.key;
      best_d = d;
    }
  }
  const std::size_t limit = std::max<std::size_t>(2, key.size() / 3);
  if (best && best_d <= limit) return best;
  return std::nullopt;
}

RunConfig parse_config(std::string_view document, std::string_view command) {
  std::vector<std::string> violations;
  const Schema* schema = nullptr;
  try {
    schema = &schema_for(command);
  } catch (const std::invalid_argument& e) {
    throw ConfigError({e.what()});
  }

  RunConfig cfg;
  cfg.command = std::string(command);
  // Keys that appeared, valid or not; an invalid value is not also "missing".
  std::set<std::string> seen;
  std::istringstream in{std::string(document)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip a trailing comment outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      violations.push_back(where + "expected 'key = value', got '" + t + "'");
      continue;
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string raw = trim(std::string_view(t).substr(eq + 1));
    if (key == "command") {
      if (unquote(raw) != cfg.command) {
        violations.push_back(where + "document is for command '" + unquote(raw) +
                             "' but was run as '" + cfg.command + "'");
      }
      continue;
    }
    const SchemaEntry* e = schema->find(key);
    if (!e) {
      std::string msg = where + key + ": unknown key for " + cfg.command;
      if (auto near = nearest_key(*schema, key)) msg += " (did you mean '" + *near + "'?)";
      violations.push_back(msg);
      continue;
    }
    if (!seen.insert(key).second) {
      violations.push_back(where + key + ": given more than once");
      continue;
    }
    Value v;
    if (auto err = parse_value(e->type, raw, v)) {
      violations.push_back(where + key + " " + *err);
      continue;
    }
    if (auto err = check_value(*e, v)) {
      violations.push_back(where + key + " " + *err);
      continue;
    }
    cfg.values.emplace(key, std::move(v));
    cfg.explicit_keys.push_back(key);
  }

  for (const auto& e : schema->entries) {
    if (seen.count(e.key)) continue;
    if (e.required()) {
      violations.push_back(e.key + ": required key missing (" + e.description + ")");
      continue;
    }
    if (e.optional_without_default()) continue;
    Value v;
    if (auto err = parse_value(e.type, e.default_text, v)) {
      violations.push_back(e.key + ": bad schema default: " + *err);
      continue;
    }
    cfg.values.emplace(e.key, std::move(v));
  }

  std::vector<std::string> cross;
  cross_checks(cfg, cross);
  violations.insert(violations.end(), cross.begin(), cross.end());
  if (!violations.empty()) throw ConfigError(std::move(violations));

  cfg.seed = cfg.integer("seed");
  cfg.workers = static_cast<unsigned>(cfg.integer("workers"));
  return cfg;
}

}  // namespace fkdv::io
