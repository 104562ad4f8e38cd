#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fkdv/io/config.hpp"
#include "fkdv/io/csv.hpp"
#include "fkdv/io/run.hpp"
#include "fkdv/io/svg.hpp"

using namespace fkdv;
using namespace fkdv::io;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> violations_of(const std::string& doc, const std::string& cmd) {
  try {
    parse_config(doc, cmd);
  } catch (const ConfigError& e) {
    return e.violations;
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream b;
  b << in.rdbuf();
  return b.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fkdv_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("every command has a parseable schema") {
  for (const auto& cmd : commands()) {
    const Schema& s = schema_for(cmd);
    CHECK(s.find("seed") != nullptr);
    CHECK(s.find("workers") != nullptr);
    for (const auto& e : s.entries) CHECK(!e.description.empty());
  }
  CHECK_THROWS_AS(schema_for("nope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schema("x", "a badtype 1 -"), std::invalid_argument);
}

TEST_CASE("minimal simulate config gets defaults") {
  const auto c = parse_config("alpha = 1\nN = 256\nt_end = 0.5\n", "simulate");
  CHECK(c.real("alpha") == 1.0);
  CHECK(c.integer("N") == 256);
  CHECK(c.text("dispersion") == "fractional");
  CHECK(c.strings("observers") == std::vector<std::string>{"mass", "momentum", "hamiltonian"});
  CHECK(c.reals("sobolev_s").empty());
  CHECK(!c.has("dt"));
  CHECK(c.explicit_keys == std::vector<std::string>{"alpha", "N", "t_end"});
}

TEST_CASE("commands with full defaults accept an empty document") {
  for (const auto& cmd : commands()) {
    if (cmd == "simulate") continue;
    CAPTURE(cmd);
    CHECK_NOTHROW(parse_config("", cmd));
  }
}

TEST_CASE("periodic construction needs s < -2") {
  const auto v = violations_of("s = -1.5\n", "inflate-periodic");
  REQUIRE(v.size() == 1);
  CHECK(any_contains(v, "s must be < -2"));
  CHECK_NOTHROW(parse_config("s = -1.5\nallow_any_s = true\n", "inflate-periodic"));
}

TEST_CASE("unknown keys get a suggestion") {
  const auto v = violations_of("alpa = 1\nN = 256\nt_end = 1\n", "simulate");
  CHECK(any_contains(v, "alpa"));
  CHECK(any_contains(v, "did you mean 'alpha'"));
  CHECK(nearest_key(schema_for("simulate"), "zzzzzzzz") == std::nullopt);
  CHECK(edit_distance("kitten", "sitting") == 3);
}

TEST_CASE("all violations are reported together") {
  const std::string doc =
      "# comment line\n"
      "alpha = 7\n"
      "N = 255\n"
      "t_end = soon\n"
      "observers = [mass, energy]\n"
      "dispersion = kdv\n"
      "dt = 0.1\n"
      "dt = 0.2\n"
      "this line has no equals sign\n"
      "command = burgers\n";
  const auto v = violations_of(doc, "simulate");
  CHECK(v.size() == 8);
  CHECK(any_contains(v, "alpha must lie in [-1,2]"));
  CHECK(any_contains(v, "N must be even"));
  CHECK(any_contains(v, "t_end must be a real number"));
  CHECK(any_contains(v, "observers elements must be one of"));
  CHECK(any_contains(v, "dispersion must be one of"));
  CHECK(any_contains(v, "given more than once"));
  CHECK(any_contains(v, "expected 'key = value'"));
  CHECK(any_contains(v, "document is for command 'burgers'"));
}

TEST_CASE("value syntax") {
  const auto c = parse_config(
      "epsilon = 0.05   # trailing comment\n"
      "n_values = [ 8, 16 ,32 ]\n"
      "allow_any_s = true\n"
      "s = -1\n",
      "inflate-periodic");
  CHECK(c.real("epsilon") == 0.05);
  CHECK(c.integers("n_values") == std::vector<long>{8, 16, 32});
  CHECK(c.boolean("allow_any_s"));
  const auto q = parse_config("datum = \"gaussian_derivative\"\n", "burgers");
  CHECK(q.text("datum") == "gaussian_derivative");
  CHECK(!violations_of("n_values = 16\n", "inflate-periodic").empty());
  CHECK(!violations_of("n_values = [16, 8.5]\n", "inflate-periodic").empty());
  CHECK(!violations_of("allow_any_s = yes\n", "inflate-periodic").empty());
}

TEST_CASE("cross-field rules") {
  CHECK(any_contains(violations_of("omega = 1.05\n", "symmetry-check"), "nearest valid omega is 1.1"));
  CHECK(any_contains(violations_of("nu_values = [0.01, 0.1]\n", "zero-dispersion"), "decreasing"));
  CHECK(any_contains(violations_of("T_obs = 0.99\n", "zero-dispersion"), "T_obs must be <"));
  CHECK(any_contains(violations_of("alpha = 0.5\n", "breaking-time"), "alpha must lie in (-1, -1/3)"));
  CHECK(any_contains(violations_of("s = 0.5\n", "inflate-line"), "s must lie in (5/6, 1/2 - alpha)"));
}

TEST_CASE("config echo reparses to the same values") {
  const auto c = parse_config("alpha = -0.5\nN = 64\nt_end = 0.25\nsobolev_s = [0.5, 1]\n", "simulate");
  std::string echo = c.echo();
  const auto d = parse_config(echo, "simulate");
  CHECK(d.echo() == echo);
  CHECK(d.reals("sobolev_s") == std::vector<double>{0.5, 1.0});
}

TEST_CASE("empty table writes a header-only file") {
  const Table t("empty", {"a", "b"});
  CHECK(to_csv(t) == "a,b\n");
}

TEST_CASE("CSV round trip is bit exact") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Table t("t", {"x", "label", "y"});
  const std::vector<double> special{0.0,
                                    -0.0,
                                    std::numeric_limits<double>::denorm_min(),
                                    std::numeric_limits<double>::max(),
                                    -std::numeric_limits<double>::min(),
                                    1.0 / 3.0,
                                    1e-300,
                                    std::numeric_limits<double>::infinity()};
  const std::vector<std::string> labels{"plain", "with,comma", "say \"hi\"", "two\nlines", "12.5", "", " pad"};
  for (std::size_t i = 0; i < 50; ++i) {
    const double x = i < special.size() ? special[i] : std::ldexp(u(rng), static_cast<int>(i) - 25);
    t.add_row({x, labels[i % labels.size()], u(rng)});
  }
  const std::string text = to_csv(t);
  CHECK(text.back() == '\n');
  const Table back = parse_csv(text, "t");
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      REQUIRE(back.rows[r][c].index() == t.rows[r][c].index());
      if (c == 1) {
        CHECK(std::get<std::string>(back.rows[r][c]) == std::get<std::string>(t.rows[r][c]));
      } else {
        const double a = std::get<double>(t.rows[r][c]), b = std::get<double>(back.rows[r][c]);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
      }
    }
  }
  const auto dir = scratch_dir("csv");
  write_csv(t, dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == text);
  CHECK(to_csv(read_csv(dir / "t.csv")) == text);
  fs::remove_all(dir);
}

TEST_CASE("CSV uses seventeen significant digits") {
  Table t("t", {"v"});
  t.add_row({0.1});
  CHECK(to_csv(t) == "v\n0.10000000000000001\n");
}

TEST_CASE("I/O errors name the path") {
  const fs::path bad = "/proc/definitely/not/writable/x.csv";
  try {
    write_csv(Table("t", {"a"}), bad);
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/proc/definitely") != std::string::npos);
    CHECK(e.path == bad);
  }
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), IoError);
}

TEST_CASE("SVG rendering") {
  Table t("t", {"n", "a", "b"});
  for (double n : {1.0, 2.0, 4.0, 8.0}) t.add_row({n, n * n, n > 2.0 ? -1.0 : 0.5});
  FigureSpec f{"fig", "a <and> b", "t", "n", {"a", "b"}, true, true, false};
  const std::string svg = render_svg(f, t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(svg.find("a &lt;and&gt; b") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  f.scatter = true;
  CHECK(render_svg(f, t).find("<polyline") == std::string::npos);
}

TEST_CASE("run writes tables, figures and a manifest deterministically") {
  const auto dir1 = scratch_dir("run1"), dir2 = scratch_dir("run2");
  auto cfg = parse_config("alpha = 1\nN = 64\nt_end = 0.1\nsobolev_s = [1]\n", "simulate");
  cfg.output_dir = dir1.string();
  const auto b1 = run(cfg);
  cfg.output_dir = dir2.string();
  const auto b2 = run(cfg);
  CHECK(exit_status(b1.report) == 0);
  for (const char* f : {"time_series.csv", "drift.csv", "verdicts.csv", "norms_vs_time.svg", "manifest.txt"}) {
    CHECK(fs::exists(dir1 / f));
  }
  for (const auto& p : b1.tables) CHECK(slurp(p) == slurp(dir2 / p.filename()));
  // Every figure draws from a table that was written.
  for (const auto& f : b1.report.figures) CHECK(fs::exists(dir1 / (f.table + ".csv")));
  const std::string manifest = slurp(b1.manifest);
  CHECK(manifest.find("command: simulate") != std::string::npos);
  CHECK(manifest.find("alpha = 1") != std::string::npos);
  CHECK(manifest.find("version: ") != std::string::npos);
  CHECK(manifest.find("wall_seconds: ") != std::string::npos);
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("failed cases are recorded and fail the run") {
  // N = 64 is too coarse for n = 16: the case fails, the run reports it.
  const auto cfg = parse_config("n_values = [16, 32]\nN = 64\n", "inflate-periodic");
  const auto rep = execute(cfg);
  CHECK(!rep.errors.empty());
  CHECK(exit_status(rep) == 1);
}

TEST_CASE("exit status") {
  ExperimentReport r;
  CHECK(exit_status(r) == 1);
  r.check_below("ok", 0.0, 1.0, "");
  CHECK(exit_status(r) == 0);
  r.errors.push_back("case failed");
  CHECK(exit_status(r) == 1);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
