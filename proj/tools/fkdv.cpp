// Batch front end: fkdv <command> --config <file> [--out <dir>] [--workers K]
//
// Exit status: 0 every verdict passed, 1 some verdict or case failed,
// 2 the command line or configuration was rejected.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fkdv/io/config.hpp"
#include "fkdv/io/csv.hpp"
#include "fkdv/io/run.hpp"

namespace {

constexpr int kConfigError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fkdv::io::IoError("cannot read config file " + path, path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_command(const std::string& command, const std::string& config_path, const std::string& out_dir,
                const std::optional<unsigned>& workers) {
  fkdv::io::RunConfig cfg;
  try {
    cfg = fkdv::io::parse_config(read_file(config_path), command);
  } catch (const fkdv::io::ConfigError& e) {
    std::cerr << config_path << ": " << e.violations.size() << " violation(s)\n";
    for (const auto& v : e.violations) std::cerr << "  " << v << "\n";
    return kConfigError;
  } catch (const fkdv::io::IoError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }
  cfg.output_dir = out_dir.empty() ? "out/" + command : out_dir;
  if (workers) cfg.workers = *workers;

  fkdv::io::ResultBundle bundle;
  try {
    bundle = fkdv::io::run(cfg);
  } catch (const fkdv::io::ConfigError& e) {
    std::cerr << config_path << ": " << e.violations.size() << " violation(s)\n";
    for (const auto& v : e.violations) std::cerr << "  " << v << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& v : bundle.report.verdicts) {
    std::cout << (v.passed ? "PASS " : "FAIL ") << v.name << "  measured " << fkdv::format_double(v.measured)
              << "  predicted " << fkdv::format_double(v.predicted) << "  tolerance "
              << fkdv::format_double(v.tolerance) << "\n";
  }
  for (const auto& e : bundle.report.errors) std::cout << "ERROR " << e << "\n";
  std::cout << "wrote " << bundle.tables.size() << " tables, " << bundle.figures.size() << " figures and "
            << bundle.manifest.string() << "\n";
  return fkdv::io::exit_status(bundle.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver and inflation experiments for fractional KdV equations"};
  app.set_version_flag("--version", fkdv::io::version_string());
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<unsigned> workers;
  for (const auto& name : fkdv::io::commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "key = value configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default out/<command>)");
    sub->add_option("--workers", workers, "worker threads, overrides the config")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return run_command(app.get_subcommands().front()->get_name(), config_path, out_dir, workers);
}
