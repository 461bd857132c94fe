#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ddqe/io/config.hpp"
#include "ddqe/io/csv.hpp"
#include "ddqe/io/svg.hpp"
#include "ddqe/scenarios.hpp"
#include "ddqe/threads.hpp"
#include "ddqe/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidity = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ddqe::io::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << bytes;
}

int cmd_run(const std::string& config_path, bool force_serial) {
  ddqe::io::RunConfig cfg = ddqe::io::parse_config(read_file(config_path));
  if (force_serial) cfg.serial = true;
  const ddqe::ScenarioOutput out = ddqe::run_scenario(cfg);
  for (const auto& [suffix, table] : out.tables) {
    const std::string path = cfg.output + "_" + suffix + ".csv";
    table.save(path);
    std::cout << path << "\n";
  }
  for (const auto& [suffix, svg] : out.svgs) {
    const std::string path = cfg.output + "_" + suffix + ".svg";
    write_file(path, svg);
    std::cout << path << "\n";
  }
  return out.exit_code == 0 ? kExitOk : kExitValidity;
}

int cmd_validate(bool quick, std::uint64_t seed, bool serial) {
  ddqe::ValidateOptions opt;
  opt.quick = quick;
  opt.seed = seed;
  opt.nworkers = serial ? 1 : ddqe::worker_count();
  const auto results = ddqe::run_validation(opt);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-34s %s  measured=%.6g bound=%.6g (%.2fs)\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.measured, r.bound, r.seconds);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all checks passed" : "validation FAILED");
  return all ? kExitOk : kExitValidity;
}

int cmd_plot(const std::string& csv_path, const std::string& x,
             const std::vector<std::string>& ys, const std::string& out_path,
             const std::string& title) {
  const auto table = ddqe::io::CsvTable::load(csv_path);
  ddqe::io::PlotSpec spec;
  spec.x_column = x;
  spec.y_columns = ys;
  spec.title = title;
  write_file(out_path, ddqe::io::emit_svg(table, spec));
  std::cout << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disorder-dressed quantum evolution toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run a scenario from a TOML config");
  run->add_option("config", config_path, "TOML run configuration")->required();
  run->add_flag("--serial", serial, "force order-deterministic serial reductions");

  bool quick = false;
  std::uint64_t seed = 20240501;
  bool vserial = false;
  auto* val = app.add_subcommand("validate", "run the validation battery");
  val->add_flag("--quick", quick, "reduced sample counts");
  val->add_option("--seed", seed, "base seed");
  val->add_flag("--serial", vserial, "single-worker reductions");

  std::string csv_path, x_col = "t", out_path = "plot.svg", title;
  std::vector<std::string> y_cols;
  auto* plot = app.add_subcommand("plot", "render CSV columns as an SVG line plot");
  plot->add_option("table", csv_path, "input CSV table")->required();
  plot->add_option("--x", x_col, "x column name");
  plot->add_option("--y", y_cols, "y column name(s)")->required();
  plot->add_option("-o,--output", out_path, "output SVG path");
  plot->add_option("--title", title, "plot title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, serial);
    if (val->parsed()) return cmd_validate(quick, seed, vserial);
    if (plot->parsed()) return cmd_plot(csv_path, x_col, y_cols, out_path, title);
  } catch (const ddqe::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitValidity;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
