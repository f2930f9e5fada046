#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncg/errors.hpp"
#include "ncg/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct Overrides {
  std::optional<double> tolerance;
  std::optional<int> lambda;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--tolerance", o.tolerance, "Check tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", o.lambda, "Lattice cutoff")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--out-dir", o.out_dir, "Directory for report.json and spectra");
}

ncg::ScenarioConfig configure(const std::string& path, const Overrides& o) {
  auto c = ncg::load_config(path);
  if (o.tolerance) c.tolerance = *o.tolerance;
  if (o.lambda) c.lambda = *o.lambda;
  if (o.seed) c.seed = *o.seed;
  if (o.out_dir) c.out_dir = *o.out_dir;
  return c;
}

void print_report(const ncg::RunReport& run) {
  for (const auto& s : run.stages) {
    std::size_t failed = 0;
    for (const auto& e : s.report.entries()) failed += e.pass ? 0 : 1;
    std::cout << (failed ? "FAIL " : "PASS ") << s.stage << " (" << s.report.size() - failed << "/"
              << s.report.size() << ")\n";
    for (const auto& e : s.report.entries()) {
      if (!e.pass) std::cout << "    " << e.check << ": " << e.ref << " violation=" << e.violation << "\n";
    }
  }
  if (run.compatibility_deviation) {
    std::cout << "compatibility deviation " << *run.compatibility_deviation
              << (*run.compatible ? " (compatible)" : " (incompatible)") << "\n";
  }
}

int finish(const ncg::RunReport& run, const std::filesystem::path& out_dir) {
  ncg::write_text_file(out_dir / "report.json", run.to_json().dump(2) + "\n");
  print_report(run);
  std::cout << run.id << ": " << (run.passed() ? "all checks passed" : "check failures") << "\n";
  return run.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral triples on noncommutative torus bundles"};
  app.require_subcommand(1);

  Overrides run_o, verify_o, sweep_o;
  std::string run_path, verify_path;
  std::vector<std::string> only;
  bool kr = false;
  int max_dim = 6;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario end to end");
  run_cmd->add_option("config", run_path, "Scenario JSON")->required();
  add_overrides(run_cmd, run_o);

  auto* verify_cmd = app.add_subcommand("verify", "Run selected check stages of a scenario");
  verify_cmd->add_option("config", verify_path, "Scenario JSON")->required();
  verify_cmd->add_option("--only", only, "Stage to run (repeatable)")->required();
  add_overrides(verify_cmd, verify_o);

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps");
  sweep_cmd->add_flag("--kr", kr, "Verify the base-triple tables for all (j, n)")->required();
  sweep_cmd->add_option("--max-dim", max_dim, "Largest j + n")->check(CLI::Range(1, 8));
  add_overrides(sweep_cmd, sweep_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      const auto config = configure(run_path, run_o);
      return finish(ncg::run_scenario(config), config.out_dir);
    }
    if (*verify_cmd) {
      const auto config = configure(verify_path, verify_o);
      return finish(ncg::run_scenario(config, only), config.out_dir);
    }
    const auto sweep = ncg::run_kr_sweep(max_dim, sweep_o.lambda.value_or(2), sweep_o.seed.value_or(3),
                                         sweep_o.tolerance.value_or(1e-12));
    const std::filesystem::path out = sweep_o.out_dir.value_or("out/kr-sweep");
    ncg::write_text_file(out / "kr_sweep.json", sweep.to_json().dump(2) + "\n");
    for (const auto& e : sweep.entries) {
      std::cout << (e.report.all_passed() ? "PASS" : "FAIL") << " j=" << e.recipe.j << " n=" << e.recipe.n
                << " D'0=" << ncg::to_string(e.recipe.d_prime) << " j0=" << ncg::to_string(e.recipe.j0)
                << (e.recipe.pathological ? " [pathological: j0^2 has the wrong sign]" : "")
                << (e.doubled ? " [doubled module]" : "") << "\n";
    }
    return sweep.passed() ? kOk : kCheckFailed;
  } catch (const ncg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ncg::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
