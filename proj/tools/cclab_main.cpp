#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "cclab/grid_oracle.hpp"
#include "cclab/report.hpp"

namespace {

// CCLAB_SEED overrides the config / flag seed when set.
bool env_seed(std::uint64_t& seed) {
  const char* raw = std::getenv("CCLAB_SEED");
  if (!raw || !*raw) return false;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw cclab::ConfigError("CCLAB_SEED must be an unsigned integer");
  }
  seed = static_cast<std::uint64_t>(v);
  return true;
}

int run_check(const std::string& config_path, const std::string& out_path,
              const std::string& format) {
  cclab::RunConfig cfg = cclab::parse_scenario_file(config_path);
  cfg.out_path = out_path;
  cfg.format = format;
  env_seed(cfg.seed);
  const std::vector<cclab::ReportRow> rows = cclab::run_suite(cfg);
  cclab::emit_report(rows, cfg.format, cfg.out_path);
  const bool ok = cclab::all_hold(rows);
  std::cout << rows.size() << " rows written to " << cfg.out_path << "; "
            << (ok ? "all checks hold" : "violations found") << "\n";
  return ok ? 0 : 1;
}

int run_fixtures() {
  std::cout << "S0  invariant totally geodesic point: n=4, 4m=8, c=1, h=0, M=0\n"
            << "S1  S0 with umbilical h (identity on the first normal direction)\n"
            << "S2  S0 with M = 0.1 * identity (trace 0.4)\n";
  return 0;
}

int run_hessian(int n, double r) {
  const cclab::HessianSpectrum s = cclab::hessian_spectrum(n, r);
  std::cout << "n=" << n << " r=" << r << "\neigenvalues:";
  for (double v : s.eigenvalues) std::cout << ' ' << v;
  std::cout << "\nclosed-form:";
  for (double v : s.paper_eigenvalues) std::cout << ' ' << v;
  std::cout << "\npsd=" << (s.psd ? "true" : "false")
            << " zero_multiplicity=" << s.zero_multiplicity
            << " matches=" << (s.matches_paper ? "true" : "false") << "\n";
  return (s.psd && s.zero_multiplicity == 1 && s.matches_paper) ? 0 : 1;
}

int run_oracle(int n, int grid, int scenarios, std::uint64_t seed) {
  env_seed(seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c_dist(-2.0, 2.0);
  bool all_ok = true;
  constexpr double tol = 1e-6;

  std::cout << "scenario  quantity    optimizer            oracle               |diff|    ok\n";
  for (int s = 0; s < scenarios; ++s) {
    cclab::ScenarioSpec spec;
    spec.kind = cclab::ScenarioSpec::Kind::random;
    spec.id = "oracle" + std::to_string(s);
    spec.n = n;
    spec.m = 2;
    spec.c = c_dist(rng);
    spec.h.kind = cclab::HSpec::Kind::random;
    spec.M.kind = cclab::MSpec::Kind::random;
    spec.seed = rng();
    const cclab::SubmanifoldPoint point = cclab::make_point(spec);

    const auto report = [&](const char* what, const cclab::GridComparison& cmp) {
      const bool ok = cmp.within(tol);
      all_ok = all_ok && ok;
      std::printf("%-9s %-10s %-20.12g %-20.12g %-9.2e %s\n", spec.id.c_str(), what,
                  cmp.optimizer_value, cmp.oracle_value,
                  std::abs(cmp.optimizer_value - cmp.oracle_value), ok ? "yes" : "NO");
    };
    report("hyp_inf", cclab::oracle_check_hyperplane(point, cclab::ExtremumMode::inf, grid, spec.seed));
    report("hyp_sup", cclab::oracle_check_hyperplane(point, cclab::ExtremumMode::sup, grid, spec.seed));
    report("plane_inf", cclab::oracle_check_plane_inf(point, grid, spec.seed));
  }
  std::cout << (all_ok ? "all comparisons within tolerance\n" : "tolerance exceeded\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise curvature-inequality lab for submanifolds of quaternionic space forms"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the inequality suite on a scenario file");
  std::string config_path, out_path, format = "csv";
  check->add_option("--config", config_path, "scenario config (JSON)")->required();
  check->add_option("--out", out_path, "report output path")->required();
  check->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* fixtures = app.add_subcommand("fixtures", "describe the built-in fixtures");
  bool list = false;
  fixtures->add_flag("--list", list, "list fixture names and definitions");

  auto* hessian = app.add_subcommand("hessian", "spectrum of the Casorati quadratic-form Hessian");
  int hess_n = 4;
  double hess_r = 6.0;
  hessian->add_option("--n", hess_n, "submanifold dimension")->required();
  hessian->add_option("--r", hess_r, "Casorati parameter r")->required();

  auto* oracle = app.add_subcommand("oracle", "dense-grid oracle comparison for the optimizers");
  int oracle_n = 4, oracle_grid = 10000, oracle_scenarios = 5;
  std::uint64_t oracle_seed = 20260810;
  oracle->add_option("--n", oracle_n, "submanifold dimension")->required();
  oracle->add_option("--grid", oracle_grid, "grid points per oracle");
  oracle->add_option("--scenarios", oracle_scenarios, "number of random scenarios");
  oracle->add_option("--seed", oracle_seed, "base seed (CCLAB_SEED overrides)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(config_path, out_path, format);
    if (fixtures->parsed()) return run_fixtures();
    if (hessian->parsed()) return run_hessian(hess_n, hess_r);
    if (oracle->parsed()) return run_oracle(oracle_n, oracle_grid, oracle_scenarios, oracle_seed);
  } catch (const cclab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cclab::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
