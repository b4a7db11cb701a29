// liesym command-line interface: verification suites, solution grids,
// symmetry orbits, and the reduced-equation profile integrator.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "liesym/grid.hpp"
#include "liesym/parse.hpp"
#include "liesym/suites.hpp"

namespace {

using namespace liesym;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LIESYM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed LIESYM_SEED\n";
    }
  }
  return kDefaultSeed;
}

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--params", "expected name=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--params", "malformed value in '" + item + "'");
    }
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw CLI::ValidationError("--out", "cannot open '" + path + "' for writing");
  return os;
}

int cmd_catalog(bool as_json) {
  if (as_json) {
    std::cout << catalog_manifest().dump(2) << '\n';
    return 0;
  }
  for (const auto& entry : catalog_manifest()) {
    std::cout << entry["name"].get<std::string>() << "\n    gamma = "
              << entry["generating_function"].get<std::string>() << "\n    domain: "
              << entry["domain"].get<std::string>() << '\n';
    for (const auto& [key, desc] : entry["params"].items())
      std::cout << "    " << key << ": " << desc.get<std::string>() << '\n';
  }
  std::cout << "reduced-system solutions (--t required): ";
  for (std::size_t i = 0; i < elementary_solution_names().size(); ++i)
    std::cout << (i ? ", " : "") << elementary_solution_names()[i];
  std::cout << '\n';
  return 0;
}

int cmd_eval(const std::string& name, const std::string& params_spec, const std::string& grid,
             std::optional<double> t_value, const std::string& out_path) {
  const std::size_t comma = grid.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--grid", "expected x0:x1:nx,y0:y1:ny");
  const GridAxis gx = parse_grid_axis(grid.substr(0, comma));
  const GridAxis gy = parse_grid_axis(grid.substr(comma + 1));

  ClosedFormSolution sol;
  bool needs_t = false;
  const auto& elem = elementary_solution_names();
  if (std::find(elem.begin(), elem.end(), name) != elem.end()) {
    sol = elementary_solution(name).solution;
    needs_t = true;
  } else {
    sol = catalog_solution(name, parse_params(params_spec), /*verify=*/false);
  }
  if (needs_t && !t_value)
    throw CLI::ValidationError("--t", "solution '" + name + "' is time-dependent");

  std::ofstream os = open_output(out_path);
  const GridStats stats =
      write_solution_grid(os, sol, gx, gy, needs_t ? t_value : std::nullopt);
  std::cout << "wrote " << stats.cells << " cells to " << out_path << " (" << stats.nan_cells
            << " outside the domain, emitted as nan)\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int samples,
               const std::string& out_path) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.samples = samples;
  const std::vector<CheckResult> checks = run_suite(suite, cfg);
  const nlohmann::ordered_json report = suite_report(suite, cfg, checks);
  if (!out_path.empty()) {
    std::ofstream os = open_output(out_path);
    os << report.dump(2) << '\n';
  }
  int failed = 0;
  for (const CheckResult& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << '\n';
    failed += c.pass ? 0 : 1;
  }
  std::cout << checks.size() - failed << "/" << checks.size() << " checks passed (suite "
            << suite << ", seed " << seed << ")\n";
  return failed == 0 ? 0 : 1;
}

int cmd_orbit(const std::string& phi_spec, double lambda, const std::string& base,
              const std::string& grid, const std::string& out_path) {
  std::string phi_src = phi_spec;
  if (phi_src.rfind("phi=", 0) == 0) phi_src = phi_src.substr(4);
  const Expr phi = parse(phi_src, {"z"});

  const CatalogEntry entry = catalog(base);
  // conservative evaluation window for the transformed solution
  SampleBox window = entry.gf.xy_domain;
  const GeneratingFunction orbit = apply_symmetry_orbit(entry.gf, phi, lambda,
                                                        base + " orbit", window);
  const ClosedFormSolution sol = solution_from_gamma(orbit, /*verify=*/false);
  const ResidualReport rep =
      solution_residual_report(sol, liouville_system(), 100, default_seed(), 1e-9,
                               "orbit residual");

  if (!grid.empty()) {
    const std::size_t comma = grid.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--grid", "expected x0:x1:nx,y0:y1:ny");
    std::ofstream os = open_output(out_path);
    write_solution_grid(os, sol, parse_grid_axis(grid.substr(0, comma)),
                        parse_grid_axis(grid.substr(comma + 1)));
  }
  std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << "orbit of " << base << " under phi = "
            << phi_src << " at lambda = " << format_double(lambda)
            << " (max residual " << format_double(rep.max_residual) << ")\n";
  return rep.pass ? 0 : 1;
}

int cmd_reduce(const std::string& ode, double u0, double p0, double smax, int rows,
               const std::string& out_path) {
  std::string rhs = ode;
  const std::size_t eq = ode.find('=');
  if (eq != std::string::npos) rhs = ode.substr(eq + 1);
  const Expr F = parse(rhs, {"u"});

  const QuadratureProfile profile(F, u0, p0, smax);
  std::ofstream os = open_output(out_path);
  os << "s,phi,dphi\n";
  for (int i = 0; i < rows; ++i) {
    const double s = smax * i / (rows - 1);
    os << format_double(s) << ',' << format_double(profile.phi(s)) << ','
       << format_double(profile.dphi(s)) << '\n';
  }
  std::cout << "wrote " << rows << " rows to " << out_path << " ("
            << profile.turning_points() << " turning points)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification laboratory for Lie point symmetries of planar plasma equilibria"};
  app.require_subcommand(1);

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "named closed-form solutions");
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list solutions and parameter schemas");
  bool list_json = false;
  list_cmd->add_flag("--json", list_json, "emit the machine-readable manifest");
  catalog_cmd->require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a solution on a grid and write CSV");
  std::string eval_name, eval_params, eval_grid, eval_out;
  std::optional<double> eval_t;
  eval_cmd->add_option("--solution", eval_name, "catalog or reduced-system solution name")
      ->required();
  eval_cmd->add_option("--params", eval_params, "comma-separated name=value parameters");
  eval_cmd->add_option("--grid", eval_grid, "x0:x1:nx,y0:y1:ny")->required();
  double eval_t_raw = 0.0;
  auto* t_opt = eval_cmd->add_option("--t", eval_t_raw, "time slice for time-dependent solutions");
  eval_cmd->add_option("--out", eval_out, "output CSV path")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string verify_suite, verify_out;
  std::uint64_t verify_seed = default_seed();
  int verify_samples = 100;
  verify_cmd->add_option("--suite", verify_suite, "liouville | vortex | gss | all")
      ->required()
      ->check(CLI::IsMember({"liouville", "vortex", "gss", "all"}));
  verify_cmd->add_option("--seed", verify_seed, "sampling seed (defaults to LIESYM_SEED or 42)");
  verify_cmd->add_option("--samples", verify_samples, "per-check sample budget")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify_out, "JSON report path");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "apply a one-parameter symmetry to a solution");
  std::string orbit_eq = "liouville", orbit_phi, orbit_base, orbit_grid, orbit_out;
  double orbit_lambda = 0.0;
  orbit_cmd->add_option("--equation", orbit_eq, "equation family (liouville)")
      ->check(CLI::IsMember({"liouville"}));
  orbit_cmd->add_option("--symmetry", orbit_phi, "phi=<holomorphic polynomial in z, degree <= 2>")
      ->required();
  orbit_cmd->add_option("--lambda", orbit_lambda, "group parameter")->required();
  orbit_cmd->add_option("--base", orbit_base, "catalog solution to transform")->required();
  orbit_cmd->add_option("--grid", orbit_grid, "optional x0:x1:nx,y0:y1:ny CSV export");
  orbit_cmd->add_option("--out", orbit_out, "output CSV path (with --grid)");

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "integrate the reduced equation u_ss = F(u)");
  std::string reduce_ode, reduce_out;
  double reduce_u0 = 0.0, reduce_p0 = 0.0, reduce_smax = 1.0;
  int reduce_rows = 201;
  reduce_cmd->add_option("--ode", reduce_ode, "right-hand side, e.g. \"F(u)=u\"")->required();
  reduce_cmd->add_option("--u0", reduce_u0, "initial value")->required();
  reduce_cmd->add_option("--p0", reduce_p0, "initial slope")->required();
  reduce_cmd->add_option("--smax", reduce_smax, "integration range")->check(CLI::PositiveNumber);
  reduce_cmd->add_option("--rows", reduce_rows, "CSV rows")->check(CLI::Range(2, 1000000));
  reduce_cmd->add_option("--out", reduce_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list_cmd->parsed()) return cmd_catalog(list_json);
    if (eval_cmd->parsed()) {
      if (t_opt->count()) eval_t = eval_t_raw;
      return cmd_eval(eval_name, eval_params, eval_grid, eval_t, eval_out);
    }
    if (verify_cmd->parsed())
      return cmd_verify(verify_suite, verify_seed, verify_samples, verify_out);
    if (orbit_cmd->parsed())
      return cmd_orbit(orbit_phi, orbit_lambda, orbit_base, orbit_grid, orbit_out);
    if (reduce_cmd->parsed())
      return cmd_reduce(reduce_ode, reduce_u0, reduce_p0, reduce_smax, reduce_rows, reduce_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const liesym::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
