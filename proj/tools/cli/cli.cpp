#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>

#include <CLI/CLI.hpp>

#include "crw/eigenfunctions.hpp"
#include "crw/errors.hpp"
#include "crw/initial_data.hpp"
#include "crw/oracle.hpp"
#include "crw/quadrature.hpp"
#include "crw/simulator.hpp"
#include "crw/spectrum.hpp"
#include "output.hpp"

#ifndef CRW_VERSION
#define CRW_VERSION "unknown"
#endif

namespace crw::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  std::optional<double> S;
  std::optional<double> gamma;
  std::optional<double> mu;
  std::optional<double> length;
  int n_max{10};
  int grid{2000};
  std::optional<double> t_end;
  std::string init{"box"};
  std::uint64_t seed{12345};
  int stride{0};
  int n{0};
  int j{1};
  std::string normalization{"canonical"};
  std::string out;
  std::string format{"csv"};
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects named invariant violations for the diagnostic stream.
class Checks {
 public:
  void require(bool ok, const std::string& name, const std::string& detail) {
    if (ok) return;
    failures_.push_back(name + ": " + detail);
  }
  bool passed() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

Json optional_number(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

ModelParams resolve_params(const RunConfig& c) {
  const bool any_dimensional = c.gamma || c.mu || c.length;
  const bool all_dimensional = c.gamma && c.mu && c.length;
  if (c.S && any_dimensional) throw UsageError("give either --S or --gamma/--mu/--L, not both");
  if (any_dimensional && !all_dimensional) throw UsageError("--gamma, --mu and --L must be given together");
  if (!c.S && !any_dimensional) throw UsageError("missing --S (or --gamma/--mu/--L)");
  try {
    return c.S ? ModelParams(*c.S) : ModelParams::from_dimensional(*c.gamma, *c.mu, *c.length);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json base_meta(const RunConfig& c, const std::optional<ModelParams>& params) {
  Json config = Json::object();
  config["S"] = optional_number(c.S);
  config["gamma"] = optional_number(c.gamma);
  config["mu"] = optional_number(c.mu);
  config["L"] = optional_number(c.length);
  if (c.subcommand == "spectrum" || c.subcommand == "critical") config["n_max"] = c.n_max;
  if (c.subcommand == "simulate") {
    config["N"] = c.grid;
    config["t_end"] = optional_number(c.t_end);
    config["init"] = c.init;
    config["seed"] = c.seed;
    config["stride"] = c.stride;
  }
  if (c.subcommand == "eigenfunction") {
    config["N"] = c.grid;
    config["n"] = c.n;
    config["j"] = c.j;
    config["normalization"] = c.normalization;
  }
  config["format"] = c.format;

  Json meta = Json::object();
  meta["artifact"] = "crw";
  meta["artifact_version"] = CRW_VERSION;
  meta["subcommand"] = c.subcommand;
  meta["config"] = config;
  meta["S"] = params ? Json(params->S()) : Json(nullptr);
  return meta;
}

void write_table(const RunConfig& c, const Table& table, std::ostream& out) {
  auto emit = [&](std::ostream& os) {
    if (c.format == "json") {
      write_json(os, table);
    } else {
      write_csv(os, table);
    }
  };
  if (c.out.empty() || c.out == "-") {
    emit(out);
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw UsageError("cannot open --out file: " + c.out);
  emit(file);
  if (!file) throw UsageError("failed writing --out file: " + c.out);
}

int finish(const RunConfig& c, Table& table, const Checks& checks, std::ostream& out, std::ostream& err) {
  Json failures = Json::array();
  for (const auto& f : checks.failures()) failures.push_back(f);
  table.meta["summary"]["pass"] = checks.passed();
  table.meta["summary"]["failures"] = failures;
  write_table(c, table, out);
  for (const auto& f : checks.failures()) err << "invariant violated: " << f << '\n';
  return checks.passed() ? kPass : kInvariantFailure;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelParams params = resolve_params(c);
  const auto slice = spectrum_slice(params, c.n_max);
  const double lambda0 = slice.front().lambda.real();
  const double S = params.S();

  Table table;
  table.columns = {"n",         "j",         "parity",   "re_nu",           "im_nu",
                   "re_lambda", "im_lambda", "residual", "oracle_distance", "asymptotic_gap"};
  table.meta = base_meta(c, params);
  Checks checks;
  double worst_oracle = 0.0;

  for (const auto& e : slice) {
    const Complex nu = e.nu_value();
    const double residual =
        e.is_double_root_at_s_one() ? 0.0 : characteristic_residual(params, std::get<NuRoot>(e.nu));
    const ShootingResult shot = refine_eigenvalue(params, e.lambda);
    const double distance = std::abs(shot.lambda - e.lambda);
    worst_oracle = std::max(worst_oracle, distance);
    const Json gap = e.n >= 1 ? Json(std::abs(e.lambda - asymptotic_lambda(params, e.n, e.j))) : Json(nullptr);

    const std::string label = "(n=" + std::to_string(e.n) + ", j=" + std::to_string(e.j) + ")";
    checks.require(residual <= 1e-12 * (1.0 + std::abs(nu)), "characteristic_residual",
                   label + " residual " + format_double(residual));
    checks.require(shot.converged && distance < 1e-8, "oracle_agreement",
                   label + " shooting distance " + format_double(distance));
    if (e.n >= 1) {
      checks.require(e.lambda.real() < lambda0, "dominance", label + " Re(lambda) >= lambda_0");
      if (!e.is_real()) {
        checks.require(e.lambda.real() < -1.0 - S, "nonreal_bound", label + " Re(lambda) >= -1-S");
      }
    }
    table.rows.push_back({e.n, e.j, to_string(e.parity), nu.real(), nu.imag(), e.lambda.real(), e.lambda.imag(),
                          residual, distance, gap});
  }
  table.meta["summary"] = {{"rows", table.rows.size()}, {"lambda_0", lambda0}, {"max_oracle_distance", worst_oracle}};
  table.meta["tolerances"] = {{"residual", "1e-12*(1+|nu|)"}, {"oracle_distance", 1e-8}};
  return finish(c, table, checks, out, err);
}

int cmd_critical(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.n_max < 1) throw UsageError("critical needs --n-max >= 1");
  std::optional<ModelParams> params;
  if (c.S || c.gamma || c.mu || c.length) params = resolve_params(c);

  Table table;
  table.columns = {"m", "nu_m", "S_m", "residual"};
  table.meta = base_meta(c, params);
  Checks checks;
  double previous = 1.0;
  for (int m = 1; m <= c.n_max; ++m) {
    const CriticalS cs = critical_s(m);
    const double residual = critical_residual(cs.nu_m);
    const std::string label = "m=" + std::to_string(m);
    checks.require(residual < 1e-12, "tan_residual", label + " residual " + format_double(residual));
    checks.require(cs.nu_m > m * std::numbers::pi && cs.nu_m < (m + 0.5) * std::numbers::pi, "bracket",
                   label + " nu_m outside (m pi, (m+1/2) pi)");
    checks.require(cs.S_m < previous, "strictly_decreasing", label + " S_m not below S_{m-1}");
    previous = cs.S_m;
    table.rows.push_back({m, cs.nu_m, cs.S_m, residual});
  }
  table.meta["summary"] = {{"rows", table.rows.size()}, {"S_crit", critical_s(1).S_m}};
  table.meta["tolerances"] = {{"residual", 1e-12}, {"residual_definition", "|tan(x)-x|/(1+x^2)"}};
  return finish(c, table, checks, out, err);
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelParams params = resolve_params(c);
  const auto kind = parse_initial_kind(c.init);
  if (!kind) throw UsageError("unknown --init " + c.init);
  const double lambda0 = dominant(params).lambda.real();
  const double S = params.S();
  const double fit_start = std::max(2.0, 1.0 / S) + 1.0;
  const double t_end = c.t_end.value_or(fit_start + 30.0 / std::abs(lambda0));

  const State initial = make_initial(*kind, params, c.grid, c.seed);
  const ProfileReference reference(params, c.grid);
  const long steps = static_cast<long>(std::ceil(t_end / unit_cfl_dt(c.grid, params) - 1e-9));
  const long stride = c.stride > 0 ? c.stride : std::max(1L, (steps + 999) / 1000);

  Table table;
  table.columns = {"t", "norm", "profile_distance"};
  table.meta = base_meta(c, params);
  double max_distance = 0.0;
  long k = 0;
  const auto history = simulate(initial, params, t_end, {}, [&](const State& s) {
    const double norm = discrete_norm(s);
    const double distance = norm > 0.0 ? reference.distance(s) : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(distance)) max_distance = std::max(max_distance, distance);
    if (k % stride == 0 || k == steps) table.rows.push_back({s.t, norm, distance});
    ++k;
  });

  const auto [w0, w1] = default_fit_window(history.t, history.norm, params);
  const DecayFit fit = fit_decay(history.t, history.norm, w0, w1);
  const double relative = std::abs(fit.rate - lambda0) / std::abs(lambda0);

  Checks checks;
  checks.require(relative < 0.01, "decay_rate",
                 "fitted rate " + format_double(fit.rate) + " vs lambda_0 " + format_double(lambda0));
  table.meta["summary"] = {{"lambda_0", lambda0},
                           {"rate", fit.rate},
                           {"amplitude", fit.amplitude},
                           {"r_squared", fit.r_squared},
                           {"window", {fit.t_start, fit.t_end}},
                           {"samples", fit.samples},
                           {"relative_error", relative},
                           {"max_profile_distance", max_distance},
                           {"final_profile_distance", table.rows.empty() ? Json(nullptr) : table.rows.back()[2]}};
  table.meta["tolerances"] = {{"rate_relative", 0.01}};
  table.meta["seed"] = c.seed;
  return finish(c, table, checks, out, err);
}

int cmd_eigenfunction(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ModelParams params = resolve_params(c);
  if (c.grid < 2) throw UsageError("eigenfunction needs --N >= 2");
  const EigenPair pair = c.n == 0 ? dominant(params) : lambda_from_nu(params, nu_root(params, c.n, c.j));
  const Normalization norm =
      c.normalization == "unit" ? Normalization::UnitL2 : Normalization::CanonicalCoefficient;
  const auto grid = uniform_grid(static_cast<std::size_t>(c.grid));
  const EigenfunctionGrid fn = evaluate(pair, grid, norm);
  const RotationSummary rot = rotation_number(fn);

  Table table;
  table.columns = {"x", "re_u", "im_u", "re_v", "im_v"};
  table.meta = base_meta(c, params);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.rows.push_back({grid[i], fn.u[i].real(), fn.u[i].imag(), fn.v[i].real(), fn.v[i].imag()});
    sup = std::max({sup, std::abs(fn.u[i]), std::abs(fn.v[i])});
  }

  Checks checks;
  checks.require(rot.half_turns_u == c.n && rot.half_turns_v == c.n, "rotation_number",
                 "half turns (u " + std::to_string(rot.half_turns_u) + ", v " + std::to_string(rot.half_turns_v) +
                     ") differ from n=" + std::to_string(c.n));
  checks.require(rot.monotone_argument, "monotone_argument", "argument is not monotone along x");
  checks.require(std::abs(fn.u.front()) <= 1e-12 * sup && std::abs(fn.v.back()) <= 1e-12 * sup,
                 "boundary_conditions", "u(-1/2) or v(1/2) is nonzero");
  if (c.n == 0) {
    bool positive = true;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      positive = positive && fn.u[i].real() > 0.0 && fn.v[i].real() > 0.0;
    }
    checks.require(positive, "dominant_positivity", "an interior sample of the n=0 eigenfunction is not positive");
  }
  table.meta["summary"] = {{"n", pair.n},
                           {"j", pair.j},
                           {"parity", to_string(pair.parity)},
                           {"re_lambda", pair.lambda.real()},
                           {"im_lambda", pair.lambda.imag()},
                           {"re_nu", pair.nu_value().real()},
                           {"im_nu", pair.nu_value().imag()},
                           {"half_turns", rot.half_turns_u},
                           {"half_turns_u", rot.half_turns_u},
                           {"half_turns_v", rot.half_turns_v},
                           {"monotone_argument", rot.monotone_argument},
                           {"real_valued", rot.real_valued}};
  return finish(c, table, checks, out, err);
}

void add_param_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--S", c.S, "Nondimensional speed S = gamma/(mu L)")->check(CLI::PositiveNumber);
  sub->add_option("--gamma", c.gamma, "Particle speed")->check(CLI::PositiveNumber);
  sub->add_option("--mu", c.mu, "Turning rate")->check(CLI::PositiveNumber);
  sub->add_option("--L", c.length, "Domain length")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "Output file (default: stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Spectrum, eigenfunctions and simulation of the correlated random walk on an interval", "crw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CRW_VERSION));

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues lambda_0 and lambda_{n,j}, n <= n_max, with checks");
  add_param_flags(spectrum, c);
  spectrum->add_option("--n-max", c.n_max, "Largest strip index")->check(CLI::NonNegativeNumber);
  add_output_flags(spectrum, c);

  auto* critical = app.add_subcommand("critical", "Critical values S_m where real roots collide");
  add_param_flags(critical, c);
  critical->add_option("--n-max", c.n_max, "Largest m")->check(CLI::PositiveNumber);
  add_output_flags(critical, c);

  auto* simulate_cmd = app.add_subcommand("simulate", "Time-domain run with decay-rate fit");
  add_param_flags(simulate_cmd, c);
  simulate_cmd->add_option("--N", c.grid, "Grid intervals")->check(CLI::Range(4, 1 << 24));
  simulate_cmd->add_option("--t-end", c.t_end, "Final time (default: fit start + 30/|lambda_0|)")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--init", c.init, "Initial data")
      ->check(CLI::IsMember({"eigen", "box", "hat", "random", "jump"}));
  simulate_cmd->add_option("--seed", c.seed, "Seed for --init random");
  simulate_cmd->add_option("--stride", c.stride, "Emit every k-th step (default: about 1000 rows)")
      ->check(CLI::NonNegativeNumber);
  add_output_flags(simulate_cmd, c);

  auto* eigen_cmd = app.add_subcommand("eigenfunction", "Sampled eigenfunction (u, v) and rotation number");
  add_param_flags(eigen_cmd, c);
  eigen_cmd->add_option("--n", c.n, "Strip index (0 for the dominant eigenfunction)")
      ->check(CLI::NonNegativeNumber);
  eigen_cmd->add_option("--j", c.j, "Branch index")->check(CLI::IsMember({1, 2}));
  eigen_cmd->add_option("--N", c.grid, "Grid intervals")->check(CLI::Range(2, 1 << 24));
  eigen_cmd->add_option("--normalization", c.normalization, "Eigenfunction scale")
      ->check(CLI::IsMember({"canonical", "unit"}));
  add_output_flags(eigen_cmd, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kBadUsage;
  }

  for (auto* sub : {spectrum, critical, simulate_cmd, eigen_cmd}) {
    if (sub->parsed()) c.subcommand = sub->get_name();
  }

  try {
    if (c.subcommand == "spectrum") return cmd_spectrum(c, out, err);
    if (c.subcommand == "critical") return cmd_critical(c, out, err);
    if (c.subcommand == "simulate") return cmd_simulate(c, out, err);
    return cmd_eigenfunction(c, out, err);
  } catch (const UsageError& e) {
    err << "crw " << c.subcommand << ": " << e.what() << '\n';
    return kBadUsage;
  } catch (const ConvergenceFailure& e) {
    err << "crw " << c.subcommand << ": non-convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const NoConvergence& e) {
    err << "crw " << c.subcommand << ": non-convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const GridTooCoarse& e) {
    err << "crw " << c.subcommand << ": non-convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    err << "crw " << c.subcommand << ": " << e.what() << '\n';
    return kBadUsage;
  } catch (const std::exception& e) {
    err << "crw " << c.subcommand << ": invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  }
}

}  // namespace crw::cli
