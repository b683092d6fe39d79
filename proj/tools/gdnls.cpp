// Command-line front end: one subcommand per workflow, JSON configuration with
// `--key value` overrides, CSV/JSON outputs and a manifest for every run.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gdnls/criterion.hpp"
#include "gdnls/evolve.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/io.hpp"
#include "gdnls/variational.hpp"
#include "gdnls/waves.hpp"

#ifndef GDNLS_VERSION
#define GDNLS_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace gdnls;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kConfigError = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

Json params_defaults(double sigma, double omega, double c) {
  return {{"sigma", sigma}, {"omega", omega}, {"c", c}, {"alpha", 1.0}, {"beta", 0.0}};
}

Json data_defaults() {
  return {{"family", "gaussian"}, {"mass_over_pi", 3.9}, {"width", 1.0}, {"wavenumber", 0.0},
          {"modulation", 0.0},    {"scale", 1.0},        {"omega", 1.0}, {"c", 0.0},
          {"path", ""}};
}

Json defaults_for(const std::string& cmd) {
  Json cfg = {{"out", "gdnls_out"}, {"seed", 1}};
  if (cmd == "soliton") {
    cfg["grid"] = {{"L", 60.0}, {"N", 4096}};
    cfg["params"] = params_defaults(1.0, 1.0, 0.0);
  } else if (cmd == "verify") {
    cfg["grid"] = {{"L", 40.0}, {"N", 512}};
    cfg["corpus"] = 100;
    cfg["tolerance"] = 1e-9;
  } else if (cmd == "certify") {
    cfg["grid"] = {{"L", 40.0}, {"N", 512}};
    cfg["sigma"] = 1.0;
    cfg["data"] = data_defaults();
    cfg["search"] = {{"c_min", 0.0},     {"span", 1024.0},    {"points", 40},
                     {"massless", true}, {"grid_search", true}, {"round_to_grid", true}};
  } else if (cmd == "minimize-mu") {
    cfg["grid"] = {{"L", 40.0}, {"N", 256}};
    cfg["params"] = params_defaults(1.0, 1.0, 0.0);
    cfg["tolerance"] = 1e-6;
    cfg["max_iterations"] = 60000;
    cfg["step"] = 0.0;
    cfg["accept"] = 1e-3;
  } else if (cmd == "simulate") {
    cfg["grid"] = {{"L", 60.0}, {"N", 1024}};
    cfg["params"] = params_defaults(1.0, 1.0, 0.0);
    Json data = data_defaults();
    data["family"] = "soliton";
    cfg["data"] = data;
    cfg["scheme"] = {{"dt", 1e-3},        {"t_final", 5.0},     {"dealias", true},
                     {"cfl_safety", 0.5}, {"adaptive", true},   {"sample_every", 100},
                     {"max_steps", 2000000}};
    cfg["monitor"] = true;
    cfg["dump_times"] = Json::array();
  } else if (cmd == "zroot") {
    cfg["sigmas"] = {1.2, 1.5, 1.8};
    cfg["tail_tolerance"] = 1e-12;
    cfg["subdivision"] = 1;
  }
  return cfg;
}

bool same_kind(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

// Recursive merge that rejects keys absent from the defaults.
void merge_checked(Json& base, const Json& patch, const std::string& where) {
  if (!patch.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = where.empty() ? it.key() : where + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown key '" + key + "'");
    Json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), key);
    } else if (!same_kind(slot, it.value())) {
      throw ConfigError("key '" + key + "' expects " + std::string(slot.type_name()) + ", got " +
                        it.value().type_name());
    } else {
      slot = it.value();
    }
  }
}

Json parse_override_value(const std::string& raw) {
  try {
    return Json::parse(raw);
  } catch (const Json::parse_error&) {
    return raw;
  }
}

void apply_override(Json& cfg, const std::string& dotted, const std::string& raw) {
  Json patch = parse_override_value(raw);
  std::string path = dotted;
  while (true) {
    const auto dot = path.rfind('.');
    const std::string leaf = dot == std::string::npos ? path : path.substr(dot + 1);
    patch = Json{{leaf, patch}};
    if (dot == std::string::npos) break;
    path = path.substr(0, dot);
  }
  merge_checked(cfg, patch, "");
}

Json load_config(const std::string& cmd, const std::string& file,
                 const std::vector<std::string>& extras) {
  Json cfg = defaults_for(cmd);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError(file + ": " + e.what());
    }
    merge_checked(cfg, doc, "");
  }
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0) throw ConfigError("unexpected argument '" + key + "'");
    key = key.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw ConfigError("override --" + key + " has no value");
      value = extras[++i];
    }
    apply_override(cfg, key, value);
  }
  if (const char* env = std::getenv("GDNLS_OUT"); env != nullptr && *env != '\0') cfg["out"] = env;
  return cfg;
}

Params params_from(const Json& j) {
  return {j.at("sigma").get<double>(), j.at("omega").get<double>(), j.at("c").get<double>(),
          j.at("alpha").get<double>(), j.at("beta").get<double>()};
}

Grid grid_from(const Json& j) {
  const auto n = j.at("N").get<std::int64_t>();
  if (n <= 0) throw ConfigError("grid.N must be positive");
  return Grid(j.at("L").get<double>(), static_cast<std::size_t>(n));
}

std::size_t count_from(const Json& j, const std::string& key) {
  const auto v = j.at(key).get<std::int64_t>();
  if (v <= 0) throw ConfigError(key + " must be positive");
  return static_cast<std::size_t>(v);
}

// Initial data from the `data` block; sigma applies to the soliton family.
Field data_from(const Json& d, const Grid& grid, double sigma) {
  const std::string family = d.at("family").get<std::string>();
  Field u = Field::zeros(grid);
  if (family == "gaussian" || family == "modulated") {
    const double width = d.at("width").get<double>();
    if (!(width > 0.0)) throw ConfigError("data.width must be positive");
    const double m = d.at("mass_over_pi").get<double>() * kPi;
    const double a = std::sqrt(m / (std::sqrt(kPi / 2.0) * width));
    const double k = d.at("wavenumber").get<double>();
    u = Field::sample(grid, [&](double x) {
      const double s = x / width;
      return std::polar(a * std::exp(-s * s), k * x);
    });
  } else if (family == "soliton") {
    u = profile({sigma, d.at("omega").get<double>(), d.at("c").get<double>()}, grid);
  } else if (family == "file") {
    u = read_field(d.at("path").get<std::string>());
    if (!(u.grid() == grid)) {
      std::ostringstream os;
      os << "field file grid (L=" << u.grid().length() << ", N=" << u.size()
         << ") differs from grid (L=" << grid.length() << ", N=" << grid.size() << ")";
      throw ConfigError(os.str());
    }
  } else {
    throw ConfigError("data.family must be gaussian, modulated, soliton or file; got '" + family + "'");
  }
  u = u.scaled(d.at("scale").get<double>());
  const double c = d.at("modulation").get<double>();
  if (c != 0.0 || family == "modulated") u = modulated_data(u, c);
  return u;
}

// ---------------------------------------------------------------------------
// Run bookkeeping
// ---------------------------------------------------------------------------

struct Run {
  fs::path out;
  Json metrics = Json::object();
  Json checks = Json::object();

  void check(const std::string& name, bool ok) { checks[name] = ok; }
  bool all_passed() const {
    for (const auto& [name, ok] : checks.items()) {
      if (!ok.get<bool>()) return false;
    }
    return true;
  }
  std::ofstream csv(const std::string& name) const {
    std::ofstream f(out / name);
    f << std::setprecision(17);
    return f;
  }
};

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

void cmd_soliton(const Json& cfg, Run& run) {
  const Params p = params_from(cfg.at("params"));
  const Grid grid = grid_from(cfg.at("grid"));
  const SolitonSpec spec{p.sigma, p.omega, p.c};
  require_admissible(spec);
  const Field u = profile(spec, grid);
  {
    auto f = run.csv("profile.csv");
    f << "x,re,im,abs\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
      f << grid.node(j) << ',' << u[j].real() << ',' << u[j].imag() << ',' << std::abs(u[j]) << '\n';
    }
  }
  run.metrics["slow_decay"] = u.slow_decay();
  run.metrics["massless"] = spec.massless();

  if (!spec.massless()) {
    const double residual = elliptic_residual(u.modulus(), p);
    run.metrics["elliptic_residual"] = residual;
    run.check("elliptic_residual", residual < 1e-8);
  }

  auto f = run.csv("invariants.csv");
  f << "quantity,numeric,closed,relerr\n";
  if (p.sigma == 1.0) {
    const ClosedFormInvariants cf = closed_form_invariants(p.sigma, p.omega, p.c);
    const double numeric[] = {mass(u), momentum(u), energy(u, p.sigma), action(u, p)};
    const double closed[] = {cf.mass, cf.momentum, cf.energy, cf.action};
    const char* names[] = {"M", "P", "E", "S"};
    // The algebraic tail of the massless profile is cut by the box, so its
    // rows are reported without a check.
    for (int i = 0; i < 4; ++i) {
      const double scale = std::max(std::abs(closed[i]), std::abs(cf.action));
      const double rel = std::abs(numeric[i] - closed[i]) / scale;
      f << names[i] << ',' << numeric[i] << ',' << closed[i] << ',' << rel << '\n';
      run.metrics[std::string("relerr_") + names[i]] = rel;
      if (!spec.massless()) run.check(std::string("invariant_") + names[i], rel < 1e-6);
    }
  } else {
    const double numeric = action(u, p);
    const double closed = profile_action_quadrature(p.sigma, p.omega, p.c);
    const double rel = std::abs(numeric - closed) / std::abs(closed);
    f << "S," << numeric << ',' << closed << ',' << rel << '\n';
    run.metrics["relerr_S"] = rel;
    if (!spec.massless()) run.check("invariant_S", rel < 1e-6);
  }
}

void cmd_verify(const Json& cfg, Run& run) {
  const Grid grid = grid_from(cfg.at("grid"));
  const std::size_t corpus = count_from(cfg, "corpus");
  const double tol = cfg.at("tolerance").get<double>();
  std::mt19937_64 rng(cfg.at("seed").get<std::uint64_t>());
  const std::vector<Params> params{
      {1.0, 1.0, 0.0, 1.0, 0.0},   {1.0, 1.0, 1.0, 1.0, -0.5}, {1.0, 0.25, 1.0, 1.0, -0.5},
      {2.0, 1.0, 0.0, 1.0, 0.3},   {2.0, 2.0, -1.0, 1.0, 0.5}, {2.0, 1.0, 1.5, 1.0, 0.0},
      {3.0, 1.0, 0.0, 1.0, 0.0},   {3.0, 0.5, 1.0, 1.0, -0.5}, {1.5, 1.0, 0.5, 1.0, -0.2}};
  auto f = run.csv("verify.csv");
  f << "check,value,threshold,pass\n";
  auto row = [&](const std::string& name, double value, double threshold, bool ok) {
    f << name << ',' << value << ',' << threshold << ',' << (ok ? 1 : 0) << '\n';
    run.check(name, ok);
    run.metrics[name] = value;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < corpus; ++i) {
    const Field u = random_smooth_field(grid, rng);
    for (const Params& p : params) {
      const IdentityReport r = identity_suite(u, validate_params(p));
      for (const IdentityResidual* x : {&r.momentum_shift, &r.nonlinear_shift, &r.nonlinear_split,
                                        &r.action_split, &r.reduced_split}) {
        worst = std::max(worst, x->residual / std::max(x->scale, 1e-300));
      }
    }
  }
  row("identity_suite_worst", worst, tol, worst < tol);

  const Field q = Field(profile_modulus({1.0, 1.0, 0.0}, Grid(60.0, 4096)));
  const double gn1 = interpolation_ratios(q).sextic_by_mass;
  row("gn_ground_state_ratio", gn1, 1e-6, std::abs(gn1 - 1.0) < 1e-6);
  const Field w = Field(profile_modulus({1.0, 0.25, 1.0}, Grid(400.0, 32768)));
  const double gn2 = interpolation_ratios(w).sextic_by_quartic;
  row("gn_massless_ratio", gn2, 1e-5, std::abs(gn2 - 1.0) < 1e-5);

  double f1 = 0.0;
  for (double z = -0.9; z <= 0.9 + 1e-12; z += 0.1) {
    f1 = std::max(f1, std::abs(stability_function(z, 1.0) + 1.0));
  }
  row("cubic_stability_function_deviation", f1, 1e-10, f1 < 1e-10);
}

void cmd_certify(const Json& cfg, Run& run) {
  const Grid grid = grid_from(cfg.at("grid"));
  const double sigma = cfg.at("sigma").get<double>();
  const Field u0 = data_from(cfg.at("data"), grid, sigma);
  const Json& s = cfg.at("search");
  SearchConfig search;
  search.c_min = s.at("c_min").get<double>();
  search.span = s.at("span").get<double>();
  search.points = count_from(s, "points");
  search.massless = s.at("massless").get<bool>();
  search.grid_search = s.at("grid_search").get<bool>();
  search.round_to_grid = s.at("round_to_grid").get<bool>();

  const CertificationResult r = certify_global(u0, sigma, search);
  run.metrics["mass"] = mass(u0);
  run.metrics["momentum"] = momentum(u0);
  run.metrics["energy"] = energy(u0, sigma);
  run.metrics["candidates"] = r.rows.size();
  {
    auto f = run.csv("scan.csv");
    f << "sigma,omega,c,alpha,beta,action,level,virial,margin,accepted\n";
    for (const ScanRow& row : r.rows) {
      f << row.params.sigma << ',' << row.params.omega << ',' << row.params.c << ','
        << row.params.alpha << ',' << row.params.beta << ',' << row.action << ',' << row.level
        << ',' << row.virial << ',' << row.margin() << ',' << (row.accepted() ? 1 : 0) << '\n';
    }
  }
  if (r.certificate) {
    const Json doc = certificate_to_json(*r.certificate);
    write_atomic(run.out / "certificate.json", doc.dump(2));
    run.metrics["certificate"] = doc;
    run.check("certificate_found", true);
    run.check("round_trip", classify(u0, r.certificate->params).region == Region::positive_virial);
  } else {
    Json doc = {{"result", "NotFound"}, {"candidates", r.rows.size()}};
    if (r.best) doc["best"] = scan_row_to_json(*r.best);
    write_atomic(run.out / "notfound.json", doc.dump(2));
    run.metrics["best_margin"] = r.best ? r.best->margin() : 0.0;
    run.check("certificate_found", false);
  }
}

void cmd_minimize_mu(const Json& cfg, Run& run) {
  const Params p = validate_params(params_from(cfg.at("params")));
  MinimizeConfig mc;
  mc.grid = grid_from(cfg.at("grid"));
  mc.tolerance = cfg.at("tolerance").get<double>();
  mc.max_iterations = count_from(cfg, "max_iterations");
  mc.step = cfg.at("step").get<double>();
  mc.require_convergence = false;
  const LevelEstimate est = estimate_level(p, mc);
  const double ref = reference_level(p);
  const double rel = std::abs(est.level - ref) / std::abs(ref);
  auto f = run.csv("mu.csv");
  f << "quantity,value\n";
  f << "mu," << est.level << '\n';
  f << "mu_from_complement," << est.level_from_complement << '\n';
  f << "reference," << ref << '\n';
  f << "relerr," << rel << '\n';
  f << "iterations," << est.iterations << '\n';
  f << "gradient_norm," << est.gradient_norm << '\n';
  write_field(run.out / "minimizer.json", est.minimizer);
  run.metrics["mu"] = est.level;
  run.metrics["reference"] = ref;
  run.metrics["relerr"] = rel;
  run.metrics["iterations"] = est.iterations;
  run.check("converged", est.converged);
  run.check("mu_matches_reference", rel < cfg.at("accept").get<double>());
}

void cmd_simulate(const Json& cfg, Run& run) {
  const Grid grid = grid_from(cfg.at("grid"));
  const Params p = params_from(cfg.at("params"));
  const Json& d = cfg.at("data");
  const Field u0 = data_from(d, grid, p.sigma);
  const Json& s = cfg.at("scheme");
  SchemeConfig sc;
  sc.dt = s.at("dt").get<double>();
  sc.t_final = s.at("t_final").get<double>();
  sc.dealias = s.at("dealias").get<bool>();
  sc.cfl_safety = s.at("cfl_safety").get<double>();
  sc.adaptive = s.at("adaptive").get<bool>();
  sc.sample_every = count_from(s, "sample_every");
  sc.max_steps = count_from(s, "max_steps");
  std::vector<double> dumps;
  for (const Json& t : cfg.at("dump_times")) dumps.push_back(t.get<double>());
  sc.store_fields = !dumps.empty();
  std::optional<Params> monitored;
  if (cfg.at("monitor").get<bool>()) monitored = validate_params(p);

  const Trajectory traj = integrate(u0, p.sigma, sc, monitored);
  {
    auto f = run.csv("trajectory.csv");
    write_csv(f, traj);
  }
  write_field(run.out / "final.json", traj.final_state);
  for (std::size_t i = 0; i < dumps.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
      if (std::abs(traj.records[k].t - dumps[i]) < std::abs(traj.records[best].t - dumps[i])) best = k;
    }
    write_field(run.out / ("field_" + std::to_string(i) + ".json"), traj.fields[best]);
  }

  const DiagnosticsRecord& first = traj.records.front();
  const DiagnosticsRecord& last = traj.records.back();
  run.metrics["steps"] = traj.steps;
  run.metrics["t_reached"] = last.t;
  run.metrics["blowup"] = traj.blowup;
  run.metrics["truncated"] = traj.truncated;
  run.metrics["mass_drift"] = std::abs(last.mass - first.mass) / first.mass;
  run.metrics["momentum_drift"] = std::abs(last.momentum - first.momentum);
  run.metrics["energy_drift"] = std::abs(last.energy - first.energy);
  run.check("completed", !traj.blowup && !traj.truncated);
  if (d.at("family").get<std::string>() == "soliton" && d.at("scale").get<double>() == 1.0 &&
      d.at("modulation").get<double>() == 0.0) {
    const Field exact = traveling_wave({p.sigma, d.at("omega").get<double>(), d.at("c").get<double>()},
                                       last.t, grid);
    double err = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) err = std::max(err, std::abs(exact[j] - traj.final_state[j]));
    run.metrics["final_linf_error"] = err;
    run.check("soliton_error", err < 1e-4);
  }
  if (monitored) {
    const InvarianceReport r = invariance_check(traj, u0, *monitored);
    run.metrics["min_virial"] = r.min_virial;
    run.metrics["max_virial"] = r.max_virial;
    run.metrics["drift_scale"] = r.drift_scale;
    run.metrics["gradient_bound"] = r.gradient_bound;
    run.metrics["max_gradient"] = r.max_gradient;
  }
}

void cmd_zroot(const Json& cfg, Run& run) {
  QuadratureOptions opts;
  opts.tail_tolerance = cfg.at("tail_tolerance").get<double>();
  opts.subdivision = static_cast<unsigned>(count_from(cfg, "subdivision"));
  auto f = run.csv("zroot.csv");
  f << "sigma,z0,absF\n";
  Json rows = Json::array();
  for (const Json& s : cfg.at("sigmas")) {
    const double sigma = s.get<double>();
    const double z0 = stability_root(sigma, opts);
    const double residual = std::abs(stability_function(z0, sigma, opts));
    f << sigma << ',' << z0 << ',' << residual << '\n';
    rows.push_back({{"sigma", sigma}, {"z0", z0}, {"absF", residual}});
    std::ostringstream name;
    name << "root_sigma_" << sigma;
    run.check(name.str(), residual < 1e-6);
  }
  run.metrics["roots"] = rows;
}

using Handler = void (*)(const Json&, Run&);

int execute(const std::string& cmd, Handler handler, const std::string& config_file,
            const std::vector<std::string>& extras) {
  const auto start = std::chrono::steady_clock::now();
  Json manifest = {{"tool", "gdnls"}, {"version", GDNLS_VERSION}, {"subcommand", cmd},
                   {"started", utc_now()}};
  Run run;
  int code = kPass;
  std::string error;
  Json cfg;
  try {
    cfg = load_config(cmd, config_file, extras);
  } catch (const std::exception& e) {
    error = e.what();
    code = kConfigError;
    cfg = defaults_for(cmd);
    if (const char* env = std::getenv("GDNLS_OUT"); env != nullptr && *env != '\0') cfg["out"] = env;
  }
  run.out = cfg.at("out").get<std::string>();
  manifest["config"] = cfg;
  try {
    fs::create_directories(run.out);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: cannot create output directory: " << e.what() << '\n';
    return kConfigError;
  }

  if (code == kPass) {
    try {
      handler(cfg, run);
      code = run.all_passed() ? kPass : kCheckFailure;
    } catch (const ConfigError& e) {
      error = e.what();
      code = kConfigError;
    } catch (const NotAdmissible& e) {
      error = e.what();
      code = kConfigError;
    } catch (const BadExponents& e) {
      error = e.what();
      code = kConfigError;
    } catch (const InvalidArgument& e) {
      error = e.what();
      code = kConfigError;
    } catch (const IncompatibleModulation& e) {
      error = e.what();
      code = kConfigError;
    } catch (const SigmaUnsupported& e) {
      error = e.what();
      code = kConfigError;
    } catch (const Json::exception& e) {
      error = e.what();
      code = kConfigError;
    } catch (const std::exception& e) {
      error = e.what();
      code = kCheckFailure;
    }
  }

  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["metrics"] = run.metrics;
  manifest["checks"] = run.checks;
  manifest["exit_code"] = code;
  manifest["status"] = code == kPass ? "pass" : (code == kCheckFailure ? "fail" : "error");
  if (!error.empty()) {
    manifest["error"] = error;
    std::cerr << "error: " << error << '\n';
  }
  write_atomic(run.out / "manifest.json", manifest.dump(2));
  for (const auto& [name, ok] : run.checks.items()) {
    std::cout << (ok.get<bool>() ? "PASS " : "FAIL ") << name << '\n';
  }
  std::cout << "manifest: " << (run.out / "manifest.json").string() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solitary waves, variational levels, global-existence certificates and "
               "time integration for the generalized derivative NLS."};
  app.set_version_flag("--version", GDNLS_VERSION);
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands{
      {"soliton", {"Profile samples, invariants and elliptic residual", cmd_soliton}},
      {"verify", {"Identity suite, sharp interpolation ratios and stability-function checks", cmd_verify}},
      {"certify", {"Search for parameters certifying global existence", cmd_certify}},
      {"minimize-mu", {"Constrained minimization of the reduced action", cmd_minimize_mu}},
      {"simulate", {"Time integration with conservation diagnostics", cmd_simulate}},
      {"zroot", {"Root of the stability function over a list of powers", cmd_zroot}},
  };
  std::string config_file;
  std::vector<CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("-c,--config", config_file, "JSON configuration file");
    sub->allow_extras();
    sub->footer("Any configuration key can be overridden as --dotted.key value.");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) {
      return execute(commands[i].first, commands[i].second.second, config_file, subs[i]->remaining());
    }
  }
  return kConfigError;
}
