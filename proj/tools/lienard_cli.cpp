// Command-line front end. Exit codes: 0 success, 2 input error,
// 3 precondition violation, 4 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lienard/avg.hpp"
#include "lienard/cycles.hpp"
#include "lienard/deform.hpp"
#include "lienard/errors.hpp"
#include "lienard/hypo.hpp"
#include "lienard/io.hpp"
#include "lienard/ode.hpp"

using namespace lienard;
using io::Json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumerical = 4;

struct Config {
  std::string system_path;
  std::string out_path;
  std::string csv_path;
  std::string range;
  int grid = 64;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  double tol_D = hypo::kDefaultTolD;
  double eps = 0.01;
  double A = avg::default_A();
  double B = avg::default_B();
  bool chain_cycles = false;
  std::string kind = "g_lambda";
  unsigned jobs = 1;
  std::optional<long long> seed;
  double x0 = 1.0;
  double y0 = 0.0;
  double t_max = 10.0;
};

Json header(const std::string& command, const Config& cfg) {
  Json j;
  j["schema"] = io::kSchemaVersion;
  j["command"] = command;
  if (cfg.seed) j["seed"] = *cfg.seed;
  return j;
}

void emit(const Config& cfg, const Json& j) {
  const std::string text = io::dump(j);
  if (cfg.out_path.empty() || cfg.out_path == "-")
    std::cout << text;
  else
    io::write_text(cfg.out_path, text);
}

funcs::LienardSystem load(const Config& cfg) {
  if (cfg.system_path.empty()) throw InputError("--system is required");
  return io::load_system(cfg.system_path);
}

hypo::Options hypo_opts(const Config& cfg) {
  hypo::Options h;
  h.tol_D = cfg.tol_D;
  return h;
}

cycles::Options cycle_opts(const Config& cfg) {
  cycles::Options o;
  o.ode.abs_tol = cfg.tol_abs;
  o.ode.rel_tol = cfg.tol_rel;
  o.jobs = cfg.jobs;
  return o;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("--range must look like LO:HI");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const double lo = std::stod(a, &n1), hi = std::stod(b, &n2);
    if (n1 != a.size() || n2 != b.size()) throw InputError("--range must look like LO:HI");
    if (!(0.0 < lo && lo < hi)) throw InputError("--range needs 0 < LO < HI");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("--range must look like LO:HI");
  }
}

int cmd_analyze(const Config& cfg) {
  const auto sys = load(cfg);
  Json j = header("analyze", cfg);
  j["system"] = io::to_json(sys);
  j["report"] = io::to_json(hypo::analyze(sys, hypo_opts(cfg)));
  emit(cfg, j);
  return 0;
}

int cmd_simulate(const Config& cfg) {
  const auto sys = load(cfg);
  ode::Options o;
  o.abs_tol = cfg.tol_abs;
  o.rel_tol = cfg.tol_rel;
  const auto traj = ode::integrate(sys, {0.0, cfg.x0, cfg.y0}, cfg.t_max, o);
  const auto& end = traj.samples.back();
  Json j = header("simulate", cfg);
  j["system"] = io::to_json(sys);
  j["start"] = {{"t", 0.0}, {"x", cfg.x0}, {"y", cfg.y0}};
  j["end"] = {{"t", end.t}, {"x", end.x}, {"y", end.y}};
  j["steps"] = {{"accepted", traj.stats.accepted},
                {"rejected", traj.stats.rejected},
                {"breakpoint_landings", traj.stats.breakpoint_landings}};
  if (!cfg.csv_path.empty()) io::write_text(cfg.csv_path, io::trajectory_csv(traj.samples));
  emit(cfg, j);
  return 0;
}

Json run_cycles(const Config& cfg, const funcs::LienardSystem& sys, std::optional<std::pair<double, double>> range) {
  const auto rep = hypo::analyze(sys, hypo_opts(cfg));
  const auto [lo, hi] = range ? *range : cycles::default_range(rep);
  const auto opts = cycle_opts(cfg);
  const auto r = cycles::find_cycles(sys, lo, hi, cfg.grid, opts, cycles::lines_from(rep));

  Json recs = Json::array();
  for (const auto& c : r.cycles) recs.push_back(io::to_json(c));
  Json checks = Json::array();
  for (const auto& c : cycles::verify_crossings(r.cycles, rep.must_cross))
    checks.push_back({{"index", c.index}, {"pass", c.pass}, {"x_min", c.x_min}, {"x_max", c.x_max}});
  int no_return = 0;
  for (const auto& s : r.grid) no_return += s.returned ? 0 : 1;

  Json j;
  j["range"] = {lo, hi};
  j["grid"] = cfg.grid;
  j["grid_without_return"] = no_return;
  j["verdict"] = hypo::to_string(rep.verdict);
  j["must_cross"] = hypo::to_string(rep.must_cross);
  j["cycles"] = recs;
  j["counts"] = io::to_json(cycles::count_crossings(r.cycles));
  j["crossing_checks"] = checks;
  j["notes"] = r.notes;

  if (!cfg.csv_path.empty()) {
    std::string csv = "cycle,x,y\n";
    char buf[80];
    for (std::size_t i = 0; i < r.cycles.size(); ++i)
      for (const auto& p : cycles::closed_orbit(sys, r.cycles[i].x_fixed, 400, opts)) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, p.x, p.y);
        csv += buf;
      }
    io::write_text(cfg.csv_path, csv);
  }
  return j;
}

int cmd_cycles(const Config& cfg) {
  const auto sys = load(cfg);
  std::optional<std::pair<double, double>> range;
  if (!cfg.range.empty()) range = parse_range(cfg.range);
  Json j = header("cycles", cfg);
  j["system"] = io::to_json(sys);
  j["search"] = run_cycles(cfg, sys, range);
  emit(cfg, j);
  return 0;
}

int cmd_deform(const Config& cfg) {
  const auto sys = load(cfg);
  deform::Options o;
  o.tol_D = cfg.tol_D;
  std::optional<deform::DeformOutcome> out;
  if (cfg.kind == "g_lambda") {
    out = deform::deform_g_lambda(sys, o);
  } else if (cfg.kind == "F_scale") {
    out = deform::deform_F_scale(sys, o);
  } else if (cfg.kind == "poly") {
    if (sys.F().kind() != funcs::FnKind::Poly) throw InputError("--kind poly needs a polynomial F");
    out = deform::poly_deform(sys.F().polynomial(), sys.g(), o);
  } else if (cfg.kind == "tilt") {
    out = deform::tilt_pipeline(sys.f(), sys.g(), o);
  } else {
    throw InputError("unknown --kind " + cfg.kind + " (g_lambda, F_scale, poly, tilt)");
  }
  Json j = header("deform", cfg);
  const Json body = io::to_json(*out);
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit(cfg, j);
  return 0;
}

int cmd_average(const Config& cfg) {
  funcs::Polynomial f = avg::three_cycle_friction();
  if (!cfg.system_path.empty()) {
    const auto sys = load(cfg);
    if (sys.f().kind() != funcs::FnKind::Poly) throw InputError("average needs a polynomial friction f");
    f = sys.f().polynomial();
  }
  Json j = header("average", cfg);
  j["f"] = io::to_json(f);
  j["prediction"] = io::to_json(avg::predict_cycles(f));
  emit(cfg, j);
  return 0;
}

int cmd_counterexample(const Config& cfg) {
  const auto sys = avg::duff_levinson_system(cfg.eps, cfg.A, cfg.B);
  Json j = header("counterexample", cfg);
  j["eps"] = cfg.eps;
  j["A"] = cfg.A;
  j["B"] = cfg.B;
  j["system"] = io::to_json(sys);
  if (cfg.chain_cycles) {
    std::optional<std::pair<double, double>> range = std::make_pair(0.05, 1.5);
    if (!cfg.range.empty()) range = parse_range(cfg.range);
    j["search"] = run_cycles(cfg, sys, range);
  }
  emit(cfg, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit cycles of Lienard systems x'' + f(x) x' + g(x) = 0"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "JSON report path (stdout when omitted)");
    sub->add_option("--seed", cfg.seed, "Seed recorded in the report");
  };
  auto add_system = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--system", cfg.system_path, "System JSON: {\"f\"|\"F\": fn, \"g\": fn}");
    if (required) opt->required();
  };
  auto add_tol_D = [&](CLI::App* sub) { sub->add_option("--tol-D", cfg.tol_D, "Relative tolerance for G(x1) = G(x2)")->capture_default_str()->check(CLI::PositiveNumber); };
  auto add_ode_tols = [&](CLI::App* sub) {
    sub->add_option("--tol-abs", cfg.tol_abs, "Integrator absolute tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--tol-rel", cfg.tol_rel, "Integrator relative tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--range", cfg.range, "Search range LO:HI on the positive x-axis");
    sub->add_option("--grid", cfg.grid, "Grid points")->capture_default_str()->check(CLI::Range(8, 1 << 20));
    sub->add_option("--jobs", cfg.jobs, "Threads for the grid")->capture_default_str()->check(CLI::Range(1u, 256u));
    sub->add_option("--csv", cfg.csv_path, "Closed-orbit samples, columns cycle,x,y");
    add_ode_tols(sub);
    add_tol_D(sub);
  };

  auto* analyze = app.add_subcommand("analyze", "Check the hypotheses and report the verdict");
  add_system(analyze, true);
  add_tol_D(analyze);
  add_common(analyze);

  auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory");
  add_system(simulate, true);
  simulate->add_option("--x0", cfg.x0, "Initial x")->capture_default_str();
  simulate->add_option("--y0", cfg.y0, "Initial y")->capture_default_str();
  simulate->add_option("--t-max", cfg.t_max, "Final time")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--csv", cfg.csv_path, "Trajectory samples, columns t,x,y");
  add_ode_tols(simulate);
  add_common(simulate);

  auto* cyc = app.add_subcommand("cycles", "Find limit cycles with the return map");
  add_system(cyc, true);
  add_search(cyc);
  add_common(cyc);

  auto* def = app.add_subcommand("deform", "Deform the system until G(x1) = G(x2)");
  add_system(def, true);
  def->add_option("--kind", cfg.kind, "g_lambda, F_scale, poly or tilt")->capture_default_str();
  add_tol_D(def);
  add_common(def);

  auto* average = app.add_subcommand("average", "First-order averaging of a polynomial friction");
  add_system(average, false);
  add_common(average);

  auto* counter = app.add_subcommand("counterexample", "Write the three-cycle system");
  counter->add_option("--eps", cfg.eps, "Size of the friction")->capture_default_str()->check(CLI::PositiveNumber);
  counter->add_option("--A", cfg.A, "Coefficient of x in F")->capture_default_str();
  counter->add_option("--B", cfg.B, "Coefficient of x^3 in F")->capture_default_str();
  counter->add_flag("--cycles", cfg.chain_cycles, "Also search for cycles (default range 0.05:1.5)");
  add_search(counter);
  add_common(counter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*cyc) return cmd_cycles(cfg);
    if (*def) return cmd_deform(cfg);
    if (*average) return cmd_average(cfg);
    if (*counter) return cmd_counterexample(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition " << e.condition() << " violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}
