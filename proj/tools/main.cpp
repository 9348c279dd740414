// Command-line front end: every experiment writes a CSV table (stdout or
// --out) plus a JSON summary next to it, deterministically in (config, seed).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mhscale/capacity.hpp"
#include "mhscale/clt.hpp"
#include "mhscale/diffusion.hpp"
#include "mhscale/errors.hpp"
#include "mhscale/forms.hpp"
#include "mhscale/scaling.hpp"

using nlohmann::json;
using namespace mhscale;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

using Row = std::vector<std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

struct Output {
  std::string out_path;  // empty = stdout
  std::string format = "csv";

  void write(const Table& t, const json& summary) const {
    std::ostringstream body;
    if (format == "json") {
      json arr = json::array();
      for (const auto& r : t.rows) {
        json obj;
        for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = r[i];
        arr.push_back(obj);
      }
      body << arr.dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < t.header.size(); ++i) {
        body << (i ? "," : "") << t.header[i];
      }
      body << "\n";
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) body << (i ? "," : "") << r[i];
        body << "\n";
      }
    }
    if (out_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write output file: " + out_path);
      f << body.str();
      const auto dot = out_path.find_last_of('.');
      const std::string jpath =
          (dot == std::string::npos ? out_path : out_path.substr(0, dot)) +
          ".summary.json";
      std::ofstream js(jpath, std::ios::binary);
      js << summary.dump(2) << "\n";
    }
    std::cerr << summary.dump(2) << "\n";
  }
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw ConfigError("empty integer list: " + s);
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ConfigError("empty list: " + s);
  return out;
}

// Values from --config fill in flags the user did not pass explicitly.
struct ConfigMerge {
  json cfg;
  CLI::App* app = nullptr;

  template <class T>
  void apply(const std::string& flag, T& value) const {
    if (cfg.is_null() || !cfg.contains(flag)) return;
    const CLI::Option* opt = app->get_option_no_throw("--" + flag);
    if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
    value = cfg.at(flag).get<T>();
  }
};

json load_config(const std::string& path) {
  if (path.empty()) return json();
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

struct Common {
  std::string config_path;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  std::string target_spec;

  void add_to(CLI::App* app, bool with_target = true) {
    app->add_option("--config", config_path, "JSON config file; flags override");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--threads", threads, "replica parallelism width (0 = auto)");
    app->add_option("--out", out, "output CSV path (stdout when omitted)");
    app->add_option("--format", format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_target) {
      app->add_option("--target", target_spec,
                      "target: gaussian(sigma) | tanh | logistic | spline(path)");
    }
  }

  ConfigMerge merge(CLI::App* app) {
    ConfigMerge m{load_config(config_path), app};
    m.apply("seed", seed);
    m.apply("threads", threads);
    m.apply("out", out);
    m.apply("format", format);
    m.apply("target", target_spec);
    return m;
  }

  Potential target() const {
    if (target_spec.empty()) throw ConfigError("missing --target");
    return parse_target(target_spec);
  }

  Output output() const { return {out, format}; }
};

int run_fisher(Common& c) {
  Potential p = c.target();
  QuadratureConfig quad;
  const double analytic = p.fisher_info;
  const double computed = fisher_information(p, quad);
  const RegularityReport reg = check_regularity(p);
  Table t;
  t.header = {"target", "fisher_info", "log_norm", "holder_max_ratio",
              "holder_k", "holder_pass", "lipschitz_pass"};
  t.rows.push_back({p.name, fmt(computed), fmt(p.log_norm),
                    fmt(reg.holder_max_ratio), fmt(p.holder_k),
                    reg.holder_pass ? "1" : "0", reg.lipschitz_pass ? "1" : "0"});
  json summary = {{"target", p.name},
                  {"fisher_info", computed},
                  {"analytic_fisher_info", analytic},
                  {"holder_pass", reg.holder_pass},
                  {"lipschitz_pass", reg.lipschitz_pass}};
  c.output().write(t, summary);
  return reg.holder_pass && reg.lipschitz_pass ? 0 : 1;
}

int run_clt(Common& c, std::string n_list, double tau, std::uint64_t reps) {
  Potential p = c.target();
  const std::vector<int> ns = parse_int_list(n_list);
  Table t;
  t.header = {"n",   "tau",    "reps",   "mean", "mean_se", "variance",
              "ks",  "degenerate", "acc", "acc_se", "c_tau",   "gap"};
  json rows = json::array();
  for (int n : ns) {
    ChainConfig cfg{n, tau, p, c.seed, 0};
    const CltReport rep = acceptance_clt(cfg, reps, c.threads);
    const Estimate acc = mean_acceptance(cfg, reps, c.threads);
    const double ct = tau == 0.0 ? 1.0 : c_of_tau(tau, p.fisher_info);
    const double gap = std::abs(acc.value - ct);
    t.rows.push_back({fmt(n), fmt(tau), fmt(double(reps)), fmt(rep.mean),
                      fmt(rep.mean_se), fmt(rep.variance), fmt(rep.ks),
                      rep.degenerate ? "1" : "0", fmt(acc.value), fmt(acc.se),
                      fmt(ct), fmt(gap)});
    rows.push_back({{"n", n},
                    {"mean", rep.mean},
                    {"variance", rep.variance},
                    {"ks", rep.ks},
                    {"degenerate", rep.degenerate},
                    {"acc", acc.value},
                    {"gap", gap}});
  }
  c.output().write(t, {{"subcommand", "clt"}, {"tau", tau}, {"rows", rows}});
  return 0;
}

int run_forms(Common& c, const std::string& h_spec, std::string n_list, double tau,
              std::uint64_t reps, const std::string& mode, double eps) {
  Potential p = c.target();
  const std::vector<int> ns = parse_int_list(n_list);
  if (mode == "m2") {
    const CylinderFunction h = parse_cylinder(h_spec);
    const MoscoTable table = mosco_m2_curve(h, tau, p, ns, reps, c.seed, c.threads);
    Table t;
    t.header = {"n", "phi_n", "phi_n_se", "phi_limit", "rel_gap", "gap_grew"};
    bool any_grew = false;
    for (const auto& r : table.rows) {
      t.rows.push_back({fmt(r.n), fmt(r.phi_n), fmt(r.phi_n_se), fmt(r.phi_limit),
                        fmt(r.rel_gap), r.gap_grew ? "1" : "0"});
      any_grew = any_grew || r.gap_grew;
    }
    json summary = {{"subcommand", "forms"},
                    {"mode", "m2"},
                    {"h", h.name},
                    {"h_compact_support", table.h_compact},
                    {"gap_grew_anywhere", any_grew}};
    c.output().write(t, summary);
    return 0;
  }
  if (mode == "domination") {
    const CylinderFunction h = parse_cylinder(h_spec);
    const DominationReport rep =
        domination_check(h, tau, p, ns, eps, reps, c.seed, c.threads);
    Table t;
    t.header = {"n", "phi_n", "phi_n_se", "l2", "phi_limit", "rhs", "margin",
                "violation"};
    for (const auto& r : rep.rows) {
      t.rows.push_back({fmt(r.n), fmt(r.phi_n), fmt(r.phi_n_se), fmt(r.l2),
                        fmt(r.phi_limit), fmt(r.rhs), fmt(r.margin),
                        r.violation ? "1" : "0"});
    }
    json summary = {{"subcommand", "forms"},
                    {"mode", "domination"},
                    {"h", h.name},
                    {"constant", rep.constant},
                    {"sup_term", rep.sup_term},
                    {"sup_argmax_n", rep.sup_argmax_n},
                    {"exp_term", rep.exp_term},
                    {"violations", rep.violations}};
    c.output().write(t, summary);
    return rep.violations == 0 ? 0 : 1;
  }
  if (mode == "chi2") {
    const Chi2Report rep = chi2_chernoff_check(ns, eps, reps, c.seed, c.threads);
    Table t;
    t.header = {"n", "exact_tail", "mc_tail", "mc_se", "bound", "n_times_exact",
                "bound_holds"};
    for (const auto& r : rep.rows) {
      t.rows.push_back({fmt(r.n), fmt(r.exact_tail), fmt(r.mc_tail), fmt(r.mc_se),
                        fmt(r.bound), fmt(r.n_times_exact),
                        r.bound_holds ? "1" : "0"});
    }
    json summary = {{"subcommand", "forms"},
                    {"mode", "chi2"},
                    {"eps", eps},
                    {"all_bounds_hold", rep.all_bounds_hold},
                    {"n_p_decreasing", rep.n_p_decreasing}};
    c.output().write(t, summary);
    return rep.all_bounds_hold && rep.n_p_decreasing ? 0 : 1;
  }
  throw ConfigError("unknown forms mode: " + mode);
}

int run_speed(Common& c, double I, int n, std::string tau_grid,
              std::uint64_t reps) {
  double fisher = I;
  std::optional<Potential> p;
  if (!c.target_spec.empty()) {
    p = c.target();
    fisher = p->fisher_info;
  }
  if (!(fisher > 0.0)) throw ConfigError("need --I or --target");
  const OptimalScaling opt = optimize_tau(fisher);
  std::printf("tau_star = %.6f  speed_star = %.6f  acc_star = %.6f\n",
              opt.tau_star, opt.speed_star, opt.acc_star);

  Table t;
  t.header = {"tau", "esjd", "stderr", "asymptote", "acc_rate", "acc_se"};
  json summary = {{"subcommand", "speed"},
                  {"I", fisher},
                  {"tau_star", opt.tau_star},
                  {"speed_star", opt.speed_star},
                  {"acc_star", opt.acc_star}};
  if (p && !tau_grid.empty()) {
    const SpeedCurve curve =
        empirical_speed_curve(*p, n, parse_double_list(tau_grid), reps, c.seed,
                              c.threads);
    for (const auto& r : curve.rows) {
      t.rows.push_back({fmt(r.tau), fmt(r.esjd), fmt(r.esjd_se), fmt(r.asymptote),
                        fmt(r.acc), fmt(r.acc_se)});
    }
    summary["empirical_argmax_tau"] = curve.rows[curve.argmax].tau;
    summary["acc_at_argmax"] = curve.rows[curve.argmax].acc;
  }
  c.output().write(t, summary);
  return 0;
}

int run_diffusion(Common& c, const std::string& mode, int n, double tau, double dt,
                  double horizon, std::string t_grid, std::uint64_t outer,
                  std::uint64_t inner, std::string lag_list, std::uint64_t reps,
                  const std::string& h_spec) {
  Potential p = c.target();
  SdeConfig sde{tau, p, dt, horizon, 1e6};
  if (mode == "sde") {
    Philox rng(c.seed, stream_id(salt::kSde, 0));
    const SdePath path = simulate_sde(sde, p.sample(rng), rng);
    Table t;
    t.header = {"t", "u"};
    const std::size_t stride = std::max<std::size_t>(1, path.u.size() / 10000);
    for (std::size_t i = 0; i < path.u.size(); i += stride) {
      t.rows.push_back({fmt(i * path.dt), fmt(path.u[i])});
    }
    c.output().write(t, {{"subcommand", "diffusion"},
                         {"mode", "sde"},
                         {"steps", path.u.size() - 1}});
    return 0;
  }
  if (mode == "semigroup") {
    ChainConfig cfg{n, tau, p, c.seed, 0};
    const CylinderFunction h = parse_cylinder(h_spec);
    const auto rows = semigroup_distance(h, parse_double_list(t_grid), cfg, outer,
                                         inner, sde, c.threads);
    Table t;
    t.header = {"n", "t", "msd", "msd_se", "rms", "raw_rms", "inner_noise",
                "sde_bias"};
    for (const auto& r : rows) {
      t.rows.push_back({fmt(n), fmt(r.t), fmt(r.msd), fmt(r.msd_se), fmt(r.rms),
                        fmt(r.raw_rms), fmt(r.inner_noise), fmt(r.sde_bias)});
    }
    c.output().write(t, {{"subcommand", "diffusion"}, {"mode", "semigroup"}});
    return 0;
  }
  if (mode == "acf") {
    ChainConfig cfg{n, tau, p, c.seed, 0};
    const auto rows =
        autocorrelation_compare(cfg, sde, parse_double_list(lag_list), reps,
                                c.threads);
    Table t;
    t.header = {"lag", "chain_acf", "chain_se", "sde_acf", "sde_se"};
    for (const auto& r : rows) {
      t.rows.push_back(
          {fmt(r.lag), fmt(r.chain), fmt(r.chain_se), fmt(r.sde), fmt(r.sde_se)});
    }
    c.output().write(t, {{"subcommand", "diffusion"}, {"mode", "acf"}});
    return 0;
  }
  throw ConfigError("unknown diffusion mode: " + mode);
}

int run_capacity(Common& c, std::string n_list, int L, double tau,
                 std::uint64_t reps) {
  Potential p = c.target();
  const std::vector<int> ns = parse_int_list(n_list);
  Table t;
  t.header = {"n",          "L",           "l2_bound",   "form_bound",
              "total",      "grad_sum_bound", "form_bound_alt",
              "mc_l2",      "mc_l2_se",    "mc_grad_sum", "mc_grad_se",
              "l2_ok",      "grad_ok"};
  bool all_ok = true;
  for (int n : ns) {
    const NestBound b = capacity_bound(p, tau, n, L, reps, c.seed, c.threads);
    t.rows.push_back({fmt(b.n), fmt(b.L), fmt(b.l2_bound), fmt(b.form_bound),
                      fmt(b.total), fmt(b.grad_sum_bound), fmt(b.form_bound_alt),
                      fmt(b.mc_l2), fmt(b.mc_l2_se), fmt(b.mc_grad_sum),
                      fmt(b.mc_grad_se), b.l2_ok ? "1" : "0",
                      b.grad_ok ? "1" : "0"});
    all_ok = all_ok && b.l2_ok && b.grad_ok;
  }
  c.output().write(t, {{"subcommand", "capacity"}, {"all_ok", all_ok}});
  return all_ok ? 0 : 1;
}

int run_chain_cmd(Common& c, int n, double tau, std::uint64_t steps,
                  std::uint64_t thin, std::string observables,
                  std::int64_t burn_in) {
  Potential p = c.target();
  ChainConfig cfg{n, tau, p, c.seed, burn_in};
  std::vector<CylinderFunction> obs;
  if (!observables.empty()) {
    std::stringstream ss(observables);
    std::string tok;
    while (std::getline(ss, tok, ';')) obs.push_back(parse_cylinder(tok));
  }
  const Trace trace = run_chain(cfg, steps, obs, thin);
  Table t;
  t.header = {"step", "accepted", "log_ratio"};
  for (const auto& o : obs) t.header.push_back(o.name);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    Row row;
    row.push_back(fmt(double(trace.steps[i])));
    if (i == 0) {
      row.push_back("");  // no proposal behind the initial row
      row.push_back("");
    } else {
      const StepRecord& rec = trace.records[i - 1];
      row.push_back(rec.accepted ? "1" : "0");
      row.push_back(fmt(rec.log_ratio));
    }
    for (double v : trace.observables[i]) row.push_back(fmt(v));
    t.rows.push_back(row);
  }
  json summary = {{"subcommand", "chain"},
                  {"acceptance_rate", trace.acceptance_rate},
                  {"esjd", trace.esjd},
                  {"total_steps", trace.total_steps},
                  {"wall_seconds", trace.wall_seconds}};
  c.output().write(t, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MHRW optimal-scaling experiments"};
  app.require_subcommand(1);
  // --h is a real option (the cylinder function), so help is --help only.
  app.set_help_flag("--help", "print help");

  Common c;
  const auto sub = [&app](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->set_help_flag("--help", "print help");
    return s;
  };

  // clt
  auto* clt = sub("clt", "acceptance-ratio CLT diagnostics");
  std::string clt_n = "100";
  double clt_tau = 1.0;
  std::uint64_t clt_reps = 10000;
  c.add_to(clt);
  clt->add_option("--n", clt_n, "comma-separated n ladder");
  clt->add_option("--tau", clt_tau, "proposal scale");
  clt->add_option("--reps", clt_reps, "Monte Carlo replicas");

  // forms
  auto* forms = sub("forms", "Dirichlet form estimators");
  std::string forms_h = "bump(1)";
  std::string forms_n = "10,100,1000";
  std::string forms_mode = "m2";
  double forms_tau = 1.0, forms_eps = 0.1;
  std::uint64_t forms_reps = 100000;
  c.add_to(forms);
  forms->add_option("--h", forms_h, "cylinder function: coord1|bump(r)|sin_bump(r)");
  forms->add_option("--n-ladder", forms_n, "comma-separated n ladder");
  forms->add_option("--tau", forms_tau, "proposal scale");
  forms->add_option("--reps", forms_reps, "Monte Carlo replicas");
  forms->add_option("--mode", forms_mode, "m2 | domination | chi2");
  forms->add_option("--eps", forms_eps, "epsilon of the chi^2 split");

  // speed
  auto* speed_cmd = sub("speed", "optimal scaling curve");
  double speed_I = 0.0;
  int speed_n = 1000;
  std::string speed_grid;
  std::uint64_t speed_reps = 100000;
  c.add_to(speed_cmd);
  speed_cmd->add_option("--I", speed_I, "Fisher information (alternative to --target)");
  speed_cmd->add_option("--n", speed_n, "dimension for the empirical curve");
  speed_cmd->add_option("--tau-grid", speed_grid, "comma-separated tau grid");
  speed_cmd->add_option("--reps", speed_reps, "Monte Carlo replicas");

  // fisher
  auto* fisher = sub("fisher", "Fisher information and regularity");
  c.add_to(fisher);

  // diffusion
  auto* diff = sub("diffusion", "limiting diffusion diagnostics");
  std::string diff_mode = "sde", diff_tgrid = "0.25,0.5,1", diff_lags = "0,0.5,1",
              diff_h = "bump(1)";
  int diff_n = 100;
  double diff_tau = 2.38, diff_dt = 1e-3, diff_horizon = 10.0;
  std::uint64_t diff_outer = 64, diff_inner = 64, diff_reps = 16;
  c.add_to(diff);
  diff->add_option("--mode", diff_mode, "sde | semigroup | acf");
  diff->add_option("--n", diff_n, "chain dimension");
  diff->add_option("--tau", diff_tau, "proposal scale");
  diff->add_option("--dt", diff_dt, "Euler step");
  diff->add_option("--horizon", diff_horizon, "time horizon");
  diff->add_option("--t-grid", diff_tgrid, "semigroup time grid");
  diff->add_option("--outer", diff_outer, "outer starts");
  diff->add_option("--inner", diff_inner, "inner continuations");
  diff->add_option("--lags", diff_lags, "acf lag grid");
  diff->add_option("--reps", diff_reps, "acf paths");
  diff->add_option("--h", diff_h, "observable for semigroup mode");

  // capacity
  auto* cap = sub("capacity", "capacity-nest bounds");
  std::string cap_n = "1,10,100";
  int cap_L = 10000;
  double cap_tau = 1.0;
  std::uint64_t cap_reps = 20000;
  c.add_to(cap);
  cap->add_option("--n-ladder", cap_n, "comma-separated n ladder");
  cap->add_option("--L", cap_L, "coordinate truncation");
  cap->add_option("--tau", cap_tau, "proposal scale");
  cap->add_option("--reps", cap_reps, "Monte Carlo replicas");

  // chain
  auto* chain = sub("chain", "run one chain and export the trace");
  int chain_n = 100;
  double chain_tau = 2.38;
  std::uint64_t chain_steps = 10000, chain_thin = 1;
  std::string chain_obs = "coord1";
  std::int64_t chain_burn = 0;
  c.add_to(chain);
  chain->add_option("--n", chain_n, "dimension");
  chain->add_option("--tau", chain_tau, "proposal scale");
  chain->add_option("--steps", chain_steps, "number of proposals");
  chain->add_option("--thin", chain_thin, "record every thin-th proposal");
  chain->add_option("--observables", chain_obs, "semicolon-separated observables");
  chain->add_option("--burn-in", chain_burn, "burn-in (spline targets only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (clt->parsed()) {
      auto m = c.merge(clt);
      m.apply("n", clt_n);
      m.apply("tau", clt_tau);
      m.apply("reps", clt_reps);
      return run_clt(c, clt_n, clt_tau, clt_reps);
    }
    if (forms->parsed()) {
      auto m = c.merge(forms);
      m.apply("h", forms_h);
      m.apply("n-ladder", forms_n);
      m.apply("tau", forms_tau);
      m.apply("reps", forms_reps);
      m.apply("mode", forms_mode);
      m.apply("eps", forms_eps);
      return run_forms(c, forms_h, forms_n, forms_tau, forms_reps, forms_mode,
                       forms_eps);
    }
    if (speed_cmd->parsed()) {
      auto m = c.merge(speed_cmd);
      m.apply("I", speed_I);
      m.apply("n", speed_n);
      m.apply("tau-grid", speed_grid);
      m.apply("reps", speed_reps);
      return run_speed(c, speed_I, speed_n, speed_grid, speed_reps);
    }
    if (fisher->parsed()) {
      c.merge(fisher);
      return run_fisher(c);
    }
    if (diff->parsed()) {
      auto m = c.merge(diff);
      m.apply("mode", diff_mode);
      m.apply("n", diff_n);
      m.apply("tau", diff_tau);
      m.apply("dt", diff_dt);
      m.apply("horizon", diff_horizon);
      m.apply("t-grid", diff_tgrid);
      m.apply("outer", diff_outer);
      m.apply("inner", diff_inner);
      m.apply("lags", diff_lags);
      m.apply("reps", diff_reps);
      m.apply("h", diff_h);
      return run_diffusion(c, diff_mode, diff_n, diff_tau, diff_dt, diff_horizon,
                           diff_tgrid, diff_outer, diff_inner, diff_lags,
                           diff_reps, diff_h);
    }
    if (cap->parsed()) {
      auto m = c.merge(cap);
      m.apply("n-ladder", cap_n);
      m.apply("L", cap_L);
      m.apply("tau", cap_tau);
      m.apply("reps", cap_reps);
      return run_capacity(c, cap_n, cap_L, cap_tau, cap_reps);
    }
    if (chain->parsed()) {
      auto m = c.merge(chain);
      m.apply("n", chain_n);
      m.apply("tau", chain_tau);
      m.apply("steps", chain_steps);
      m.apply("thin", chain_thin);
      m.apply("observables", chain_obs);
      m.apply("burn-in", chain_burn);
      return run_chain_cmd(c, chain_n, chain_tau, chain_steps, chain_thin,
                           chain_obs, chain_burn);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
