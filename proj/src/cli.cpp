#include "kobest/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kobest/config.hpp"
#include "kobest/distance.hpp"
#include "kobest/estimates.hpp"
#include "kobest/experiments.hpp"
#include "kobest/model_metrics.hpp"
#include "kobest/paths.hpp"
#include "kobest/thinness.hpp"

namespace kobest::cli {

namespace {

namespace fs = std::filesystem;
using experiments::WitnessRun;

struct CertifiedFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "re[,im]" components separated by ';'
CVec parse_point_arg(const std::string& s) {
  CVec v;
  std::stringstream comps(s);
  std::string comp;
  while (std::getline(comps, comp, ';')) {
    double re = 0, im = 0;
    char extra = 0;
    if (std::sscanf(comp.c_str(), "%lf,%lf %c", &re, &im, &extra) == 2 ||
        std::sscanf(comp.c_str(), "%lf %c", &re, &extra) == 1) {
      v.emplace_back(re, im);
    } else {
      throw ConfigError("cannot parse point component '" + comp + "'");
    }
  }
  if (v.empty()) throw ConfigError("empty point argument");
  return v;
}

std::vector<double> parse_grid_arg(const std::string& s) {
  double a = 0, b = 0, step = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3)
    return experiments::arange(a, b, step);
  // comma-separated list
  std::vector<double> g;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) g.push_back(std::stod(tok));
  if (g.empty()) throw ConfigError("empty grid argument '" + s + "'");
  return g;
}

DomainPtr resolve_domain(const std::string& spec) {
  if (spec == "disc") return make_disc(1.0);
  if (spec == "punctured-disc") return make_punctured_disc(1.0);
  if (spec == "halfplane") return make_halfplane();
  if (spec == "ball2") return make_ball(CVec(2, Cx(0, 0)), 1.0);
  if (spec == "polydisc2") return make_polydisc({1.0, 1.0});
  if (spec == "ball2-minus-zn") {
    CVec en = unit_vector(2, 1);
    return make_minus_hyperplanes(make_ball(CVec(2, Cx(0, 0)), 1.0),
                                  {Hyperplane(en, Cx(0, 0))});
  }
  json j;
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) {
    j = json::parse(spec);
  } else {
    std::ifstream in(spec);
    if (!in) throw ConfigError("domain spec '" + spec + "' is neither a builtin name, inline "
                               "JSON, nor a readable file");
    in >> j;
  }
  return domain_from_json(j);
}

nlohmann::ordered_json bound_json(const BoundValue& bv) {
  nlohmann::ordered_json j;
  j["lower"] = bv.lower;
  j["upper"] = bv.upper_finite() ? json(bv.upper) : json("inf");
  j["lower_source"] = bv.lower_source;
  j["upper_source"] = bv.upper_source;
  return j;
}

void write_run_outputs(const WitnessRun& run, const std::string& out_dir) {
  if (out_dir.empty()) {
    std::cout << run.summary().dump(2) << "\n";
    return;
  }
  fs::create_directories(out_dir);
  std::string hash = config_hash(run.params);
  fs::path base = fs::path(out_dir) / (run.experiment + "-" + hash);
  atomic_write_file(base.string() + ".csv", run.csv());
  atomic_write_file(base.string() + ".json", run.summary().dump(2) + "\n");
  std::cout << "wrote " << base.string() << ".csv and .json\n";
}

void check_verdicts(const WitnessRun& run) {
  for (const auto& v : run.verdicts)
    if (!v.reached)
      throw CertifiedFailure(run.experiment + ": M=" + std::to_string(v.M) +
                             " verdict not reached");
}

int dispatch(CLI::App& app) {
  // ---- metric ----
  auto* metric = app.get_subcommand("metric");
  if (metric->parsed()) {
    DomainPtr d = resolve_domain(metric->get_option("--domain")->as<std::string>());
    CVec z = parse_point_arg(metric->get_option("--z")->as<std::string>());
    CVec v = parse_point_arg(metric->get_option("--v")->as<std::string>());
    BoundValue bv;
    if (auto m = d->exact_metric(z, v)) {
      bv = BoundValue::exact(*m);
    } else {
      double lo = d->is_c_convex() ? metric_lower_bound_cconvex(*d, z, v) : 0.0;
      bv = BoundValue(lo, metric_upper_bound(*d, z, v),
                      d->is_c_convex() ? "Prop4.2" : "trivial-zero", "Lemma4.1");
    }
    std::cout << bound_json(bv).dump() << "\n";
    return 0;
  }

  // ---- distance ----
  auto* distance = app.get_subcommand("distance");
  if (distance->parsed()) {
    DomainPtr d = resolve_domain(distance->get_option("--domain")->as<std::string>());
    CVec p = parse_point_arg(distance->get_option("--p")->as<std::string>());
    CVec q = parse_point_arg(distance->get_option("--q")->as<std::string>());
    DistanceStrategy strat;
    strat.use_mesh = distance->get_option("--mesh")->count() > 0;
    std::string zeta = distance->get_option("--zeta")->as<std::string>();
    if (!zeta.empty()) strat.lemma33_zeta = parse_point_arg(zeta);
    BoundValue bv = kobayashi_distance(*d, p, q, strat);
    std::cout << bound_json(bv).dump() << "\n";
    return 0;
  }

  // ---- qg-verify ----
  auto* qg = app.get_subcommand("qg-verify");
  if (qg->parsed()) {
    DomainPtr d = resolve_domain(qg->get_option("--domain")->as<std::string>());
    std::string kind = qg->get_option("--curve")->as<std::string>();
    double umax = qg->get_option("--umax")->as<double>();
    Curve curve;
    if (kind == "radial-geodesic") {
      curve = radial_geodesic_punctured(umax);
    } else if (kind == "tent") {
      curve = tent_curve(parse_point_arg(qg->get_option("--zeta")->as<std::string>()),
                         parse_point_arg(qg->get_option("--p")->as<std::string>()), umax,
                         d.get());
    } else if (kind == "log-radial") {
      curve = log_radial_curve(parse_point_arg(qg->get_option("--p")->as<std::string>()), umax,
                               d.get());
    } else {
      throw ConfigError("unknown curve kind '" + kind + "'");
    }
    DistanceStrategy strat;
    auto grid = uniform_grid(curve.a, curve.b, qg->get_option("--grid")->as<int>());
    PairOracle oracle = make_curve_pair_oracle(*d, curve, strat, grid, true);
    nlohmann::ordered_json out;
    QGReport rep;
    if (qg->get_option("--estimate")->count() > 0) {
      QGEstimate est = estimate_qg_constants(grid, oracle);
      rep = est.report;
      out["A"] = est.A;
      out["B"] = est.B;
    } else {
      double A = qg->get_option("--A")->as<double>();
      double B = qg->get_option("--B")->as<double>();
      rep = verify_quasi_geodesic(grid, A, B, oracle);
      out["A"] = A;
      out["B"] = B;
    }
    out["pass"] = rep.pass;
    out["inconclusive_pairs"] = rep.inconclusive_pairs;
    out["worst_upper_margin"] = rep.worst_upper_margin;
    out["worst_lower_margin"] = rep.worst_lower_margin;
    out["upper_witness"] = {rep.upper_witness.first, rep.upper_witness.second};
    out["lower_witness"] = {rep.lower_witness.first, rep.lower_witness.second};
    out["grid"] = rep.grid_description;
    std::cout << out.dump() << "\n";
    if (!rep.pass) throw CertifiedFailure("quasi-geodesic verification failed");
    return 0;
  }

  // ---- delta ----
  auto* delta = app.get_subcommand("delta");
  if (delta->parsed()) {
    experiments::PositiveControlConfig cfg;
    cfg.samples = delta->get_option("--samples")->as<int>();
    cfg.seed = delta->get_option("--seed")->as<unsigned>();
    WitnessRun run = experiments::run_positive_control_disc(cfg);
    write_run_outputs(run, delta->get_option("--out")->as<std::string>());
    return 0;
  }

  // ---- witness: one thinness cell of the ball family ----
  auto* witness = app.get_subcommand("witness");
  if (witness->parsed()) {
    experiments::BallWitnessConfig cfg;
    cfg.n = witness->get_option("--n")->as<int>();
    cfg.s = witness->get_option("--s")->as<double>();
    double T = witness->get_option("--T")->as<double>();
    double T0 = witness->get_option("--T0")->as<double>();
    cfg.T_grid = {T0, T};
    cfg.M_targets = {};
    WitnessRun run = experiments::run_ball_minus_hyperplane(cfg);
    std::cout << run.summary().dump(2) << "\n";
    return 0;
  }

  // ---- experiment ----
  auto* exp = app.get_subcommand("experiment");
  if (exp->parsed()) {
    std::string id = exp->get_option("id")->as<std::string>();
    std::string out_dir = exp->get_option("--out")->as<std::string>();
    std::string T_spec = exp->get_option("--T")->as<std::string>();
    std::string M_spec = exp->get_option("--M")->as<std::string>();
    unsigned seed = exp->get_option("--seed")->as<unsigned>();

    WitnessRun run;
    if (id == "ball-minus-hyperplane" || id == "multi-hyperplanes") {
      experiments::BallWitnessConfig cfg;
      cfg.n = exp->get_option("--n")->as<int>();
      cfg.s = exp->get_option("--s")->as<double>();
      cfg.seed = seed;
      if (!T_spec.empty()) cfg.T_grid = parse_grid_arg(T_spec);
      if (!M_spec.empty()) cfg.M_targets = parse_grid_arg(M_spec);
      if (id == "multi-hyperplanes") {
        cfg.zeta_sign = -1.0;
        std::string extras = exp->get_option("--hyperplanes")->as<std::string>();
        if (!extras.empty()) {
          json je = json::parse(extras);
          for (const auto& e : je) cfg.extra_hyperplanes.push_back(parse_hyperplane(e));
        }
        run = experiments::run_multi_hyperplanes(cfg);
      } else {
        run = experiments::run_ball_minus_hyperplane(cfg);
      }
      check_verdicts(run);
    } else if (id == "hartogs") {
      experiments::HartogsConfig cfg;
      cfg.n = exp->get_option("--n")->as<int>();
      cfg.seed = seed;
      if (!T_spec.empty()) cfg.T_grid = parse_grid_arg(T_spec);
      if (!M_spec.empty()) cfg.M_targets = parse_grid_arg(M_spec);
      std::string phi = exp->get_option("--phi")->as<std::string>();
      if (!phi.empty()) cfg.phi = parse_phi(json::parse(phi));
      run = experiments::run_hartogs(cfg);
      check_verdicts(run);
    } else if (id == "strict-convex-localized") {
      experiments::StrictConvexConfig cfg;
      cfg.R_window = exp->get_option("--R-window")->as<double>();
      cfg.r_small = exp->get_option("--r-small")->as<double>();
      cfg.seed = seed;
      run = experiments::run_strict_convex_localized(cfg);
    } else if (id == "not-finitely-compact") {
      experiments::NotFinitelyCompactConfig cfg;
      cfg.r = exp->get_option("--r")->as<double>();
      cfg.samples = exp->get_option("--samples")->as<int>();
      cfg.seed = seed;
      run = experiments::run_not_finitely_compact(cfg);
    } else if (id == "positive-control-disc") {
      experiments::PositiveControlConfig cfg;
      cfg.samples = exp->get_option("--samples")->as<int>();
      cfg.seed = seed;
      run = experiments::run_positive_control_disc(cfg);
    } else {
      throw ConfigError("unknown experiment '" + id + "'");
    }
    write_run_outputs(run, out_dir);
    return 0;
  }

  std::cout << app.help() << "\n";
  return 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Kobayashi-distance estimates and non-hyperbolicity witnesses"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "read arguments from a JSON config file");

  auto* metric = app.add_subcommand("metric", "certified metric bounds at a point");
  metric->add_option("--domain", "domain name, inline JSON or file")->required();
  metric->add_option("--z", "point")->required();
  metric->add_option("--v", "direction")->required();

  auto* distance = app.add_subcommand("distance", "certified distance bounds");
  distance->add_option("--domain", "domain name, inline JSON or file")->required();
  distance->add_option("--p", "first point")->required();
  distance->add_option("--q", "second point")->required();
  distance->add_option("--zeta", "boundary point for the projection bound")->default_str("");
  distance->add_flag("--mesh", "enable the lattice mesh upper bound");

  auto* qg = app.add_subcommand("qg-verify", "quasi-geodesic verification");
  qg->add_option("--domain")->required();
  qg->add_option("--curve", "tent | log-radial | radial-geodesic")->required();
  qg->add_option("--p")->default_str("");
  qg->add_option("--zeta")->default_str("");
  qg->add_option("--umax")->default_str("3");
  qg->add_option("--grid")->default_str("40");
  qg->add_option("--A")->default_str("1");
  qg->add_option("--B")->default_str("0");
  qg->add_flag("--estimate", "scan for feasible (A, B) first");

  auto* delta = app.add_subcommand("delta", "four-point statistics (positive control)");
  delta->add_option("--samples")->default_str("10000");
  delta->add_option("--seed")->default_str("12345");
  delta->add_option("--out")->default_str("");

  auto* witness = app.add_subcommand("witness", "single thinness cell of the ball witness");
  witness->add_option("--n")->default_str("2");
  witness->add_option("--s")->default_str("0.5");
  witness->add_option("--T")->default_str("4");
  witness->add_option("--T0")->default_str("1");

  auto* exp = app.add_subcommand("experiment", "full experiment drivers");
  exp->add_option("id", "ball-minus-hyperplane | multi-hyperplanes | hartogs | "
                        "strict-convex-localized | not-finitely-compact | positive-control-disc")
      ->required();
  exp->add_option("--n")->default_str("2");
  exp->add_option("--s")->default_str("0.5");
  exp->add_option("--T", "grid a:b:step or comma list")->default_str("");
  exp->add_option("--M", "comma list of thinness targets")->default_str("");
  exp->add_option("--r")->default_str("0.4");
  exp->add_option("--R-window")->default_str("0.3");
  exp->add_option("--r-small")->default_str("0.05");
  exp->add_option("--samples")->default_str("1000");
  exp->add_option("--seed")->default_str("12345");
  exp->add_option("--phi", "inline JSON phi spec")->default_str("");
  exp->add_option("--hyperplanes", "inline JSON list of extra hyperplanes")->default_str("");
  exp->add_option("--out", "output directory for CSV + JSON")->default_str("");
  exp->add_flag("--plot-data", "emit per-sample rows (already the default table)");

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  try {
    // --config: read argv-style arguments from a JSON document
    if (args.size() >= 2 && args[0] == "--config") {
      std::ifstream in(args[1]);
      if (!in) throw ConfigError("cannot read config file " + args[1]);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
      }
      reject_unknown_keys(j, {"args"}, "config");
      args.clear();
      for (const auto& a : j.at("args")) args.push_back(a.get<std::string>());
    }
    std::vector<const char*> cargv;
    cargv.push_back("kobest");
    for (const auto& a : args) cargv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e);  // --help
      std::cerr << "{\"error\":\"config\",\"message\":" << json(e.what()).dump() << "}\n";
      return 2;
    }
    return dispatch(app);
  } catch (const ConfigError& e) {
    std::cerr << "{\"error\":\"config\",\"message\":" << json(e.what()).dump() << "}\n";
    return 2;
  } catch (const CertifiedFailure& e) {
    std::cerr << "{\"error\":\"certified-failure\",\"message\":" << json(e.what()).dump()
              << "}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"runtime\",\"message\":" << json(e.what()).dump() << "}\n";
    return 1;
  }
}

}  // namespace kobest::cli
