// Acceptance suite: one pass/fail line per criterion, tolerances pinned in
// code. Criterion 9's second clause (the punctured-disc opposite-ray
// four-point statistic exceeding 10x the disc maximum) is asserted exactly as
// stated and is expected to fail: the punctured disc carries a complete
// metric of constant curvature -4, is Gromov hyperbolic, and its four-point
// defect is uniformly bounded (the straddling quadruples collapse as the
// cross-ray distance arctanh(pi / sqrt(pi^2 + 4 e^{4u})) tends to 0). It is
// reported here and registered in CTest as an expected failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "kobest/distance.hpp"
#include "kobest/estimates.hpp"
#include "kobest/experiments.hpp"
#include "kobest/mesh.hpp"
#include "kobest/model_metrics.hpp"
#include "kobest/paths.hpp"
#include "kobest/thinness.hpp"
#include "test_util.hpp"

using namespace kobest;
using namespace kobest::experiments;
namespace kt = kobest::testing;

namespace {

struct Outcome {
  int id;
  bool pass;
  double seconds;
  std::string note;
};

template <typename F>
Outcome run_criterion(int id, F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out{id, false, 0.0, ""};
  try {
    out.note = fn();
    out.pass = true;
  } catch (const std::exception& e) {
    out.note = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void fail(const std::string& msg) { throw std::runtime_error(msg); }

// ---- criterion 1: radial geodesic --------------------------------------

std::string criterion1() {
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 30; ++j) {
      double s = 3.0 * i / 29, t = 3.0 * j / 29;
      double d = distance_punctured_disc_logmod(-std::exp(2 * s), -std::exp(2 * t), 0.0);
      worst = std::max(worst, std::abs(d - std::abs(s - t)));
    }
  }
  // values come straight from the evaluator on the curve's moduli
  double spot = distance_punctured_disc(Cx(std::exp(-std::exp(0.0)), 0),
                                        Cx(std::exp(-std::exp(2.0)), 0), 1.0);
  worst = std::max(worst, std::abs(spot - 1.0));
  if (!(worst < 1e-9)) fail("max geodesic deviation " + std::to_string(worst));
  return "max |k - |s-t|| = " + std::to_string(worst);
}

// ---- criterion 2: Lemma 3.1 ---------------------------------------------

std::string criterion2() {
  auto g = kt::rng(20240608);
  for (int k = 0; k < 10000; ++k) {
    Cx z = kt::sample_punctured(g);
    Cx w = kt::sample_punctured(g);
    double exact = distance_punctured_disc(z, w, 1.0);
    double bound = lower_bound_punctured_log(z, w);
    if (!(exact >= bound - 1e-12))
      fail("bound above exact at sample " + std::to_string(k));
  }
  for (int k = 0; k < 1000; ++k) {
    Cx z = kt::sample_punctured(g, 1e-4, 0.99);
    Cx w = (0.01 + 0.98 * kt::unit(g)) * z;
    double exact = distance_punctured_disc(z, w, 1.0);
    double bound = lower_bound_punctured_log(z, w);
    if (!(std::abs(exact - bound) < 1e-9)) fail("equality case violated");
  }
  for (int k = 0; k < 1000; ++k) {
    Cx z = kt::sample_punctured(g, 1e-4, 0.99);
    double phi = 0.05 + 3.0 * kt::unit(g);
    Cx w = z * std::polar(1.0, phi);
    if (!(distance_punctured_disc(z, w, 1.0) - lower_bound_punctured_log(z, w) > 0.0))
      fail("strictness violated off the positive ray");
  }
  return "10^4 bound + 10^3 equality + 10^3 strict checks";
}

// ---- criterion 3: metric sandwich ---------------------------------------

std::string criterion3() {
  auto disc = make_disc(1.0);
  for (int i = 0; i <= 9; ++i) {
    double t = 0.1 * i;
    CVec z = {Cx(t, 0)}, v = {Cx(1, 0)};
    double lo = metric_lower_bound_cconvex(*disc, z, v);
    double mid = metric_disc(z[0], v[0], 1.0);
    double hi = metric_upper_bound(*disc, z, v);
    if (!(lo <= mid + 1e-12 && mid <= hi + 1e-12)) fail("disc sandwich at t=" + std::to_string(t));
    if (std::abs(lo - 1.0 / (4 * (1 - t))) > 1e-12) fail("lower bound formula");
    if (std::abs(hi - 1.0 / (1 - t)) > 1e-12) fail("upper bound formula");
    if (std::abs(mid - 1.0 / (1 - t * t)) > 1e-12) fail("exact metric formula");
  }
  // ball slices: metric bounds versus mesh-derived distance differentials
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  MeshOptions coarse;
  coarse.points_per_unit = 24;
  coarse.max_refines = 0;
  DistanceStrategy strat;
  double h = 1e-3;
  for (double t : {0.0, 0.3, 0.6}) {
    for (int dir = 0; dir < 2; ++dir) {
      CVec z = {Cx(t, 0), Cx(0.1, 0)};
      CVec v = unit_vector(2, dir);
      CVec z2 = axpy(z, Cx(h, 0), v);
      double lo_metric = metric_lower_bound_cconvex(*ball, z, v);
      double hi_metric = metric_upper_bound(*ball, z, v);
      double mesh_diff = distance_upper_mesh(*ball, z, z2, coarse);
      BoundValue bv = kobayashi_distance(*ball, z, z2, strat);
      if (!(lo_metric * h <= mesh_diff * (1 + 5e-2) + 1e-9))
        fail("ball slice: metric lower bound above the mesh differential");
      if (!(bv.lower <= hi_metric * h * (1 + 5e-2) + 1e-9))
        fail("ball slice: distance lower above the metric upper differential");
    }
  }
  return "disc grid exact; ball-slice differentials consistent";
}

// ---- criterion 4: dispatcher consistency + mesh quality -------------------

std::string criterion4() {
  DistanceStrategy strat;
  auto g = kt::rng(424242);
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  auto disc = make_disc(1.0);
  auto pd = make_punctured_disc(1.0);
  auto poly = make_polydisc({1.0, 1.0});

  auto sample = [&](const Domain& d) {
    for (;;) {
      CVec z;
      if (d.kind_name() == "disc") {
        z = {kt::sample_disc(g)};
      } else if (d.kind_name() == "punctured-disc") {
        z = {kt::sample_punctured(g)};
      } else if (d.kind_name() == "polydisc") {
        z = {kt::sample_disc(g), kt::sample_disc(g)};
      } else {
        z = kt::sample_ball(g, 2);
      }
      if (d.contains(z)) return z;
    }
  };

  for (const DomainPtr& d : {disc, pd, poly, ball, bm}) {
    for (int k = 0; k < 10000; ++k) {
      CVec a = sample(*d), b = sample(*d);
      BoundValue bv = kobayashi_distance(*d, a, b, strat);
      if (!(bv.lower <= bv.upper + 1e-9))
        fail("lower above upper in " + d->kind_name() + " at sample " + std::to_string(k));
    }
  }

  // mesh within 10% of the exact value at the default resolution
  MeshOptions opts;  // defaults: 64 per unit, refine x2 until < 1%
  double worst_ratio = 1.0;
  for (int k = 0; k < 100; ++k) {
    CVec a = {kt::sample_disc(g, 0.9)}, b = {kt::sample_disc(g, 0.9)};
    double exact = distance_disc(a[0], b[0], 1.0);
    if (exact < 1e-3) continue;
    double mesh = distance_upper_mesh(*disc, a, b, opts);
    if (!(mesh >= exact - 1e-9)) fail("disc mesh below the exact distance");
    worst_ratio = std::max(worst_ratio, mesh / exact);
  }
  for (int k = 0; k < 50; ++k) {
    CVec a = {kt::sample_disc(g, 0.9), kt::sample_disc(g, 0.9)};
    CVec b = {kt::sample_disc(g, 0.9), kt::sample_disc(g, 0.9)};
    double exact = *poly->exact_distance(a, b);
    if (exact < 1e-3) continue;
    double mesh = distance_upper_mesh(*poly, a, b, opts);
    if (!(mesh >= exact - 1e-9)) fail("polydisc mesh below the exact distance");
    worst_ratio = std::max(worst_ratio, mesh / exact);
  }
  if (!(worst_ratio <= 1.10))
    fail("mesh/exact ratio " + std::to_string(worst_ratio) + " above 1.10");
  return "5 x 10^4 pairs consistent; worst mesh/exact = " + std::to_string(worst_ratio);
}

// ---- criterion 5: ball witness growth --------------------------------------

std::string criterion5() {
  BallWitnessConfig cfg;
  cfg.n = 2;
  cfg.s = 0.5;
  cfg.T_grid = arange(0.0, 8.0, 0.5);
  cfg.M_targets = {1.0, 2.0};
  WitnessRun run = run_ball_minus_hyperplane(cfg);  // throws if any side fails QG

  int qg_checked = 0;
  for (const auto& e : run.details["qg_sides"]) {
    if (!e["pass"].get<bool>()) fail("quasi-geodesic side not certified");
    ++qg_checked;
  }
  double prev = -kInf;
  int rows = 0;
  for (const Row& r : run.rows) {
    if (r.side != "vs-[pT,etaT]") continue;
    if (!(r.certified_M >= prev - 1e-12)) fail("certified level decreased in T");
    if (r.margin > 0.1 * std::max(r.certified_M, 1e-30) && r.certified_M > 0)
      fail("margin above 10% of the certified level");
    prev = r.certified_M;
    ++rows;
  }
  if (rows < 10) fail("too few table rows");
  for (const VerdictEntry& v : run.verdicts)
    if (!v.reached) fail("verdict M=" + std::to_string(v.M) + " not reached");
  return std::to_string(qg_checked) + " QG sides pass; growth monotone; M=1,2 reached";
}

// ---- criterion 6: Prop 5.1 bounds -----------------------------------------

std::string criterion6() {
  NotFinitelyCompactConfig cfg;
  cfg.r = 0.4;
  cfg.samples = 1000;
  WitnessRun run = run_not_finitely_compact(cfg);  // throws beyond 2log3/3log3 + 0.02
  double log3 = std::log(3.0);
  double wn = run.details["worst_bound_z1_nonzero"].get<double>();
  double wz = run.details["worst_bound_z1_zero"].get<double>();
  if (!(wn <= 2 * log3 + 0.02)) fail("z1 != 0 route bound too large");
  if (!(wz <= 3 * log3 + 0.02)) fail("z1 == 0 route bound too large");
  if (!(run.details["contrast_final_bound"].get<double>() > 5.0))
    fail("contrast divergence did not exceed 5");
  return "worst bounds " + std::to_string(wn) + " / " + std::to_string(wz) +
         "; contrast " + std::to_string(run.details["contrast_final_bound"].get<double>());
}

// ---- criterion 7: Hartogs sandwich and growth ------------------------------

std::string criterion7() {
  HartogsConfig cfg;  // default cone phi over the disc
  cfg.T_grid = arange(0.0, 8.0, 0.5);
  cfg.M_targets = {1.0};
  cfg.sandwich_pairs = 1000;
  WitnessRun run = run_hartogs(cfg);  // throws on sandwich violation or QG failure
  if (!(run.details["sandwich_worst_gap"].get<double>() >= -1e-9)) fail("sandwich violated");
  double prev = -kInf;
  for (const Row& r : run.rows) {
    if (r.side != "vs-[pT,etaT]") continue;
    if (!(r.certified_M >= prev - 1e-12)) fail("certified level decreased in T");
    prev = r.certified_M;
  }
  for (const VerdictEntry& v : run.verdicts)
    if (!v.reached) fail("verdict M=" + std::to_string(v.M) + " not reached");
  return "sandwich holds on 10^3 pairs; growth monotone; M=1 reached";
}

// ---- criterion 8: localized removal model ----------------------------------

std::string criterion8() {
  StrictConvexConfig cfg;
  cfg.R_window = 0.3;
  cfg.r_small = 0.05;
  cfg.u_grid = arange(1.0, 6.0, 1.0);
  cfg.v_grid = {2.0, 3.0};
  WitnessRun run = run_strict_convex_localized(cfg);

  double s = cfg.r_small / 5.0;
  double eps_expected = s * s / 2.0;  // collar constant for the sphere
  double eps = run.details["epsilon_analytic"].get<double>();
  if (!(std::abs(eps - eps_expected) < 1e-9)) fail("epsilon mismatch");
  if (!run.details["gamma_qg"]["pass"].get<bool>()) fail("concatenated gamma failed QG");

  for (double v : cfg.v_grid) {
    double prev = -kInf, prev_margin = 0.0;
    int rows = 0;
    for (const Row& r : run.rows) {
      if (r.side != "vs-(pu,zu)" || r.T0 != v) continue;
      // margin-robust monotonicity: sampling margins are part of the report
      if (!(r.certified_M + r.margin >= prev - prev_margin - 1e-12))
        fail("certified level decreased in u at v=" + std::to_string(v));
      prev = r.certified_M;
      prev_margin = r.margin;
      ++rows;
    }
    if (rows < 3) fail("too few rows at v=" + std::to_string(v));
  }
  return "epsilon = " + std::to_string(eps) + "; gamma QG pass; monotone in u for v in {2,3}";
}

// ---- criterion 9: positive control ------------------------------------------

std::string criterion9_stability(PositiveControlConfig cfg, double* disc_max,
                                 double* ray_max) {
  WitnessRun run = run_positive_control_disc(cfg);
  double m1 = run.details["disc_fourpoint_max"].get<double>();
  double m2 = run.details["disc_fourpoint_max_doubled"].get<double>();
  *disc_max = m1;
  *ray_max = run.details["punctured_ray_fourpoint_max_at_u5"].get<double>();
  if (!(m2 <= 1.2 * m1)) fail("disc statistic unstable under doubled sampling");
  return "disc max " + std::to_string(m1) + " stable (doubled: " + std::to_string(m2) + ")";
}

}  // namespace

int main(int argc, char** argv) {
  bool only9 = argc > 1 && std::strcmp(argv[1], "--criterion9") == 0;

  if (only9) {
    // Expected-unattainable clause, registered as WILL_FAIL in ctest: the
    // opposite-ray family must exceed 10x the disc maximum by u = 5.
    double disc_max = 0, ray_max = 0;
    PositiveControlConfig cfg;
    cfg.samples = 10000;
    Outcome st = run_criterion(9, [&] { return criterion9_stability(cfg, &disc_max, &ray_max); });
    bool exceeds = ray_max > 10.0 * disc_max;
    std::printf("%s criterion 9b (punctured-ray family > 10x disc max): ray %.6g vs disc %.6g "
                "(%.1fs)\n",
                exceeds ? "PASS" : "FAIL", ray_max, disc_max, st.seconds);
    std::printf("note: the punctured disc is Gromov hyperbolic (complete curvature -4 cusp); "
                "this clause cannot hold. See the decisions ledger.\n");
    return (st.pass && exceeds) ? 0 : 1;
  }

  std::vector<Outcome> outcomes;
  outcomes.push_back(run_criterion(1, criterion1));
  outcomes.push_back(run_criterion(2, criterion2));
  outcomes.push_back(run_criterion(3, criterion3));
  outcomes.push_back(run_criterion(4, criterion4));
  outcomes.push_back(run_criterion(5, criterion5));
  outcomes.push_back(run_criterion(6, criterion6));
  outcomes.push_back(run_criterion(7, criterion7));
  outcomes.push_back(run_criterion(8, criterion8));

  double disc_max = 0, ray_max = 0;
  PositiveControlConfig cfg;
  cfg.samples = 10000;
  Outcome c9 = run_criterion(9, [&] { return criterion9_stability(cfg, &disc_max, &ray_max); });
  outcomes.push_back(c9);

  int failures = 0;
  for (const Outcome& o : outcomes) {
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", o.id,
                o.note.c_str(), o.seconds);
  }
  bool exceeds = ray_max > 10.0 * disc_max;
  std::printf("%s criterion 9b (punctured-ray family > 10x disc max): ray %.6g vs disc %.6g\n",
              exceeds ? "PASS" : "FAIL", ray_max, disc_max);
  if (!exceeds)
    std::printf("note: criterion 9b is mathematically unattainable (the punctured disc is "
                "Gromov hyperbolic); tracked as an expected failure. See the decisions "
                "ledger.\n");
  return failures;
}
