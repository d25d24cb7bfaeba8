#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kobest/domain.hpp"
#include "kobest/paths.hpp"
#include "kobest/thinness.hpp"

namespace kobest::experiments {

using ordered_json = nlohmann::ordered_json;

struct Row {
  std::string experiment;
  double T = 0;
  double T0 = 0;
  std::string side;
  double lower_bound = 0;
  double margin = 0;
  double certified_M = 0;
  std::string verdict;
};

struct VerdictEntry {
  double M = 0;
  bool reached = false;
  double T0 = 0;
  double T = 0;
};

struct WitnessRun {
  std::string experiment;
  ordered_json params;
  std::vector<Row> rows;
  std::vector<VerdictEntry> verdicts;
  ordered_json details;  // QG constants, cross-checks, model constants

  std::string csv() const;
  ordered_json summary() const;
};

// ---- ball witness: ball minus the hyperplane {z_n = 0} --------------------

struct BallWitnessConfig {
  int n = 2;
  double s = 0.5;                       // p = s e_n, 0 < s < 1
  std::vector<double> T_grid;           // default 0..8 step 0.5
  std::vector<double> M_targets{1, 2};
  double zeta_sign = 1.0;               // witness boundary point zeta = sign * e_1
  std::vector<Hyperplane> extra_hyperplanes;  // multi-hyperplane variant
  double neighborhood_r = 0.5;          // validated miss-region for extras
  int qg_grid = 40;
  int side_samples = 129;
  double literal_T_max = 1.5;           // cross-check with explicit curves up to here
  unsigned seed = 12345;
};

WitnessRun run_ball_minus_hyperplane(const BallWitnessConfig& cfg);
WitnessRun run_multi_hyperplanes(const BallWitnessConfig& cfg);

// ---- Hartogs witness: Hartogs domain over the ball/disc -------------------

struct HartogsConfig {
  int n = 1;           // base dimension (1 or 2)
  PhiSpec phi;         // default cone: phi = max(0, 1 - 2||z||)
  double p_fiber_frac = 0.5;  // p_{n+1} = frac * e^{-sup phi}
  std::vector<double> T_grid;
  std::vector<double> M_targets{1};
  int sandwich_pairs = 1000;
  int qg_grid = 40;
  double literal_T_max = 1.5;
  unsigned seed = 12345;
};

WitnessRun run_hartogs(const HartogsConfig& cfg);

// ---- localized removal: ball minus a localized piece of a line ------------

struct StrictConvexConfig {
  double R_window = 0.3;
  double r_small = 0.05;
  double s_inner = 0.0;   // collar constant's ball radius; default r_small / 5
  double s_outer = 0.0;   // localization radius; default r_small / 2.5
  std::vector<double> u_grid;          // default 1..6 step 1
  std::vector<double> v_grid{2, 3};
  std::vector<double> M_targets{1};
  int qg_grid = 32;
  int side_samples = 129;
  unsigned seed = 12345;
};

WitnessRun run_strict_convex_localized(const StrictConvexConfig& cfg);

// ---- Prop 5.1: polydisc minus a strict subset of a hyperplane slice -------

struct NotFinitelyCompactConfig {
  double r = 0.4;       // needs 2r < 1
  int samples = 1000;
  double rho0 = 0.05;   // removed set is S cap Omega minus the ball B(0, rho0)
  unsigned seed = 12345;
};

WitnessRun run_not_finitely_compact(const NotFinitelyCompactConfig& cfg);

// ---- positive controls -----------------------------------------------------

struct PositiveControlConfig {
  int samples = 10000;
  unsigned seed = 12345;
};

WitnessRun run_positive_control_disc(const PositiveControlConfig& cfg);

// grid helper: "a:b:step" semantics
std::vector<double> arange(double a, double b, double step);

}  // namespace kobest::experiments
