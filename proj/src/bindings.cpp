#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kobest/config.hpp"
#include "kobest/distance.hpp"
#include "kobest/estimates.hpp"
#include "kobest/experiments.hpp"
#include "kobest/model_metrics.hpp"
#include "kobest/paths.hpp"
#include "kobest/thinness.hpp"

namespace py = pybind11;
using namespace kobest;

namespace {

py::dict bound_dict(const BoundValue& bv) {
  py::dict d;
  d["lower"] = bv.lower;
  d["upper"] = bv.upper;
  d["lower_source"] = bv.lower_source;
  d["upper_source"] = bv.upper_source;
  return d;
}

// pybind11 holders must be shared_ptr<Domain>; oracles are immutable and all
// exposed methods are const, so shedding the const qualifier is safe.
std::shared_ptr<Domain> pyd(DomainPtr p) { return std::const_pointer_cast<Domain>(p); }

std::shared_ptr<Domain> domain_from_json_str(const std::string& s) {
  return pyd(domain_from_json(json::parse(s)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kobayashi metric estimates, quasi-geodesic verification and "
            "non-hyperbolicity witness experiments";

  // ---- model formulas ----
  m.def("metric_disc", &metric_disc, py::arg("z"), py::arg("v"), py::arg("r") = 1.0);
  m.def("distance_disc", &distance_disc, py::arg("z"), py::arg("w"), py::arg("r") = 1.0);
  m.def("distance_halfplane", &distance_halfplane, py::arg("u"), py::arg("v"));
  m.def("metric_punctured_disc", &metric_punctured_disc, py::arg("z"), py::arg("v"),
        py::arg("r") = 1.0);
  m.def("distance_punctured_disc", &distance_punctured_disc, py::arg("z"), py::arg("w"),
        py::arg("r") = 1.0);
  m.def("lower_bound_punctured_log", &lower_bound_punctured_log, py::arg("z"), py::arg("w"));
  m.def("localization_multiplier", &localization_multiplier, py::arg("k"));

  // ---- domains ----
  py::class_<Domain, std::shared_ptr<Domain>>(m, "Domain")
      .def_property_readonly("dimension", &Domain::dimension)
      .def_property_readonly("kind", &Domain::kind_name)
      .def_property_readonly("bounded", &Domain::bounded)
      .def_property_readonly("c_convex", &Domain::is_c_convex)
      .def_property_readonly("weakly_linearly_convex", &Domain::is_weakly_linearly_convex)
      .def("contains", &Domain::contains, py::arg("z"))
      .def("boundary_dist", &Domain::boundary_dist, py::arg("z"))
      .def("dir_boundary_dist", &Domain::dir_boundary_dist, py::arg("z"), py::arg("v"))
      .def("diameter", &Domain::diameter);

  m.def("disc", [](double r) { return pyd(make_disc(r)); }, py::arg("r") = 1.0);
  m.def("punctured_disc", [](double r) { return pyd(make_punctured_disc(r)); },
        py::arg("r") = 1.0);
  m.def("halfplane", [] { return pyd(make_halfplane()); });
  m.def("ball", [](CVec center, double r) { return pyd(make_ball(std::move(center), r)); },
        py::arg("center"), py::arg("r") = 1.0);
  m.def("polydisc", [](std::vector<double> radii) { return pyd(make_polydisc(std::move(radii))); },
        py::arg("radii"));
  m.def("coordinate_disc_hull",
        [](std::vector<double> radii, int grid, double tol) {
          return pyd(make_coordinate_disc_hull(std::move(radii), grid, tol));
        },
        py::arg("radii"), py::arg("angular_grid") = 256, py::arg("bisect_tol") = 1e-12);
  m.def("product",
        [](const std::vector<std::shared_ptr<Domain>>& factors) {
          std::vector<DomainPtr> fs(factors.begin(), factors.end());
          return pyd(make_product(std::move(fs)));
        },
        py::arg("factors"));
  m.def("minus_hyperplanes",
        [](const std::shared_ptr<Domain>& base, const std::vector<std::pair<CVec, Cx>>& planes) {
          std::vector<Hyperplane> hs;
          for (const auto& [normal, offset] : planes) hs.emplace_back(normal, offset);
          return pyd(make_minus_hyperplanes(base, std::move(hs)));
        },
        py::arg("base"), py::arg("hyperplanes"));
  m.def("domain_from_json", &domain_from_json_str, py::arg("spec"));

  // ---- estimates and the distance dispatcher ----
  m.def("metric_upper_bound", &metric_upper_bound, py::arg("domain"), py::arg("z"),
        py::arg("v"));
  m.def("metric_lower_bound_cconvex", &metric_lower_bound_cconvex, py::arg("domain"),
        py::arg("z"), py::arg("v"));
  m.def("distance_lower_bound_cconvex", &distance_lower_bound_cconvex, py::arg("domain"),
        py::arg("p"), py::arg("q"));
  m.def("distance_lower_bound_wlc", &distance_lower_bound_wlc, py::arg("domain"), py::arg("p"),
        py::arg("q"), py::arg("zeta"));
  m.def("distance_lower_bound_halfspace",
        py::overload_cast<const CVec&, const CVec&, const CVec&, const CVec&>(
            &distance_lower_bound_halfspace),
        py::arg("support_point"), py::arg("inward_normal"), py::arg("p"), py::arg("q"));
  m.def(
      "kobayashi_distance",
      [](const std::shared_ptr<Domain>& d, const CVec& p, const CVec& q, bool use_mesh) {
        DistanceStrategy strat;
        strat.use_mesh = use_mesh;
        return bound_dict(kobayashi_distance(*d, p, q, strat));
      },
      py::arg("domain"), py::arg("p"), py::arg("q"), py::arg("use_mesh") = false);
  m.def(
      "distance_upper_mesh",
      [](const std::shared_ptr<Domain>& d, const CVec& p, const CVec& q) {
        return distance_upper_mesh(*d, p, q, MeshOptions{});
      },
      py::arg("domain"), py::arg("p"), py::arg("q"));

  // ---- curves and quasi-geodesic verification ----
  m.def(
      "radial_geodesic_point",
      [](double u) { return radial_geodesic_punctured(std::max(3.0, u + 1)).point_at(u)[0]; },
      py::arg("u"));
  m.def(
      "tent_point",
      [](const CVec& zeta, const CVec& p, double u) {
        return tent_curve(zeta, p, std::max(kDefaultUMax, u + 1)).point_at(u);
      },
      py::arg("zeta"), py::arg("p"), py::arg("u"));
  m.def(
      "verify_radial_geodesic",
      [](double u_max, int grid_n) {
        Curve c = radial_geodesic_punctured(u_max);
        DomainPtr d = make_punctured_disc(1.0);
        DistanceStrategy strat;
        auto grid = uniform_grid(c.a, c.b, grid_n);
        PairOracle oracle = make_curve_pair_oracle(*d, c, strat, grid, false);
        QGReport rep = verify_quasi_geodesic(grid, 1.0, 0.0, oracle);
        py::dict out;
        out["pass"] = rep.pass;
        out["worst_upper_margin"] = rep.worst_upper_margin;
        out["worst_lower_margin"] = rep.worst_lower_margin;
        return out;
      },
      py::arg("u_max") = 3.0, py::arg("grid_n") = 31);

  m.def(
      "delta_fourpoint_disc",
      [](const std::vector<Cx>& pts) {
        std::vector<CVec> v;
        for (Cx z : pts) v.push_back(CVec{z});
        return delta_fourpoint(
            v, [](const CVec& a, const CVec& b) { return distance_disc(a[0], b[0], 1.0); });
      },
      py::arg("points"));

  // ---- experiments ----
  m.def(
      "run_experiment",
      [](const std::string& id, const std::string& config_json) {
        json cfg = config_json.empty() ? json::object() : json::parse(config_json);
        experiments::WitnessRun run;
        if (id == "ball-minus-hyperplane") {
          experiments::BallWitnessConfig c;
          c.n = cfg.value("n", 2);
          c.s = cfg.value("s", 0.5);
          if (cfg.contains("T_grid")) c.T_grid = cfg["T_grid"].get<std::vector<double>>();
          if (cfg.contains("M_targets"))
            c.M_targets = cfg["M_targets"].get<std::vector<double>>();
          run = experiments::run_ball_minus_hyperplane(c);
        } else if (id == "hartogs") {
          experiments::HartogsConfig c;
          c.n = cfg.value("n", 1);
          if (cfg.contains("T_grid")) c.T_grid = cfg["T_grid"].get<std::vector<double>>();
          c.sandwich_pairs = cfg.value("sandwich_pairs", 1000);
          run = experiments::run_hartogs(c);
        } else if (id == "not-finitely-compact") {
          experiments::NotFinitelyCompactConfig c;
          c.r = cfg.value("r", 0.4);
          c.samples = cfg.value("samples", 1000);
          run = experiments::run_not_finitely_compact(c);
        } else if (id == "strict-convex-localized") {
          experiments::StrictConvexConfig c;
          c.R_window = cfg.value("R_window", 0.3);
          c.r_small = cfg.value("r_small", 0.05);
          run = experiments::run_strict_convex_localized(c);
        } else if (id == "positive-control-disc") {
          experiments::PositiveControlConfig c;
          c.samples = cfg.value("samples", 2000);
          run = experiments::run_positive_control_disc(c);
        } else {
          throw std::invalid_argument("unknown experiment id: " + id);
        }
        py::dict out;
        out["csv"] = run.csv();
        out["summary"] = run.summary().dump();
        return out;
      },
      py::arg("id"), py::arg("config_json") = std::string());
}
