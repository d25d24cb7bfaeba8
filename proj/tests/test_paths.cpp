#include <doctest.h>

#include <cmath>

#include "kobest/mesh.hpp"
#include "kobest/paths.hpp"
#include "test_util.hpp"

using namespace kobest;
namespace kt = kobest::testing;

TEST_CASE("length_upper: closed-form chord integral and additivity") {
  auto disc = make_disc(1.0);
  Curve seg = segment_curve({Cx(0, 0)}, {Cx(0.5, 0)}, disc.get());
  // integral of dt/(1 - t) over [0, 0.5] is log 2, which dominates arctanh(1/2)
  double len = length_upper(*disc, seg);
  CHECK(len == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(len >= std::atanh(0.5));

  Curve constant;
  constant.a = 0;
  constant.b = 1;
  constant.point = [](double) { return CVec{Cx(0.2, 0.1)}; };
  constant.deriv = [](double) { return CVec{Cx(0, 0)}; };
  CHECK(length_upper(*disc, constant) == doctest::Approx(0.0));

  auto pd = make_punctured_disc(1.0);
  Curve rad = radial_geodesic_punctured(1.0);
  double rl = length_upper(*pd, rad);
  CHECK(std::isfinite(rl));
  CHECK(rl >= 1.0);  // the exact distance between the endpoints is 1

  // additivity across a concatenation junction
  Curve a = segment_curve({Cx(-0.3, 0)}, {Cx(0, 0)}, disc.get());
  Curve b = segment_curve({Cx(0, 0)}, {Cx(0.4, 0)}, disc.get());
  Curve joined = concat_curves({a, b});
  CHECK(length_upper(*disc, joined) ==
        doctest::Approx(length_upper(*disc, a) + length_upper(*disc, b)).epsilon(1e-9));
}

TEST_CASE("curve constructors") {
  CVec zeta = {Cx(1, 0), Cx(0, 0)};
  CVec p = {Cx(0, 0), Cx(0.5, 0)};
  Curve tent = tent_curve(zeta, p, 6.0);
  CHECK(dist(tent.point_at(0.0), p) == doctest::Approx(0.0));
  double u = std::log(2.0) / 2.0;
  CHECK(dist(tent.point_at(u), zeta) == doctest::Approx(0.5 * dist(p, zeta)).epsilon(1e-12));
  // derivative matches finite differences
  CVec dv = tent.derivative_at(0.7);
  Curve tent_fd = tent;
  tent_fd.deriv = nullptr;
  CVec fd = tent_fd.derivative_at(0.7);
  CHECK(dist(dv, fd) < 1e-5);
  CHECK_THROWS_AS(tent_curve(p, p), std::invalid_argument);

  Curve lr = log_radial_curve(p, 3.0);
  CHECK(dist(lr.point_at(0.0), p) == doctest::Approx(0.0));
  CHECK(std::abs(lr.point_at(1.0)[1]) ==
        doctest::Approx(0.5 * std::exp(1.0 - std::exp(2.0))).epsilon(1e-12));

  Curve rg = radial_geodesic_punctured(3.0);
  CHECK(std::abs(rg.point_at(0.0)[0] - std::exp(-1.0)) < 1e-15);

  // tent curve in the ball: half-space log-ratio gives exactly |s - t|
  RealHalfSpace hs(zeta, scale(Cx(-1, 0), zeta));
  for (double s : {0.0, 0.5, 1.5})
    for (double t : {0.3, 1.0, 2.5}) {
      double bound = 0.5 * std::abs(std::log(hs.dist(tent.point_at(s)) /
                                             hs.dist(tent.point_at(t))));
      CHECK(bound == doctest::Approx(std::abs(s - t)).epsilon(1e-10));
    }
}

TEST_CASE("concat: endpoint mismatch rejected, constant tail harmless") {
  Curve a = segment_curve({Cx(0, 0)}, {Cx(0.3, 0)});
  Curve gap = segment_curve({Cx(0.4, 0)}, {Cx(0.5, 0)});
  CHECK_THROWS_AS(concat_curves({a, gap}), std::invalid_argument);

  Curve tail;
  tail.a = 0;
  tail.b = 1;
  tail.point = [](double) { return CVec{Cx(0.3, 0)}; };
  tail.deriv = [](double) { return CVec{Cx(0, 0)}; };
  Curve joined = concat_curves({a, tail});
  for (double t : {0.0, 0.4, 0.9})
    CHECK(dist(joined.point_at(t), a.point_at(t)) < 1e-15);
  CHECK(dist(joined.point_at(1.7), CVec{Cx(0.3, 0)}) < 1e-15);
}

TEST_CASE("radial geodesic is a (1,0) quasi-geodesic; unit-speed on the grid") {
  auto pd = make_punctured_disc(1.0);
  DistanceStrategy strat;
  Curve rg = radial_geodesic_punctured(3.0);
  auto grid = uniform_grid(0.0, 3.0, 31);
  PairOracle oracle = make_curve_pair_oracle(*pd, rg, strat, grid, false);
  for (double s : {0.0, 1.0, 2.5})
    for (double t : {0.5, 2.0, 3.0}) {
      BoundValue bv = oracle(s, t);
      CHECK(bv.lower == doctest::Approx(std::abs(t - s)).epsilon(1e-9));
    }
  QGReport rep = verify_quasi_geodesic(grid, 1.0, 0.0, oracle);
  CHECK(rep.pass);
  CHECK(rep.worst_lower_margin >= -1e-12);
  // and the Lemma 3.1 equality case holds exactly along the curve
  for (double u : grid)
    CHECK(lower_bound_punctured_log(rg.point_at(u)[0], rg.point_at(0.0)[0]) ==
          doctest::Approx(u).epsilon(1e-9));
}

TEST_CASE("verify_quasi_geodesic: monotone in (A, B), trivial large-B pass") {
  auto pd = make_punctured_disc(1.0);
  DistanceStrategy strat;
  Curve rg = radial_geodesic_punctured(2.0);
  auto grid = uniform_grid(0.0, 2.0, 21);
  PairOracle oracle = make_curve_pair_oracle(*pd, rg, strat, grid, false);
  QGReport r1 = verify_quasi_geodesic(grid, 1.0, 0.0, oracle);
  QGReport r2 = verify_quasi_geodesic(grid, 2.0, 0.5, oracle);
  CHECK(r1.pass);
  CHECK(r2.pass);
  CHECK(r2.worst_upper_margin >= r1.worst_upper_margin);
  QGReport big_b = verify_quasi_geodesic(grid, 1.0, 100.0, oracle);
  CHECK(big_b.worst_upper_margin >= 0);
}

TEST_CASE("estimate_qg_constants: geodesic, half-speed reparametrization") {
  std::vector<double> grid = uniform_grid(0.0, 3.0, 31);
  PairOracle exact = [](double s, double t) {
    return BoundValue::exact(std::abs(t - s));
  };
  QGEstimate est = estimate_qg_constants(grid, exact);
  CHECK(est.A == doctest::Approx(1.0));
  CHECK(est.B == doctest::Approx(0.0));
  CHECK(est.report.pass);

  PairOracle half = [](double s, double t) {
    return BoundValue::exact(0.5 * std::abs(t - s));
  };
  // lexicographic scan trades A against B up to the cap; with a tight B cap
  // the reparametrization constant A = 2 emerges
  QGScanOptions tight;
  tight.B_max = 0.02;
  QGEstimate est2 = estimate_qg_constants(grid, half, tight);
  CHECK(est2.A >= 1.9);
  CHECK(est2.A <= 2.01);
  CHECK(est2.B <= 0.02);
  QGEstimate est3 = estimate_qg_constants(grid, half);  // default cap B <= 1
  CHECK(est3.A < 2.0);
  CHECK(est3.report.pass);

  PairOracle hopeless = [](double s, double t) {
    return BoundValue(0.0, 100.0 * std::abs(t - s) + 50.0, "t", "t");
  };
  CHECK_THROWS_AS(estimate_qg_constants(grid, hopeless), QGScanError);
}

TEST_CASE("tent curve toward the boundary: feasible constants, shared pair over K") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  CVec zeta = {Cx(1, 0), Cx(0, 0)};
  DistanceStrategy strat;
  strat.halfspaces.push_back(RealHalfSpace(zeta, scale(Cx(-1, 0), zeta)));

  QGScanOptions scan;
  scan.A_max = 8.0;
  scan.B_max = 4.0;

  CVec p = {Cx(0, 0), Cx(0.25, 0)};
  Curve tent = tent_curve(zeta, p, 4.0, bm.get());
  auto grid = uniform_grid(0.0, 4.0, 25);
  PairOracle oracle = make_curve_pair_oracle(*bm, tent, strat, grid, true);
  QGEstimate est = estimate_qg_constants(grid, oracle, scan);
  CHECK(est.report.pass);
  CHECK(est.A <= 8.0);
  CHECK(est.B <= 4.0);

  // ten-point compact set K: one shared (A, B) verifies all tent curves
  auto g = kt::rng(51);
  double maxA = 1.0, maxB = 0.0;
  std::vector<Curve> tents;
  for (int k = 0; k < 10; ++k) {
    CVec q = {0.3 * kt::sample_disc(g), Cx(0.15 + 0.3 * kt::unit(g), 0)};
    REQUIRE(bm->contains(q));
    tents.push_back(tent_curve(zeta, q, 4.0, bm.get()));
    PairOracle o = make_curve_pair_oracle(*bm, tents.back(), strat, grid, true);
    QGEstimate e = estimate_qg_constants(grid, o, scan);
    maxA = std::max(maxA, e.A);
    maxB = std::max(maxB, e.B);
  }
  for (const Curve& c : tents) {
    PairOracle o = make_curve_pair_oracle(*bm, c, strat, grid, true);
    CHECK(verify_quasi_geodesic(grid, maxA, maxB, o).pass);
  }
}

TEST_CASE("log-radial curve: exact slice distances within an additive constant of |s-t|") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  CVec p = {Cx(0, 0), Cx(0.5, 0)};
  // the 1e-14 hyperplane rejection band caps usable parameters near 1.7
  Curve lr = log_radial_curve(p, 1.6, bm.get());
  for (double s : {0.0, 0.8, 1.2})
    for (double t : {0.5, 1.0, 1.6}) {
      double d = distance_punctured_disc(lr.point_at(s)[1], lr.point_at(t)[1], 1.0);
      CHECK(std::abs(d - std::abs(t - s)) <= 1.0);
    }
}

TEST_CASE("mesh upper bound: disc, product route, degenerate pair") {
  auto disc = make_disc(1.0);
  MeshOptions opts;
  double v = distance_upper_mesh(*disc, {Cx(0, 0)}, {Cx(0.5, 0)}, opts);
  CHECK(v >= std::atanh(0.5) - 1e-12);
  CHECK(v <= std::atanh(0.5) + 0.1);
  CHECK(distance_upper_mesh(*disc, {Cx(0.3, 0.2)}, {Cx(0.3, 0.2)}, opts) == 0.0);

  auto poly = make_polydisc({1.0, 1.0});
  double pv = distance_upper_mesh(*poly, CVec(2, Cx(0, 0)), {Cx(0.5, 0), Cx(0.5, 0)}, opts);
  CHECK(pv >= std::atanh(0.5) - 1e-12);
  CHECK(pv <= std::atanh(0.5) + 0.1);

  // product formula cross-check: exact equals arctanh(0.5) on both endpoints
  DistanceStrategy strat;
  BoundValue prod = kobayashi_distance(*poly, CVec(2, Cx(0, 0)), {Cx(0.5, 0), Cx(0.5, 0)}, strat);
  CHECK(prod.lower == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
  CHECK(prod.upper == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
}

TEST_CASE("mesh stays below the straight-chord length bound") {
  auto g = kt::rng(61);
  MeshOptions opts;
  auto disc = make_disc(1.0);
  for (int k = 0; k < 100; ++k) {
    CVec a = {kt::sample_disc(g, 0.85)}, b = {kt::sample_disc(g, 0.85)};
    if (dist(a, b) < 1e-3) continue;
    double chord_len = length_upper(*disc, segment_curve(a, b, disc.get()));
    double mesh = distance_upper_mesh(*disc, a, b, opts);
    CHECK(mesh <= chord_len + 1e-9);
  }
  auto poly = make_polydisc({1.0, 1.0});
  for (int k = 0; k < 100; ++k) {
    CVec a = {kt::sample_disc(g, 0.85), kt::sample_disc(g, 0.85)};
    CVec b = {kt::sample_disc(g, 0.85), kt::sample_disc(g, 0.85)};
    if (dist(a, b) < 1e-3) continue;
    double chord_len = length_upper(*poly, segment_curve(a, b, poly.get()));
    double mesh = distance_upper_mesh(*poly, a, b, opts);
    CHECK(mesh <= chord_len + 1e-9);
  }
}

TEST_CASE("dispatcher triangle inequality on certified bounds") {
  DistanceStrategy strat;
  auto g = kt::rng(67);
  std::vector<DomainPtr> domains = {make_disc(1.0), make_polydisc({1.0, 1.0}),
                                    make_ball(CVec(2, Cx(0, 0)), 1.0)};
  for (const auto& d : domains) {
    for (int k = 0; k < 1000; ++k) {
      CVec a = kt::sample_ball(g, d->dimension(), 0.9);
      CVec b = kt::sample_ball(g, d->dimension(), 0.9);
      CVec c = kt::sample_ball(g, d->dimension(), 0.9);
      if (!d->contains(a) || !d->contains(b) || !d->contains(c)) continue;
      BoundValue ab = kobayashi_distance(*d, a, b, strat);
      BoundValue ac = kobayashi_distance(*d, a, c, strat);
      BoundValue cb = kobayashi_distance(*d, c, b, strat);
      if (ac.upper_finite() && cb.upper_finite())
        CHECK(ab.lower <= ac.upper + cb.upper + 1e-9);
    }
  }
}

TEST_CASE("mesh signals when the resolution cannot connect the endpoints") {
  auto pd = make_punctured_disc(1.0);
  MeshOptions coarse;
  coarse.points_per_unit = 0.4;  // lattice spacing above the domain size
  coarse.max_refines = 0;
  coarse.connect_radius_mult = 0.1;
  CHECK_THROWS_AS(distance_upper_mesh(*pd, {Cx(0.5, 0)}, {Cx(-0.5, 0)}, coarse), MeshError);
}

TEST_CASE("escape to any boundary point diverges monotonically") {
  // Finite compactness in practice: certified lower bounds from a fixed interior point to
  // sequences approaching the boundary (including the removed hyperplane)
  // grow without bound.
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  DistanceStrategy strat;
  CVec p = {Cx(0, 0), Cx(0.5, 0)};
  // toward the puncture plane along the axis
  double prev = 0;
  for (int k = 1; k <= 6; ++k) {
    CVec z = {Cx(0, 0), Cx(std::pow(10.0, -2.0 * k), 0)};
    double lo = kobayashi_distance(*bm, p, z, strat).lower;
    CHECK(lo > prev);
    prev = lo;
  }
  CHECK(prev > 1.0);
  // toward a generic sphere point along an interior ray
  prev = 0;
  for (int k = 1; k <= 6; ++k) {
    double t = 1.0 - std::pow(10.0, -2.0 * k);
    CVec z = {Cx(0.8 * t, 0), Cx(0.6 * t, 0)};
    REQUIRE(bm->contains(z));
    double lo = kobayashi_distance(*bm, p, z, strat).lower;
    CHECK(lo > prev);
    prev = lo;
  }
  CHECK(prev > 1.0);
}
