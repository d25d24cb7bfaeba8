#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "kobest/config.hpp"
#include "kobest/domain.hpp"
#include "test_util.hpp"

using namespace kobest;
namespace kt = kobest::testing;

TEST_CASE("membership basics") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  CHECK(ball->contains(CVec(2, Cx(0, 0))));
  CHECK_FALSE(ball->contains({Cx(1, 0), Cx(0.1, 0)}));
  CHECK_THROWS_AS(ball->contains({Cx(0, 0)}), std::invalid_argument);

  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  CHECK_FALSE(bm->contains({Cx(0.3, 0), Cx(0, 0)}));
  CHECK(bm->contains({Cx(0.3, 0), Cx(0.1, 0)}));

  auto hull = make_coordinate_disc_hull({1.0, 1.0});
  CHECK(hull->contains({Cx(0.5, 0), Cx(0.49, 0)}));
  CHECK_FALSE(hull->contains({Cx(0.5, 0), Cx(0.51, 0)}));
}

TEST_CASE("boundary distances") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  CHECK(ball->boundary_dist(CVec(2, Cx(0, 0))) == doctest::Approx(1.0));

  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  CVec z = {Cx(0, 0), Cx(0.25, 0)};
  CHECK(bm->boundary_dist(z) == doctest::Approx(0.25).epsilon(1e-12));
  // oracle: brute-force sampling of both boundary pieces
  {
    auto g = kt::rng(3);
    double best = kInf;
    for (int k = 0; k < 200000; ++k) {
      CVec w = kt::sample_ball(g, 2, 1.0);
      CVec sphere = scale(Cx(1.0 / norm(w), 0), w);        // on the unit sphere
      CVec plane = {kt::sample_disc(g, 1.0), Cx(0, 0)};    // on the removed hyperplane
      best = std::min({best, dist(z, sphere), dist(z, plane)});
    }
    CHECK(bm->boundary_dist(z) == doctest::Approx(best).epsilon(2e-2));
  }

  auto poly = make_polydisc({1.0, 1.0});
  CHECK(poly->boundary_dist({Cx(0.5, 0), Cx(0, 0)}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(poly->boundary_dist({Cx(1.5, 0), Cx(0, 0)}), std::domain_error);
}

TEST_CASE("directional boundary distances") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  CHECK(ball->dir_boundary_dist(CVec(2, Cx(0, 0)), unit_vector(2, 0)) == doctest::Approx(1.0));

  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  CVec z = {Cx(0, 0), Cx(0.25, 0)};
  CHECK(bm->dir_boundary_dist(z, unit_vector(2, 1)) == doctest::Approx(0.25).epsilon(1e-12));
  // oracle with two independent parts: membership brute force over angles
  // with bisection along rays (sphere part), and a grid-refined minimization
  // of the affine hyperplane functional along the line (removed part, which
  // membership sampling cannot see: the crossing has measure zero)
  {
    double sphere_part = kInf;
    for (int a = 0; a < 720; ++a) {
      double th = 2 * 3.14159265358979323846 * a / 720;
      Cx dir = std::polar(1.0, th);
      auto inside = [&](double t) {
        CVec w = axpy(z, t * dir, unit_vector(2, 1));
        return dist(w, CVec(2, Cx(0, 0))) < 1.0;
      };
      double lo = 0, hi = 2.0;
      for (int it = 0; it < 50; ++it) {
        double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
      }
      sphere_part = std::min(sphere_part, hi);
    }
    Hyperplane S(unit_vector(2, 1), Cx(0, 0));
    Cx center(0, 0);
    double radius = 1.0;
    for (int round = 0; round < 40; ++round) {
      Cx best_l = center;
      double best_v = kInf;
      for (int i = -8; i <= 8; ++i)
        for (int j = -8; j <= 8; ++j) {
          Cx lam = center + Cx(radius * i / 8.0, radius * j / 8.0);
          CVec w = axpy(z, lam, unit_vector(2, 1));
          double v = std::abs(S.eval(w));
          if (v < best_v) {
            best_v = v;
            best_l = lam;
          }
        }
      center = best_l;
      radius *= 0.35;
    }
    double plane_part = std::abs(center);
    double best = std::min(sphere_part, plane_part);
    CHECK(bm->dir_boundary_dist(z, unit_vector(2, 1)) == doctest::Approx(best).epsilon(1e-4));
  }

  auto poly = make_polydisc({1.0, 2.0});
  CHECK(poly->dir_boundary_dist(CVec(2, Cx(0, 0)), {Cx(1, 0), Cx(0, 0)}) ==
        doctest::Approx(1.0));

  // the hull's grid value is an upper bound on the infimum and at least the
  // certified lower bound
  auto hull = make_coordinate_disc_hull({1.0, 1.0});
  CVec hz = {Cx(0.2, 0.1), Cx(-0.3, 0.2)};
  CVec hv = {Cx(0.7, -0.1), Cx(0.4, 0.3)};
  double grid_val = hull->dir_boundary_dist(hz, hv);
  CHECK(hull->dir_boundary_dist_cert_lower(hz, hv) <= grid_val + 1e-12);
  CHECK(grid_val <= hull->diameter());
  CHECK(hull->dir_grid_resolution() == 256);
}

TEST_CASE("line distance dominates the full boundary distance") {
  auto g = kt::rng(5);
  std::vector<DomainPtr> domains = {
      make_disc(1.0), make_punctured_disc(1.0), make_ball(CVec(2, Cx(0, 0)), 1.0),
      make_polydisc({1.0, 1.0}),
      make_minus_hyperplanes(make_ball(CVec(2, Cx(0, 0)), 1.0),
                             {Hyperplane(unit_vector(2, 1), Cx(0, 0))})};
  for (const auto& d : domains) {
    for (int k = 0; k < 200; ++k) {
      CVec z = kt::sample_ball(g, d->dimension(), 0.95);
      if (!d->contains(z)) continue;
      CVec v(d->dimension());
      for (auto& c : v) c = Cx(2 * kt::unit(g) - 1, 2 * kt::unit(g) - 1);
      if (norm2(v) == 0) continue;
      CHECK(d->boundary_dist(z) <= d->dir_boundary_dist(z, v) + 1e-12);
    }
  }
}

TEST_CASE("diameters") {
  CHECK(make_ball(CVec(2, Cx(0, 0)), 1.0)->diameter() == doctest::Approx(2.0));
  CHECK(make_minus_hyperplanes(make_ball(CVec(2, Cx(0, 0)), 1.0),
                               {Hyperplane(unit_vector(2, 1), Cx(0, 0))})
            ->diameter() == doctest::Approx(2.0));
  double d = make_polydisc({1.0, 1.0})->diameter();
  CHECK(d == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  // oracle: brute force over near-corner samples (antipodal pairs included)
  {
    auto g = kt::rng(9);
    double best = 0;
    for (int k = 0; k < 5000; ++k) {
      double th1 = 2 * 3.14159265358979323846 * kt::unit(g);
      double th2 = 2 * 3.14159265358979323846 * kt::unit(g);
      CVec a = {std::polar(0.999999, th1), std::polar(0.999999, th2)};
      CVec b = scale(Cx(-1, 0), a);
      best = std::max({best, dist(a, b)});
      CVec c = {kt::sample_disc(g, 0.999999), kt::sample_disc(g, 0.999999)};
      best = std::max(best, dist(a, c));
    }
    CHECK(best <= d);
    CHECK(best >= 0.99 * d);
  }
  CHECK_THROWS_AS(make_halfplane()->diameter(), std::domain_error);
}

TEST_CASE("Lemma 2.1: the coordinate-disc hull sits inside the unit ball") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto hull = make_coordinate_disc_hull({1.0, 1.0});
  auto g = kt::rng(27);
  int tested = 0;
  while (tested < 10000) {
    CVec z = {kt::sample_disc(g, 1.0), kt::sample_disc(g, 1.0)};
    if (!hull->contains(z)) continue;
    ++tested;
    CHECK(ball->contains(z));
  }
}

TEST_CASE("Lemma 2.2: product membership is the conjunction of the factors") {
  auto d1 = make_punctured_disc(1.0);
  auto d2 = make_disc(0.5);
  auto prod = make_product({d1, d2});
  CHECK(prod->is_weakly_linearly_convex());
  auto g = kt::rng(33);
  for (int k = 0; k < 10000; ++k) {
    CVec z = {kt::sample_disc(g, 1.2), kt::sample_disc(g, 0.7)};
    bool expect = d1->contains({z[0]}) && d2->contains({z[1]});
    CHECK(prod->contains(z) == expect);
  }
}

TEST_CASE("removed hyperplanes never report membership") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  Hyperplane h({Cx(0.3, 0.1), Cx(1, -0.2)}, Cx(0.05, 0.02));
  auto bm = make_minus_hyperplanes(ball, {h});
  auto g = kt::rng(41);
  int tested = 0;
  while (tested < 10000) {
    // construct a point exactly on the hyperplane: solve for the last coord
    Cx z0 = kt::sample_disc(g, 0.7);
    Cx z1 = (h.offset - h.normal[0] * z0) / h.normal[1];
    CVec z = {z0, z1};
    if (!ball->contains(z)) continue;
    ++tested;
    CHECK_FALSE(bm->contains(z));
  }
}

TEST_CASE("localized removal membership") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  Hyperplane line(unit_vector(2, 1), Cx(0, 0));  // {z_2 = 0}
  CVec zeta = {Cx(1, 0), Cx(0, 0)};
  auto loc = make_localized_removal(ball, line, zeta, 0.3, true);
  CHECK(loc->contains({Cx(0.1, 0), Cx(0, 0)}));        // on the line, outside the window
  CHECK_FALSE(loc->contains({Cx(0.8, 0), Cx(0, 0)}));  // on the line, inside the window
  CHECK(loc->contains({Cx(0.8, 0), Cx(0.1, 0)}));      // off the line

  // inverted window: remove the far part of the line
  auto inv = make_localized_removal(make_polydisc({1.0, 1.0}),
                                    Hyperplane(unit_vector(2, 0), Cx(0, 0)), CVec(2, Cx(0, 0)),
                                    0.05, false);
  CHECK(inv->contains({Cx(0, 0), Cx(0.01, 0)}));        // near the origin: kept
  CHECK_FALSE(inv->contains({Cx(0, 0), Cx(0.5, 0)}));   // far on the line: removed
  CHECK(inv->contains({Cx(0.3, 0), Cx(0.5, 0)}));       // off the line
}

TEST_CASE("hartogs membership and conservative distances") {
  auto base = make_disc(1.0);
  PhiSpec phi;  // cone: max(0, 1 - 2|z|), r = e^{-1}, R = 1
  auto h = make_hartogs(base, phi);
  double r = std::exp(-1.0);
  CHECK(h->contains({Cx(0, 0), Cx(r / 2, 0)}));
  CHECK_FALSE(h->contains({Cx(0, 0), Cx(0, 0)}));         // puncture
  CHECK_FALSE(h->contains({Cx(0, 0), Cx(0.5, 0)}));       // above the ceiling at 0
  CHECK(h->contains({Cx(0.8, 0), Cx(0.5, 0)}));           // ceiling is 1 away from 0
  CHECK(h->boundary_dist({Cx(0, 0), Cx(r / 2, 0)}) ==
        doctest::Approx(std::min({1.0, r / 2, r - r / 2})).epsilon(1e-12));
  CHECK_THROWS_AS(h->boundary_dist({Cx(0.8, 0), Cx(0.5, 0)}), std::domain_error);
  auto parts = hartogs_parts(*h);
  REQUIRE(parts.has_value());
  CHECK(parts->r == doctest::Approx(r));
  CHECK(parts->R == doctest::Approx(1.0));
  CHECK(parts->upper_envelope->contains({Cx(0, 0), Cx(r / 2, 0)}));

  // upper semicontinuous step phi keeps the domain open along the jump
  PhiSpec step;
  step.kind = PhiSpec::Kind::step;
  step.a = 1.0;
  step.b = 0.5;
  step.c = 0.0;
  auto hs = make_hartogs(base, step);
  CHECK(hs->contains({Cx(0.5, 0), Cx(0.2, 0)}));
  CHECK_FALSE(hs->contains({Cx(0.5, 0), Cx(0.5, 0)}));
  CHECK(hs->contains({Cx(0.51, 0), Cx(0.5, 0)}));
}

TEST_CASE("domain configuration parsing") {
  json j = {{"kind", "minus-hyperplanes"},
            {"base", {{"kind", "ball"}, {"center", {{0, 0}, {0, 0}}}, {"radius", 1.0}}},
            {"hyperplanes", {{{"normal", {{0, 0}, {1, 0}}}, {"offset", 0.0}}}}};
  auto d = domain_from_json(j);
  CHECK(d->kind_name() == "minus-hyperplanes");
  CHECK(d->dimension() == 2);
  CHECK_FALSE(d->contains({Cx(0.3, 0), Cx(0, 0)}));

  json bad = j;
  bad["unexpected"] = 1;
  CHECK_THROWS_AS(domain_from_json(bad), ConfigError);

  json hart = {{"kind", "hartogs"},
               {"base", {{"kind", "disc"}, {"radius", 1.0}}},
               {"phi", {{"kind", "cone"}, {"params", {1.0, 2.0}}}}};
  CHECK(domain_from_json(hart)->dimension() == 2);

  CHECK(config_hash(j) == config_hash(j));
  CHECK(config_hash(j) != config_hash(bad));
}

TEST_CASE("removed hyperplanes must meet the base") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  CHECK_THROWS_AS(make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 0), Cx(2.0, 0))}),
                  std::invalid_argument);
  CHECK_NOTHROW(make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 0), Cx(0.5, 0))}));
  auto poly = make_polydisc({1.0, 1.0});
  CHECK_THROWS_AS(make_minus_hyperplanes(poly, {Hyperplane({Cx(1, 0), Cx(1, 0)}, Cx(3.0, 0))}),
                  std::invalid_argument);
}

TEST_CASE("oracles are safe for concurrent use") {
  auto ball = make_ball(CVec(2, Cx(0, 0)), 1.0);
  auto bm = make_minus_hyperplanes(ball, {Hyperplane(unit_vector(2, 1), Cx(0, 0))});
  std::vector<std::thread> threads;
  std::atomic<int> bad{0};
  for (int w = 0; w < 4; ++w)
    threads.emplace_back([&, w] {
      auto g = kt::rng(100 + w);
      for (int k = 0; k < 200; ++k) {
        CVec z = kt::sample_ball(g, 2, 0.9);
        if (!bm->contains(z)) continue;
        if (!(bm->boundary_dist(z) > 0)) ++bad;
        CVec v = unit_vector(2, k % 2);
        if (!(bm->dir_boundary_dist(z, v) > 0)) ++bad;
      }
    });
  for (auto& t : threads) t.join();
  CHECK(bad == 0);
}
