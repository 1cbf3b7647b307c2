#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "whitney/discotope.hpp"

using namespace whitney;

namespace {

}  // namespace

TEST_CASE("discotope of an arrangement") {
  // hyperplanes get unit-length segments (radius 1/2)
  Discotope cube = discotope_of(coordinate_arrangement(3));
  REQUIRE(cube.disks.size() == 3);
  for (const auto& disk : cube.disks) {
    CHECK(disk.dim() == 1);
    CHECK(disk.radius == Catch::Approx(0.5));
  }

  // one codim-2 plane in R^4 gives an area-1 disk of radius pi^{-1/2}
  Arrangement plane;
  plane.ambient = 4;
  RatMat c(2, 4);
  c.at(0, 0) = 1;
  c.at(1, 1) = 1;
  plane.elements.push_back(Subspace::from_constraints(c, {Rat(0), Rat(0)}));
  plane.auto_label();
  Discotope d = discotope_of(plane);
  REQUIRE(d.disks.size() == 1);
  CHECK(d.disks[0].dim() == 2);
  CHECK(d.disks[0].radius == Catch::Approx(1.0 / std::sqrt(M_PI)));

  // empty arrangement: a point
  Arrangement empty;
  empty.ambient = 3;
  Discotope pt = discotope_of(empty);
  CHECK(pt.disks.empty());

  // non-central input rejected
  Arrangement aff;
  aff.ambient = 2;
  RatMat h(1, 2);
  h.at(0, 0) = 1;
  aff.elements.push_back(Subspace::from_constraints(h, {Rat(1)}));
  aff.auto_label();
  CHECK_THROWS_AS(discotope_of(aff), std::invalid_argument);
}

TEST_CASE("support function") {
  Discotope ball = ball_discotope(3, 0.7);
  CHECK(support_function(ball, {1, 0, 0}) == Catch::Approx(0.7));

  // single planar disk: support is r in the plane, 0 orthogonal to it
  Discotope d;
  d.ambient = 3;
  d.disks.push_back(Disk{{{1, 0, 0}, {0, 1, 0}}, 2.0});
  CHECK(support_function(d, {1, 0, 0}) == Catch::Approx(2.0));
  CHECK(support_function(d, {0, 0, 1}) == Catch::Approx(0.0).margin(1e-15));

  // cube as discotope: h((1,..,1)/sqrt(d)) = sqrt(d)/2
  Discotope cube = discotope_of(coordinate_arrangement(4));
  std::vector<double> diag(4, 0.5);
  CHECK(support_function(cube, diag) == Catch::Approx(std::sqrt(4.0) / 2.0));

  CHECK_THROWS_AS(support_function(ball, {2, 0, 0}), std::invalid_argument);
}

TEST_CASE("distance oracle") {
  // origin inside a central discotope
  Discotope cube = discotope_of(coordinate_arrangement(3));
  CHECK(distance_to_body(cube, {0, 0, 0}).dist == 0.0);
  CHECK(distance_to_body(cube, {0.2, -0.1, 0.3}).dist == 0.0);

  // single segment [-a,a] e1 with a = 1/2: axis point at a + t
  Discotope seg;
  seg.ambient = 3;
  seg.disks.push_back(Disk{{{1, 0, 0}}, 0.5});
  auto r = distance_to_body(seg, {0.5 + 0.25, 0, 0});
  CHECK(r.converged);
  CHECK(r.dist == Catch::Approx(0.25).margin(1e-8));

  // planar disk of radius r: in-plane point at distance s has dist s - r
  Discotope disk;
  disk.ambient = 3;
  disk.disks.push_back(Disk{{{1, 0, 0}, {0, 1, 0}}, 1.0});
  auto r2 = distance_to_body(disk, {1.2, 0.9, 0});
  double s = std::sqrt(1.2 * 1.2 + 0.81);
  CHECK(r2.dist == Catch::Approx(s - 1.0).margin(1e-8));

  // cube corner distance
  auto r3 = distance_to_body(cube, {1.5, 1.5, 1.5});
  CHECK(r3.dist == Catch::Approx(std::sqrt(3.0)).margin(1e-7));
}

TEST_CASE("point classification bounds") {
  Discotope cube = discotope_of(coordinate_arrangement(3));
  CHECK(classify_point(cube, {2.0, 0, 0}, 1.0, 7) == PointClass::miss);
  CHECK(classify_point(cube, {1.0, 0, 0}, 1.0, 7) == PointClass::hit);
  CHECK(classify_point(cube, {0, 0, 0}, 0.5, 7) == PointClass::hit);
}

TEST_CASE("MC estimator on the ball, small budget") {
  // vol(B + lam B) = (1 + lam)^d kappa_d, nu_j = C(d,j) kappa_d / kappa_{d-j}
  int d = 2;
  Discotope ball = ball_discotope(d, 1.0);
  std::vector<double> grid{0.25, 0.5, 0.75, 1.0, 1.5};
  McResult res = estimate_intrinsic_volumes_mc(ball, grid, 20000, 99);
  double binom = 1;
  for (int j = 0; j <= d; ++j) {
    double expect = binom * kappa(d) / kappa(d - j);
    CHECK(res.nu[static_cast<size_t>(j)] == Catch::Approx(expect).epsilon(0.1));
    binom = binom * (d - j) / (j + 1);
  }
  CHECK(res.flagged == 0);
}

TEST_CASE("MC estimator on a point") {
  Discotope pt;
  pt.ambient = 2;
  std::vector<double> grid{0.5, 1.0, 1.5, 2.0};
  McResult res = estimate_intrinsic_volumes_mc(pt, grid, 20000, 5);
  CHECK(res.nu[0] == Catch::Approx(1.0).epsilon(0.05));
  CHECK(std::fabs(res.nu[1]) < 0.05);
  CHECK(std::fabs(res.nu[2]) < 0.05);
}

TEST_CASE("MC estimator needs d+1 distinct lambdas") {
  Discotope ball = ball_discotope(3, 1.0);
  CHECK_THROWS_AS(estimate_intrinsic_volumes_mc(ball, {0.5, 0.5, 0.5, 0.5}, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("MC estimator is deterministic and worker-count independent") {
  Discotope cube = discotope_of(coordinate_arrangement(2));
  std::vector<double> grid{0.3, 0.6, 0.9, 1.2};
  McResult a = estimate_intrinsic_volumes_mc(cube, grid, 4000, 31, 1);
  McResult b = estimate_intrinsic_volumes_mc(cube, grid, 4000, 31, 1);
  McResult c = estimate_intrinsic_volumes_mc(cube, grid, 4000, 31, 3);
  REQUIRE(a.raw_volume.size() == b.raw_volume.size());
  for (size_t j = 0; j < a.raw_volume.size(); ++j) {
    CHECK(a.raw_volume[j] == b.raw_volume[j]);
    CHECK(a.raw_volume[j] == c.raw_volume[j]);
  }
  for (size_t j = 0; j < a.nu.size(); ++j) CHECK(a.nu[j] == c.nu[j]);
}

TEST_CASE("sphere and grassmann samplers") {
  auto pts = sample_sphere(200, 5, 42);
  for (const auto& p : pts) CHECK(std::fabs(std::sqrt(norm2(p)) - 1.0) < 1e-12);
  auto again = sample_sphere(200, 5, 42);
  CHECK(pts == again);

  auto q = sample_grassmann(3, 6, 7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double dot = 0;
      for (int t = 0; t < 6; ++t) dot += q[static_cast<size_t>(i)][static_cast<size_t>(t)] *
                                         q[static_cast<size_t>(j)][static_cast<size_t>(t)];
      CHECK(dot == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-10));
    }
  // r = d: the full space
  auto full = sample_grassmann(4, 4, 9);
  CHECK(full.size() == 4);
}

TEST_CASE("grassmann distance") {
  std::vector<std::vector<double>> ex = {{1, 0}}, ey = {{0, 1}};
  CHECK(grassmann_distance(ex, ex) == Catch::Approx(0.0).margin(1e-12));
  CHECK(grassmann_distance(ex, ey) == Catch::Approx(1.0));
  double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  std::vector<std::vector<double>> diag = {{c, s}};
  CHECK(grassmann_distance(ex, diag) == Catch::Approx(std::sin(M_PI / 4)).epsilon(1e-9));
  CHECK_THROWS_AS(grassmann_distance(ex, {{1, 0}, {0, 1}}), std::invalid_argument);
}
