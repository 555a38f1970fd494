#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmsa/errors.hpp"
#include "hmsa/moments.hpp"
#include "hmsa/verify.hpp"
#include "support.hpp"

using namespace hmsa;
using std::numbers::pi;

TEST_CASE("sphere moments") {
  const auto grid = build_grid(StarSurface::sphere(1.0), 32, 64, 4);
  const auto table = moment_table(grid, 8);
  CHECK(table.c(0, 0).real() == doctest::Approx(2 * std::sqrt(pi)).epsilon(1e-12));
  for (int n = 1; n <= 8; ++n)
    for (int m = -n; m <= n; ++m) {
      CHECK(std::abs(table.c(n, m)) < 1e-10);
      CHECK(table.a(n, m).norm() < 1e-10);
    }
  const auto big = moment_table(build_grid(StarSurface::sphere(2.0), 32, 64, 4), 0);
  CHECK(big.c(0, 0).real() == doctest::Approx(8 * std::sqrt(pi)).epsilon(1e-12));
  CHECK_THROWS_AS(moment_table(grid, -1), DomainError);
}

TEST_CASE("a_00 vanishes on every corpus surface") {
  for (const auto& entry : standard_corpus()) {
    CAPTURE(entry.name);
    const auto grid = build_grid(entry.surface, 64, 128, 4);
    const auto table = moment_table(grid, 0);
    CHECK(table.a(0, 0).norm() < 1e-9 * surface_measures(grid).area * grid.max_radius());
  }
}

TEST_CASE("moment tables are conjugate symmetric") {
  const auto grid = build_grid(test::tesseral(0.2).rotated(
                                   Eigen::AngleAxisd(0.5, Vec3(1, 0, 1).normalized()).toRotationMatrix()),
                               32, 64, 4);
  const auto table = moment_table(grid, 8);
  for (int n = 0; n <= 8; ++n)
    for (int m = 1; m <= n; ++m) {
      CHECK(std::abs(table.c(n, -m) - std::conj(table.c(n, m))) < 1e-12 * std::max(1.0, std::abs(table.c(n, m))));
      CHECK((table.a(n, -m) - table.a(n, m).conjugate()).norm() < 1e-12 * std::max(1.0, table.a(n, m).norm()));
    }
}

TEST_CASE("degree powers are rotation invariant") {
  const auto surface = StarSurface::ellipsoid(1.0, 1.2, 1.5);
  const auto turned = rotate_surface(surface, Vec3(2, -1, 2).normalized(), 1.3);
  const auto t0 = moment_table(build_grid(surface, 64, 128, 4), 8);
  const auto t1 = moment_table(build_grid(turned, 64, 128, 4), 8);
  // odd degrees vanish by central symmetry, so compare against the degree scale
  const double area = t0.c(0, 0).real() * std::sqrt(4 * pi);
  for (int n = 0; n <= 8; ++n) {
    CAPTURE(n);
    const double c_scale = std::max(t0.c_degree_power(n), std::pow(area * std::pow(1.5, n), 2));
    const double a_scale = std::max(t0.a_degree_power(n), std::pow(area * std::pow(1.5, n + 1), 2));
    CHECK(std::abs(t1.c_degree_power(n) - t0.c_degree_power(n)) < 1e-8 * c_scale);
    CHECK(std::abs(t1.a_degree_power(n) - t0.a_degree_power(n)) < 1e-8 * a_scale);
  }
  CHECK(test::rel_diff(t1.c_degree_power(2), t0.c_degree_power(2)) < 1e-8);
  CHECK(test::rel_diff(t1.a_degree_power(2), t0.a_degree_power(2)) < 1e-8);
}

TEST_CASE("dilation scaling law") {
  const double lambda = 1.7;
  const auto surface = test::tesseral(0.2);
  const auto t0 = moment_table(build_grid(surface, 32, 64, 4), 6);
  const auto t1 = moment_table(build_grid(surface.dilated(lambda), 32, 64, 4), 6);
  for (int n = 0; n <= 6; ++n)
    for (int m = -n; m <= n; ++m) {
      const Complex c = t0.c(n, m) * std::pow(lambda, n + 2);
      const CVec3 a = t0.a(n, m) * std::pow(lambda, n + 3);
      if (std::abs(c) > 1e-12) CHECK(std::abs(t1.c(n, m) - c) / std::abs(c) < 1e-9);
      if (a.norm() > 1e-12) CHECK((t1.a(n, m) - a).norm() / a.norm() < 1e-9);
    }
}

TEST_CASE("harmonic moment residuals") {
  const auto sphere = build_grid(StarSurface::sphere(3.0), 64, 128, 16);
  const auto ms = surface_measures(sphere);
  for (int n = 1; n <= 8; ++n)
    for (int m = -n; m <= n; ++m) CHECK(std::abs(harmonic_moment_residual(sphere, ms, {n, m})) < 1e-9 * degree_scale(sphere, ms, n));

  const auto prolate = build_grid(test::prolate(), 64, 128, 16);
  const auto mp = surface_measures(prolate);
  CHECK(std::abs(harmonic_moment_residual(prolate, mp, {0, 0})) < 1e-13 * mp.volume);
  CHECK(std::abs(harmonic_moment_residual(prolate, mp, {2, 0})) > 1e-3 * degree_scale(prolate, mp, 2));

  const auto all = harmonic_moment_residuals(prolate, mp, 4);
  REQUIRE(all.size() == 25u);
  CHECK(std::abs(all[harmonic_offset(2, 0)] - harmonic_moment_residual(prolate, mp, {2, 0})) < 1e-12 * std::abs(all[harmonic_offset(2, 0)]));
  CHECK(degree_scale(prolate, mp, 2) == doctest::Approx(mp.area * 8.0));
}

TEST_CASE("rotational divergence identity") {
  const auto sphere = build_grid(StarSurface::sphere(1.0), 64, 128, 16);
  CHECK(rotational_identity_residual(sphere, {2, 1}, Vec3::UnitZ()) < 1e-8);
  const auto prolate = build_grid(test::prolate(), 64, 128, 16);
  CHECK(rotational_identity_residual(prolate, {2, 1}, Vec3::UnitX()) < 1e-6);
  CHECK(rotational_identity_residual(prolate, {0, 0}, Vec3(0.6, 0.8, 0.0)) < 1e-14);
  const auto bumpy = build_grid(test::tesseral(0.2), 64, 128, 16);
  const auto mb = surface_measures(bumpy);
  for (int n = 1; n <= 4; ++n)
    for (int m = -n; m <= n; ++m)
      CHECK(rotational_identity_residual(bumpy, {n, m}, Vec3(1, 2, 2) / 3.0) < 1e-8 * degree_scale(bumpy, mb, n));
  CHECK_THROWS_AS(rotational_identity_residual(bumpy, {1, 0}, Vec3(1, 1, 0)), DomainError);
}

TEST_CASE("eq20 defect on spheres") {
  const auto grid = build_grid(StarSurface::sphere(1.0), 64, 128, 16);
  const auto ms = surface_measures(grid);
  const auto table = moment_table(grid, 8);
  for (int n = 1; n <= 8; ++n)
    for (int m = -n; m <= n; ++m) {
      CHECK(std::abs(eq20_defect(table, ms, {n, m})) / degree_scale(grid, ms, n) < 1e-9);
      CHECK(table.a(n, m).norm() / degree_scale(grid, ms, n) < 1e-8);
    }
  CHECK_THROWS_AS(eq20_defect(table, ms, {0, 0}), DomainError);
  CHECK_THROWS_AS(eq20_defect(table, ms, {9, 0}), DomainError);
}

TEST_CASE("eq20 defect for m = 0 is a_{n0,3}") {
  const auto grid = build_grid(StarSurface::ellipsoid(1.0, 1.2, 1.5), 32, 64, 4);
  const auto ms = surface_measures(grid);
  const auto table = moment_table(grid, 4);
  for (int n = 1; n <= 4; ++n) CHECK(eq20_defect(table, ms, {n, 0}) == table.a(n, 0)[2]);
}

TEST_CASE("eq20 defect vanishes on axisymmetric surfaces and not otherwise") {
  const auto prolate = build_grid(test::prolate(), 64, 128, 16);
  const auto mp = surface_measures(prolate);
  const auto tp = moment_table(prolate, 4);
  const auto tri = build_grid(StarSurface::ellipsoid(1.0, 1.2, 1.5), 64, 128, 16);
  const auto mt = surface_measures(tri);
  const auto tt = moment_table(tri, 4);
  double axis = 0.0, general = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int m = -n; m <= n; ++m) {
      axis = std::max(axis, std::abs(eq20_defect(tp, mp, {n, m})) / degree_scale(prolate, mp, n));
      general = std::max(general, std::abs(eq20_defect(tt, mt, {n, m})) / degree_scale(tri, mt, n));
    }
  CHECK(axis < 1e-12);
  CHECK(general > 1e-3);
}

TEST_CASE("eq20 defect equals -i m times the conjugate-order moment residual") {
  const auto grid = build_grid(test::tesseral(0.1).rotated(
                                   Eigen::AngleAxisd(0.4, Vec3(1, 1, 0).normalized()).toRotationMatrix()),
                               64, 128, 16);
  const auto ms = surface_measures(grid);
  const auto table = moment_table(grid, 5);
  for (int n = 1; n <= 5; ++n)
    for (int m = -n; m <= n; ++m) {
      const Complex expected = Complex(0.0, -m) * harmonic_moment_residual(grid, ms, {n, -m});
      CHECK(std::abs(eq20_defect(table, ms, {n, m}) - expected) / degree_scale(grid, ms, n) < 1e-9);
    }
}
