#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hmsa/errors.hpp"
#include "hmsa/harmonics.hpp"
#include "hmsa/quadrature.hpp"
#include "support.hpp"

using namespace hmsa;
using std::numbers::pi;

namespace {

// Rodrigues: P_{n,m}(z) = (1-z^2)^{m/2} (2^n n!)^{-1} (d/dz)^{n+m} (z^2-1)^n,
// expanded as a polynomial in z with long double coefficients.
double rodrigues(int n, int m, double z) {
  std::vector<long double> coef(2 * n + 1, 0.0L);
  long double binom = 1.0L;
  for (int k = 0; k <= n; ++k) {
    coef[2 * k] = ((n - k) % 2 ? -1.0L : 1.0L) * binom;
    binom = binom * (n - k) / (k + 1);
  }
  for (int d = 0; d < n + m; ++d) {
    for (std::size_t j = 0; j + 1 < coef.size(); ++j) coef[j] = coef[j + 1] * (j + 1);
    coef.back() = 0.0L;
  }
  long double value = 0.0L;
  for (std::size_t j = coef.size(); j-- > 0;) value = value * z + coef[j];
  long double scale = 1.0L;
  for (int k = 1; k <= n; ++k) scale *= 2.0L * k;
  return static_cast<double>(value / scale) * std::pow(1.0 - z * z, 0.5 * m);
}

double gamma_oracle(int n, int m) {
  return std::sqrt((2 * n + 1) * std::tgamma(n - m + 1.0) / (4 * pi * std::tgamma(n + m + 1.0)));
}

}  // namespace

TEST_CASE("assoc_legendre reference values") {
  CHECK(assoc_legendre(0, 0, 0.3) == 1.0);
  CHECK(assoc_legendre(0, 0, -1.0) == 1.0);
  CHECK(assoc_legendre(1, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(assoc_legendre(2, 0, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(assoc_legendre(2, 1, 0.5) == doctest::Approx(1.5 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK(assoc_legendre(3, 3, 0.2) == doctest::Approx(15.0 * std::pow(0.96, 1.5)).epsilon(1e-14));
}

TEST_CASE("assoc_legendre has no Condon-Shortley phase") {
  for (int m = 1; m <= 6; ++m) CHECK(assoc_legendre(m, m, 0.4) > 0.0);
}

TEST_CASE("recurrence agrees with Rodrigues for n <= 6 on 101 points") {
  double worst = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= n; ++m)
      for (int k = 0; k <= 100; ++k) {
        const double z = -1.0 + 0.02 * k;
        const double exact = rodrigues(n, m, z);
        worst = std::max(worst, std::abs(assoc_legendre(n, m, z) - exact) / std::max(1.0, std::abs(exact)));
      }
  CHECK(worst < 1e-12);
}

TEST_CASE("assoc_legendre rejects out-of-range arguments") {
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.0), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, -1, 0.0), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.0000001), DomainError);
  CHECK_THROWS_AS(assoc_legendre(-1, 0, 0.0), DomainError);
}

TEST_CASE("assoc_legendre_derivative matches central differences") {
  const double h = 1e-6;
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= n; ++m)
      for (double z : {-0.9, -0.31, 0.0, 0.47, 0.88}) {
        const double fd = (assoc_legendre(n, m, z + h) - assoc_legendre(n, m, z - h)) / (2 * h);
        CHECK(assoc_legendre_derivative(n, m, z) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
  CHECK_THROWS_AS(assoc_legendre_derivative(2, 1, 1.0), DomainError);
}

TEST_CASE("normalization constants") {
  CHECK(normalization(0, 0) == doctest::Approx(1.0 / std::sqrt(4 * pi)).epsilon(1e-15));
  for (int n = 0; n <= 12; ++n)
    for (int m = -n; m <= n; ++m) {
      CHECK(normalization(n, m) > 0.0);
      CHECK(normalization(n, m) == doctest::Approx(gamma_oracle(n, std::abs(m))).epsilon(1e-12));
    }
  // log-space evaluation stays finite where the factorials overflow
  CHECK(std::isfinite(normalization(60, 55)));
  CHECK(normalization(60, 55) > 0.0);
}

TEST_CASE("sph_harmonic reference values") {
  const auto p = AngularPoint::from_angles(1.1, 2.3);
  CHECK(sph_harmonic({0, 0}, p).real() == doctest::Approx(0.2820948).epsilon(1e-7));
  CHECK(sph_harmonic({0, 0}, p).imag() == 0.0);
  const auto north = AngularPoint::from_angles(0.0, 0.0);
  CHECK(sph_harmonic({1, 0}, north).real() == doctest::Approx(0.4886025).epsilon(1e-7));
  const auto equator = AngularPoint::from_angles(pi / 2, 0.0);
  const Complex y11 = sph_harmonic({1, 1}, equator);
  CHECK(y11.real() == doctest::Approx(normalization(1, 1)).epsilon(1e-14));
  CHECK(std::abs(y11.imag()) < 1e-16);
}

TEST_CASE("conjugate symmetry Y_{n,-m} = conj(Y_nm)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.0, pi), ph(0.0, 2 * pi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = AngularPoint::from_angles(th(rng), ph(rng));
    for (int n = 0; n <= 8; ++n)
      for (int m = 1; m <= n; ++m)
        CHECK(std::abs(sph_harmonic({n, -m}, p) - std::conj(sph_harmonic({n, m}, p))) < 1e-15);
  }
}

TEST_CASE("HarmonicIndex validates") {
  CHECK_NOTHROW(HarmonicIndex(3, -3));
  CHECK_THROWS_AS(HarmonicIndex(3, 4), DomainError);
  CHECK_THROWS_AS(HarmonicIndex(-1, 0), DomainError);
  CHECK(harmonic_count(4) == 25);
  CHECK(harmonic_offset(0, 0) == 0);
  CHECK(harmonic_offset(2, -2) == 4);
  CHECK(harmonic_offset(4, 4) == 24);
}

TEST_CASE("orthonormality on a 64 x 128 grid") {
  const int nt = 64, np = 128, nmax = 10;
  const GaussRule rule = gauss_legendre(nt);
  std::vector<std::vector<Complex>> values;
  std::vector<double> weights;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) {
      const auto p = AngularPoint::from_angles(std::acos(rule.nodes[i]), 2 * pi * j / np);
      const HarmonicTable table(nmax, p);
      std::vector<Complex> row;
      for (int n = 0; n <= nmax; ++n)
        for (int m = -n; m <= n; ++m) row.push_back(table.y(n, m));
      values.push_back(std::move(row));
      weights.push_back(rule.weights[i] * 2 * pi / np);
    }
  const int count = harmonic_count(nmax);
  double worst = 0.0;
  for (int a = 0; a < count; ++a)
    for (int b = a; b < count; ++b) {
      Complex dot = 0.0;
      for (std::size_t k = 0; k < weights.size(); ++k) dot += values[k][a] * std::conj(values[k][b]) * weights[k];
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("HarmonicTable agrees with pointwise evaluation") {
  const auto p = AngularPoint::from_angles(0.7, 4.0);
  const HarmonicTable table(9, p, true);
  for (int n = 0; n <= 9; ++n)
    for (int m = -n; m <= n; ++m) {
      CHECK(std::abs(table.y(n, m) - sph_harmonic({n, m}, p)) < 1e-14);
      const auto g = sph_harmonic_angular_gradient({n, m}, p);
      CHECK(std::abs(table.dtheta(n, m) - g.dtheta) < 1e-13);
      CHECK(std::abs(table.dphi(n, m) - g.dphi) < 1e-13);
    }
  const LegendreTable legendre(9, 0.37);
  for (int n = 0; n <= 9; ++n)
    for (int m = 0; m <= n; ++m) CHECK(legendre(n, m) == doctest::Approx(assoc_legendre(n, m, 0.37)).epsilon(1e-14));
}

TEST_CASE("angular gradient") {
  const auto equator = AngularPoint::from_angles(pi / 2, 0.3);
  const auto g10 = sph_harmonic_angular_gradient({1, 0}, equator);
  CHECK(g10.dtheta.real() == doctest::Approx(-std::sqrt(3 / (4 * pi))).epsilon(1e-14));
  CHECK(g10.dphi == Complex(0.0, 0.0));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0.05, pi - 0.05), ph(0.0, 2 * pi);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const double t = th(rng), f = ph(rng);
    const auto p = AngularPoint::from_angles(t, f);
    for (int n = 0; n <= 6; ++n)
      for (int m = -n; m <= n; ++m) {
        const auto g = sph_harmonic_angular_gradient({n, m}, p);
        CHECK(std::abs(g.dphi - Complex(0.0, m) * sph_harmonic({n, m}, p)) < 1e-15);
        const Complex fd = (sph_harmonic({n, m}, AngularPoint::from_angles(t + h, f)) -
                            sph_harmonic({n, m}, AngularPoint::from_angles(t - h, f))) /
                           (2 * h);
        CHECK(std::abs(g.dtheta - fd) < 1e-7);
      }
  }
  for (int n = 0; n <= 5; ++n) CHECK(sph_harmonic_angular_gradient({n, 0}, equator).dphi == Complex(0.0, 0.0));
  CHECK_THROWS_AS(sph_harmonic_angular_gradient({2, 1}, AngularPoint::from_angles(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(sph_harmonic_angular_gradient({2, 1}, AngularPoint::from_angles(pi, 0.0)), PoleError);
}

TEST_CASE("leading coefficients") {
  for (int n = 0; n <= 10; ++n) CHECK(leading_coeff(n, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(leading_coeff(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(leading_coeff(2, 1) == doctest::Approx(3 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(leading_coeff(2, 3), DomainError);
}

TEST_CASE("z -> 1 asymptotics of P_nm within 1%") {
  const double d = 1e-8;
  for (int n = 1; n <= 10; ++n)
    for (int m = 1; m <= n; ++m) {
      const double ratio = std::abs(assoc_legendre(n, m, 1.0 - d)) / std::pow(d, 0.5 * m);
      CHECK(ratio == doctest::Approx(leading_coeff(n, m)).epsilon(0.01));
    }
}

TEST_CASE("solid harmonics are harmonic") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  const double h = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 x(u(rng), u(rng), u(rng));
    for (int n = 0; n <= 5; ++n)
      for (int m = -n; m <= n; ++m) {
        const HarmonicIndex idx(n, m);
        Complex lap = -6.0 * solid_harmonic(idx, x);
        for (int k = 0; k < 3; ++k) {
          const Vec3 e = Vec3::Unit(k) * h;
          lap += solid_harmonic(idx, x + e) + solid_harmonic(idx, x - e);
        }
        lap /= h * h;
        const double scale = std::max(1.0, std::abs(solid_harmonic(idx, x)) / (x.squaredNorm()));
        CHECK(std::abs(lap) / scale < 1e-6);
      }
  }
}

TEST_CASE("solid harmonic gradient: frame route, ladder route and differences agree") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const double h = 1e-6;
  for (int trial = 0; trial < 15; ++trial) {
    const Vec3 x(u(rng), u(rng), u(rng));
    for (int n = 0; n <= 7; ++n)
      for (int m = -n; m <= n; ++m) {
        const HarmonicIndex idx(n, m);
        const CVec3 frame = solid_harmonic_gradient(idx, x);
        const CVec3 ladder = solid_harmonic_gradient_cartesian(idx, x);
        CVec3 fd;
        for (int k = 0; k < 3; ++k) {
          const Vec3 e = Vec3::Unit(k) * h;
          fd[k] = (solid_harmonic(idx, x + e) - solid_harmonic(idx, x - e)) / (2 * h);
        }
        const double scale = std::max(1.0, ladder.norm());
        CHECK((frame - ladder).norm() / scale < 1e-12);
        CHECK((fd - ladder).norm() / scale < 1e-7);
      }
  }
}

TEST_CASE("ladder gradient is valid on the polar axis") {
  const Vec3 x(0.0, 0.0, 0.8);
  const double h = 1e-6;
  for (int n = 0; n <= 5; ++n)
    for (int m = -n; m <= n; ++m) {
      const HarmonicIndex idx(n, m);
      const CVec3 g = solid_harmonic_gradient_cartesian(idx, x);
      for (int k = 0; k < 3; ++k) {
        const Vec3 e = Vec3::Unit(k) * h;
        const Complex fd = (solid_harmonic(idx, x + e) - solid_harmonic(idx, x - e)) / (2 * h);
        CHECK(std::abs(g[k] - fd) < 1e-8);
      }
    }
  CHECK(solid_harmonic({3, 1}, Vec3::Zero()) == Complex(0.0, 0.0));
  CHECK(std::abs(solid_harmonic({0, 0}, Vec3::Zero()) - normalization(0, 0)) < 1e-16);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int count : {1, 2, 5, 16, 64}) {
    const GaussRule rule = gauss_legendre(count);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(count));
    for (int k = 0; k <= 2 * count - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < count; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
    for (int i = 1; i < count; ++i) CHECK(rule.nodes[i - 1] < rule.nodes[i]);
  }
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}
