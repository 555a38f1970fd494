#include "hmsa/verify.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "hmsa/errors.hpp"
#include "hmsa/harmonics.hpp"
#include "hmsa/moments.hpp"
#include "hmsa/potential.hpp"
#include "hmsa/quadrature.hpp"
#include "hmsa/report_io.hpp"
#include "hmsa/symmetry.hpp"
#include "hmsa/torsion.hpp"

namespace hmsa {
namespace {

CheckResult below(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value < bound};
}

// A check whose evaluation may be impossible at the requested resolution
// (too few nodes, evaluation points too close); that counts as a failure.
template <typename Fn>
CheckResult attempt(std::string name, double bound, Fn&& value) {
  try {
    return below(std::move(name), value(), bound);
  } catch (const NumericalError&) {
  } catch (const DomainError&) {
  }
  return {std::move(name), std::numeric_limits<double>::infinity(), bound, false};
}

CheckResult above(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value > bound};
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace

std::vector<CorpusSurface> standard_corpus() {
  std::vector<CorpusSurface> corpus;
  for (const double r : {0.5, 1.0, 3.0}) {
    const nlohmann::json spec = {{"kind", "sphere"}, {"radius", r}};
    corpus.push_back({"sphere R=" + format_number(r), spec, surface_from_json(spec), true});
  }
  const double axes[3][3] = {{1, 1, 1.05}, {1, 1, 2}, {1, 1.2, 1.5}};
  for (const auto& a : axes) {
    const nlohmann::json spec = {{"kind", "ellipsoid"}, {"axes", {a[0], a[1], a[2]}}};
    corpus.push_back({"ellipsoid (" + format_number(a[0]) + "," + format_number(a[1]) + "," +
                          format_number(a[2]) + ")",
                      spec, surface_from_json(spec), false});
  }
  const int modes[2][2] = {{2, 0}, {3, 2}};
  for (const auto& mode : modes) {
    for (const double eps : {0.01, 0.05, 0.1, 0.2}) {
      const nlohmann::json spec = {
          {"kind", "perturbed_sphere"},
          {"base_radius", 1.0},
          {"modes", {{{"n", mode[0]}, {"m", mode[1]}, {"eps", eps}, {"part", "re"}}}}};
      corpus.push_back({"perturbed (" + std::to_string(mode[0]) + "," + std::to_string(mode[1]) +
                            ", eps=" + format_number(eps) + ")",
                        spec, surface_from_json(spec), false});
    }
  }
  return corpus;
}

double explicit_assoc_legendre(int n, int m, double z) {
  // (z^2 - 1)^n = sum_k C(n,k) (-1)^{n-k} z^{2k}; differentiate n + m times.
  const int order = n + m;
  double poly = 0.0;
  for (int k = 0; k <= n; ++k) {
    const int power = 2 * k - order;
    if (power < 0) continue;
    const double coeff = binomial(n, k) * ((n - k) % 2 ? -1.0 : 1.0) * factorial(2 * k) /
                         factorial(power);
    poly += coeff * std::pow(z, power);
  }
  poly /= std::pow(2.0, n) * factorial(n);
  return std::pow(std::max(0.0, 1.0 - z * z), 0.5 * m) * poly;
}

std::vector<CheckResult> verify_harmonics() {
  std::vector<CheckResult> out;

  // orthonormality on a 64 x 128 Gauss-Legendre x uniform grid
  {
    constexpr int kMax = 10;
    const GaussRule rule = gauss_legendre(64);
    constexpr int n_phi = 128;
    const int count = harmonic_count(kMax);
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(count, count);
    for (int i = 0; i < 64; ++i) {
      for (int j = 0; j < n_phi; ++j) {
        const AngularPoint p =
            AngularPoint::from_angles(std::acos(rule.nodes[i]), 2.0 * std::numbers::pi * j / n_phi);
        const HarmonicTable y(kMax, p);
        Eigen::VectorXcd v(count);
        for (int n = 0; n <= kMax; ++n) {
          for (int m = -n; m <= n; ++m) v[harmonic_offset(n, m)] = y.y(n, m);
        }
        gram += (rule.weights[i] * 2.0 * std::numbers::pi / n_phi) * v * v.adjoint();
      }
    }
    const double err = (gram - Eigen::MatrixXcd::Identity(count, count)).cwiseAbs().maxCoeff();
    out.push_back(below("orthonormality of Y_nm, n <= 10 (64x128)", err, 1e-10));
  }

  {
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
      for (int m = 0; m <= n; ++m) {
        for (int k = 0; k <= 100; ++k) {
          const double z = -1.0 + 0.02 * k;
          const double exact = explicit_assoc_legendre(n, m, z);
          worst = std::max(worst, std::abs(assoc_legendre(n, m, z) - exact) / std::max(1.0, std::abs(exact)));
        }
      }
    }
    out.push_back(below("recurrence vs Rodrigues, n <= 6 (relative to max(1, |P|))", worst, 1e-12));
  }

  {
    double worst = 0.0;
    const double gap = 1e-8;
    for (int n = 1; n <= 10; ++n) {
      for (int m = 1; m <= n; ++m) {
        const double ratio = std::abs(assoc_legendre(n, m, 1.0 - gap)) / std::pow(gap, 0.5 * m);
        worst = std::max(worst, std::abs(ratio / leading_coeff(n, m) - 1.0));
      }
    }
    out.push_back(below("z -> 1 asymptotics |P_nm| / |1-z|^{m/2} vs b(n,m)", worst, 1e-2));
  }

  {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double worst = 0.0;
    constexpr double h = 1e-4;
    for (int sample = 0; sample < 20; ++sample) {
      Vec3 x;
      do {
        x = Vec3(coord(rng), coord(rng), coord(rng));
      } while (x.norm() < 0.3 || x.norm() > 1.0);
      for (int n = 0; n <= 5; ++n) {
        for (int m = -n; m <= n; ++m) {
          const HarmonicIndex idx(n, m);
          Complex lap = -6.0 * solid_harmonic(idx, x);
          for (int k = 0; k < 3; ++k) {
            Vec3 e = Vec3::Zero();
            e[k] = h;
            lap += solid_harmonic(idx, x + e) + solid_harmonic(idx, x - e);
          }
          lap /= h * h;
          const double scale =
              normalization(n, 0) * (n * (n + 1) + 1.0) * std::pow(x.norm(), std::max(n - 2, 0));
          worst = std::max(worst, std::abs(lap) / scale);
        }
      }
    }
    out.push_back(below("harmonicity of |x|^n Y_nm, n <= 5 (finite differences)", worst, 1e-6));
  }
  return out;
}

std::vector<CheckResult> verify_identities(const GridResolution& resolution, int basis_degree) {
  std::vector<CheckResult> out;
  for (const CorpusSurface& entry : standard_corpus()) {
    const QuadratureGrid grid = build_grid(entry.surface, resolution);
    const SurfaceMeasures ms = surface_measures(grid);
    const double r_max = grid.max_radius();
    const std::string tag = " [" + entry.name + "]";

    double flux_sn = 0.0;
    Vec3 flux_n = Vec3::Zero();
    for (const SurfaceNode& node : grid.surface()) {
      flux_sn += node.position.dot(node.normal) * node.weight / 3.0;
      flux_n += node.normal * node.weight;
    }
    out.push_back(below("divergence theorem (1/3) int s.N = |D|" + tag,
                        std::abs(flux_sn - ms.volume) / ms.volume, 1e-8));
    out.push_back(below("closed-surface flux int N = 0" + tag, flux_n.norm() / ms.area, 1e-8));

    const MomentTable table = moment_table(grid, 0);
    out.push_back(below("a_00 = 0" + tag, table.a(0, 0).norm() / (ms.area * r_max), 1e-9));

    out.push_back(attempt("exterior rotation identity (eq11)" + tag, 1e-6, [&] {
      double eq11 = 0.0;
      for (const Vec3& y : spherical_design_26(2.0 * r_max)) {
        eq11 = std::max(eq11, eq11_identity_residual(grid, y) * y.squaredNorm() / (ms.area * r_max));
      }
      return eq11;
    }));

    const std::array<Vec3, 3> axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    double rotational = 0.0;
    for (int n = 0; n <= 4; ++n) {
      for (int m = -n; m <= n; ++m) {
        for (const Vec3& alpha : axes) {
          rotational = std::max(rotational, rotational_identity_residual(grid, HarmonicIndex(n, m), alpha) /
                                                degree_scale(grid, ms, n));
        }
      }
    }
    out.push_back(below("rotational divergence identity, n <= 4" + tag, rotational, 1e-6));

    out.push_back(attempt("torsion flux int u_N = |D|" + tag, 1e-7, [&] {
      const TorsionSolution sol = solve_torsion(grid, basis_degree);
      const std::vector<double> u_n = normal_derivative(sol, grid);
      double flux = 0.0;
      for (std::size_t i = 0; i < u_n.size(); ++i) flux += u_n[i] * grid.surface()[i].weight;
      return std::abs(flux - ms.volume) / ms.volume;
    }));
  }
  return out;
}

std::vector<CheckResult> verify_independence(int max_degree) {
  std::vector<CheckResult> out;
  for (int n = 2; n <= max_degree; ++n) {
    for (int m = 1; m <= n - 1; ++m) {
      const IndependenceRecord rec = gram_independence(n, m, 64);
      const std::string tag = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
      out.push_back(above("Gram eigenvalue ratio" + tag, rec.gram.eigenvalue_ratio, kIndependenceRatio));
      const double expected[3] = {0.5 * m, 0.5 * m, 0.5 * m + 1.0};
      double worst = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double err = std::abs(rec.exponents[j] - expected[j]);
        worst = std::isfinite(err) ? std::max(worst, err) : std::numeric_limits<double>::infinity();
      }
      out.push_back(below("f_j exponents vs (m/2, m/2, m/2+1)" + tag, worst, 0.02));
    }
  }
  return out;
}

}  // namespace hmsa
