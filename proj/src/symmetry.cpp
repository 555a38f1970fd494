#include "hmsa/symmetry.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hmsa/errors.hpp"
#include "hmsa/harmonics.hpp"
#include "hmsa/parallel.hpp"
#include "hmsa/potential.hpp"
#include "hmsa/quadrature.hpp"

namespace hmsa {
namespace {

void check_f_order(int n, int m) {
  if (m < 1 || m > n - 1) {
    throw DomainError("f_j system needs 1 <= m <= n-1, got n=" + std::to_string(n) +
                      " m=" + std::to_string(m));
  }
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double count = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

// f_2 and f_3 are differences -s P' - k z/s P of two terms that cancel to
// O(s^2) near the endpoints; scale holds the term sizes so that results at
// roundoff level can be recognised as zero.
struct FunctionTerms {
  double value[3];
  double scale[3];
};

FunctionTerms f_terms(int n, int m, double z) {
  const double s = std::sqrt((1.0 - z) * (1.0 + z));
  FunctionTerms out;
  out.value[0] = assoc_legendre(n, m, z);
  out.scale[0] = std::abs(out.value[0]);
  for (int j = 1; j <= 2; ++j) {
    const int k = j == 1 ? m - 1 : m + 1;
    const double a = -s * assoc_legendre_derivative(n, k, z);
    const double b = -k * z / s * assoc_legendre(n, k, z);
    out.value[j] = a + b;
    out.scale[j] = std::abs(a) + std::abs(b);
  }
  return out;
}

}  // namespace

double tangency_defect(const QuadratureGrid& grid) {
  double area = 0.0;
  double mean_radius = 0.0;
  double sum = 0.0;
  for (const SurfaceNode& node : grid.surface()) {
    area += node.weight;
    mean_radius += node.position.norm() * node.weight;
    sum += node.position.cross(node.normal).squaredNorm() * node.weight;
  }
  mean_radius /= area;
  return std::sqrt(sum / area) / mean_radius;
}

SphereDecision sphere_decision(double tangency, const RadialStats& radial, double tol) {
  return {tangency < tol && radial.relative_std < tol, radial.mean};
}

FunctionTriple f_functions(int n, int m, double z) {
  check_f_order(n, m);
  if (!(z > -1.0 && z < 1.0)) throw DomainError("f_j evaluated at an endpoint of [-1, 1]");
  const FunctionTerms t = f_terms(n, m, z);
  return {t.value[0], t.value[1], t.value[2]};
}

GramSummary gram_summary(const std::array<std::function<double(double)>, 3>& functions, int n_quad) {
  const GaussRule rule = gauss_legendre(n_quad);
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    Eigen::Vector3d v;
    for (int j = 0; j < 3; ++j) v[j] = functions[j](rule.nodes[q]);
    gram += rule.weights[q] * v * v.transpose();
  }
  if (!gram.allFinite()) throw NumericalError("Gram quadrature produced non-finite entries");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(gram, Eigen::EigenvaluesOnly);
  // Gram matrices are positive semidefinite; negative eigenvalues are roundoff
  const Eigen::Vector3d lambda = eig.eigenvalues().cwiseMax(0.0);
  GramSummary out;
  out.gram = gram;
  out.min_eigenvalue = lambda[0];
  out.max_eigenvalue = lambda[2];
  out.determinant = lambda.prod();
  out.eigenvalue_ratio = lambda[2] > 0.0 ? lambda[0] / lambda[2] : 0.0;
  out.independent = out.eigenvalue_ratio > kIndependenceRatio;
  return out;
}

IndependenceRecord gram_independence(int n, int m, int n_quad) {
  check_f_order(n, m);
  if (n_quad < n + 2) {
    throw DomainError("increase n_quad: at least n + 2 nodes are needed for degree " +
                      std::to_string(n));
  }
  const std::array<std::function<double(double)>, 3> f = {
      [n, m](double z) { return f_functions(n, m, z).f1; },
      [n, m](double z) { return f_functions(n, m, z).f2; },
      [n, m](double z) { return f_functions(n, m, z).f3; },
  };
  return {n, m, gram_summary(f, n_quad), asymptotic_exponent_check(n, m)};
}

std::array<double, 3> asymptotic_exponent_check(int n, int m) {
  check_f_order(n, m);
  std::array<std::vector<double>, 3> xs, ys;
  for (int k = 4; k <= 8; ++k) {
    const double gap = std::pow(10.0, -k);
    const FunctionTerms f = f_terms(n, m, 1.0 - gap);
    for (int j = 0; j < 3; ++j) {
      const double a = std::abs(f.value[j]);
      const double noise = 64.0 * std::numeric_limits<double>::epsilon() * f.scale[j];
      if (a > noise && std::isfinite(a)) {
        xs[j].push_back(std::log(gap));
        ys[j].push_back(std::log(a));
      }
    }
  }
  return {slope_fit(xs[0], ys[0]), slope_fit(xs[1], ys[1]), slope_fit(xs[2], ys[2])};
}

double eq10_shell_norm(const QuadratureGrid& grid, const SurfaceMeasures& measures, double radius,
                       int n_theta, int n_phi) {
  const GaussRule rule = gauss_legendre(n_theta);
  const std::size_t count = static_cast<std::size_t>(n_theta) * n_phi;
  std::vector<double> squared(count);
  parallel_for(count, [&](std::size_t k) {
    const int i = static_cast<int>(k) / n_phi;
    const int j = static_cast<int>(k) % n_phi;
    const AngularPoint p =
        AngularPoint::from_angles(std::acos(rule.nodes[i]), 2.0 * std::numbers::pi * j / n_phi);
    const ExteriorPoint y(radius * p.unit(), grid.max_radius());
    squared[k] = eq10_defect(grid, measures, y).squaredNorm();
  });
  double mean = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    mean += squared[k] * rule.weights[k / n_phi] * (2.0 * std::numbers::pi / n_phi);
  }
  mean /= 4.0 * std::numbers::pi;
  const double r_max = grid.max_radius();
  return std::sqrt(mean) * radius * radius / (measures.area * r_max * r_max);
}

DefectReport defect_report(const StarSurface& surface, const AnalysisConfig& config) {
  const QuadratureGrid grid = build_grid(surface, config.resolution);
  const SurfaceMeasures measures = surface_measures(grid);
  const int degree = config.moment_degree;

  DefectReport report{.measures = measures,
                      .max_radius = grid.max_radius(),
                      .radial = radial_stats(grid),
                      .tangency_defect = tangency_defect(grid),
                      .moment_residual_norm = 0.0,
                      .moment_residual_by_degree = {},
                      .eq20_defect_norm = 0.0,
                      .eq10_defect_norm = 0.0,
                      .torsion_residual = 0.0,
                      .torsion = {},
                      .is_sphere = false,
                      .radius_estimate = 0.0,
                      .config = config,
                      .moments = moment_table(grid, degree)};

  const std::vector<Complex> rho = harmonic_moment_residuals(grid, measures, degree);
  for (int n = 0; n <= degree; ++n) {
    double power = 0.0;
    double eq20_power = 0.0;
    for (int m = -n; m <= n; ++m) {
      power += std::norm(rho[harmonic_offset(n, m)]);
      if (n >= 1) eq20_power += std::norm(eq20_defect(report.moments, measures, HarmonicIndex(n, m)));
    }
    const double scale = degree_scale(grid, measures, n);
    report.moment_residual_by_degree.push_back(std::sqrt(power) / scale);
    report.moment_residual_norm =
        std::max(report.moment_residual_norm, report.moment_residual_by_degree.back());
    report.eq20_defect_norm = std::max(report.eq20_defect_norm, std::sqrt(eq20_power) / scale);
  }

  for (const double factor : {2.0, 4.0}) {
    report.eq10_defect_norm =
        std::max(report.eq10_defect_norm,
                 eq10_shell_norm(grid, measures, factor * grid.max_radius(), config.shell_theta,
                                 config.shell_phi));
  }

  const TorsionSolution torsion = solve_torsion(grid, config.basis_degree);
  const std::vector<double> u_n = normal_derivative(torsion, grid);
  double flux = 0.0;
  double deviation = 0.0;
  for (std::size_t i = 0; i < u_n.size(); ++i) {
    const double w = grid.surface()[i].weight;
    flux += u_n[i] * w;
    deviation += (u_n[i] - measures.c) * (u_n[i] - measures.c) * w;
  }
  report.torsion_residual = std::sqrt(deviation / measures.area) / measures.c;
  report.torsion = {torsion.degree, torsion.boundary_misfit, torsion.condition,
                    report.torsion_residual, std::abs(flux - measures.volume) / measures.volume};

  const SphereDecision decision = sphere_decision(report.tangency_defect, report.radial, config.tol);
  report.is_sphere = decision.is_sphere;
  report.radius_estimate = decision.radius;
  return report;
}

}  // namespace hmsa
