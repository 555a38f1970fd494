#include "hmsa/torsion.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "hmsa/errors.hpp"
#include "hmsa/parallel.hpp"

namespace hmsa {
namespace {

constexpr double kMaxCondition = 1e12;

// Real basis ordering: for each n, Re Y_n0, then (Re Y_nm, Im Y_nm) for m = 1..n.
int real_basis_size(int degree) { return harmonic_count(degree); }

// Gradient of r^n Y_nm at x = r e_r divided by r^{n-1}, for all (n, m) at one direction.
CVec3 direction_gradient(const HarmonicTable& table, int n, int m) {
  const AngularPoint& p = table.point();
  return frame_to_cartesian<Complex>(static_cast<double>(n) * table.y(n, m), table.dtheta(n, m),
                                     table.dphi(n, m) / p.sin_theta(), p);
}

}  // namespace

double TorsionSolution::value(const Vec3& x) const {
  const double r = x.norm();
  const AngularPoint p = r > 0.0 ? AngularPoint::from_direction(x) : AngularPoint::from_angles(0.0, 0.0);
  const HarmonicTable table(degree, p);
  Complex sum = 0.0;
  double radial = 1.0;
  for (int n = 0; n <= degree; ++n) {
    for (int m = -n; m <= n; ++m) sum += beta[harmonic_offset(n, m)] * radial * table.y(n, m);
    radial *= r / reference_radius;
  }
  return r * r / 6.0 + sum.real();
}

Vec3 TorsionSolution::gradient(const Vec3& x) const {
  const double r = x.norm();
  const HarmonicTable table(degree, AngularPoint::from_direction(x), true);
  CVec3 sum = CVec3::Zero();
  for (int n = 1; n <= degree; ++n) {
    const double scale = std::pow(r, n - 1) / std::pow(reference_radius, n);
    for (int m = -n; m <= n; ++m) {
      sum += beta[harmonic_offset(n, m)] * scale * direction_gradient(table, n, m);
    }
  }
  return x / 3.0 + Vec3(sum.real());
}

TorsionSolution solve_torsion(const QuadratureGrid& grid, int degree) {
  if (degree < 0) throw DomainError("basis degree must be non-negative");
  const int cols = real_basis_size(degree);
  const auto& nodes = grid.surface();
  const int rows = static_cast<int>(nodes.size());
  if (rows < 4 * cols) {
    throw DomainError("grid needs at least four surface nodes per basis function");
  }
  const double r0 = grid.max_radius();

  Eigen::MatrixXd system(rows, cols);
  Eigen::VectorXd rhs(rows);
  parallel_for(nodes.size(), [&](std::size_t i) {
    const SurfaceNode& node = nodes[i];
    const double sqrt_w = std::sqrt(node.weight);
    const double r = node.position.norm();
    const HarmonicTable table(degree, node.angle);
    double radial = 1.0;
    int col = 0;
    for (int n = 0; n <= degree; ++n) {
      system(i, col++) = sqrt_w * radial * table.y(n, 0).real();
      for (int m = 1; m <= n; ++m) {
        system(i, col++) = sqrt_w * radial * table.y(n, m).real();
        system(i, col++) = sqrt_w * radial * table.y(n, m).imag();
      }
      radial *= r / r0;
    }
    rhs[i] = -sqrt_w * r * r / 6.0;
  });

  Eigen::BDCSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double condition = sv[0] / sv[sv.size() - 1];
  if (!(condition <= kMaxCondition)) {
    throw IllConditionedError("torsion least-squares system is ill-conditioned (condition " +
                              std::to_string(condition) + ")");
  }
  svd.setThreshold(1e-12);
  const Eigen::VectorXd coeffs = svd.solve(rhs);

  TorsionSolution sol;
  sol.degree = degree;
  sol.reference_radius = r0;
  sol.condition = condition;
  sol.beta.assign(harmonic_count(degree), Complex(0.0));
  int col = 0;
  for (int n = 0; n <= degree; ++n) {
    sol.beta[harmonic_offset(n, 0)] = coeffs[col++];
    for (int m = 1; m <= n; ++m) {
      const double re = coeffs[col++];
      const double im = coeffs[col++];
      // a Re Y + b Im Y = (a - i b)/2 Y_m + (a + i b)/2 Y_{-m}
      sol.beta[harmonic_offset(n, m)] = Complex(0.5 * re, -0.5 * im);
      sol.beta[harmonic_offset(n, -m)] = Complex(0.5 * re, 0.5 * im);
    }
  }
  sol.boundary_misfit = (system * coeffs - rhs).norm();
  return sol;
}

std::vector<double> normal_derivative(const TorsionSolution& solution, const QuadratureGrid& grid) {
  const auto& nodes = grid.surface();
  std::vector<double> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    out[i] = solution.gradient(nodes[i].position).dot(nodes[i].normal);
  });
  return out;
}

double overdetermination_residual(const TorsionSolution& solution, const QuadratureGrid& grid,
                                  const SurfaceMeasures& measures) {
  const std::vector<double> u_n = normal_derivative(solution, grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < u_n.size(); ++i) {
    const double d = u_n[i] - measures.c;
    sum += d * d * grid.surface()[i].weight;
  }
  return std::sqrt(sum / measures.area) / measures.c;
}

}  // namespace hmsa
