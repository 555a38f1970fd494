#include "hmsa/moments.hpp"

#include <cmath>

#include "hmsa/errors.hpp"

namespace hmsa {
namespace {

// Volume nodes are stored n_rho per surface node, in surface-node order.
std::size_t radial_count(const QuadratureGrid& grid) {
  return static_cast<std::size_t>(grid.resolution().n_rho);
}

void fill_powers(double r, int max_degree, std::vector<double>& powers) {
  powers.resize(max_degree + 1);
  powers[0] = 1.0;
  for (int n = 1; n <= max_degree; ++n) powers[n] = powers[n - 1] * r;
}

}  // namespace

MomentTable::MomentTable(int max_degree)
    : max_degree_(max_degree),
      c_(harmonic_count(max_degree), Complex(0.0)),
      a_(harmonic_count(max_degree), CVec3::Zero()) {
  if (max_degree < 0) throw DomainError("moment table degree must be non-negative");
}

double MomentTable::c_degree_power(int n) const {
  double sum = 0.0;
  for (int m = -n; m <= n; ++m) sum += std::norm(c(n, m));
  return sum;
}

double MomentTable::a_degree_power(int n) const {
  double sum = 0.0;
  for (int m = -n; m <= n; ++m) sum += a(n, m).squaredNorm();
  return sum;
}

MomentTable moment_table(const QuadratureGrid& grid, int max_degree) {
  MomentTable table(max_degree);
  std::vector<double> powers;
  for (const SurfaceNode& node : grid.surface()) {
    const HarmonicTable y(max_degree, node.angle);
    fill_powers(node.position.norm(), max_degree, powers);
    const Vec3 torque = node.position.cross(node.normal);
    for (int n = 0; n <= max_degree; ++n) {
      const double radial = powers[n] * node.weight;
      for (int m = -n; m <= n; ++m) {
        const Complex weight = radial * std::conj(y.y(n, m));
        table.c(n, m) += weight;
        table.a(n, m) += weight * torque.cast<Complex>();
      }
    }
  }
  return table;
}

std::vector<Complex> harmonic_moment_residuals(const QuadratureGrid& grid,
                                               const SurfaceMeasures& measures, int max_degree) {
  if (max_degree < 0) throw DomainError("moment residual degree must be non-negative");
  std::vector<Complex> residual(harmonic_count(max_degree), Complex(0.0));
  const std::size_t n_rho = radial_count(grid);
  std::vector<double> surface_powers;
  std::vector<double> volume_sum(max_degree + 1);
  std::vector<double> powers;
  for (std::size_t i = 0; i < grid.surface().size(); ++i) {
    const SurfaceNode& node = grid.surface()[i];
    const HarmonicTable y(max_degree, node.angle);
    fill_powers(node.position.norm(), max_degree, surface_powers);
    std::fill(volume_sum.begin(), volume_sum.end(), 0.0);
    for (std::size_t k = 0; k < n_rho; ++k) {
      const VolumeNode& v = grid.volume()[i * n_rho + k];
      fill_powers(v.position.norm(), max_degree, powers);
      for (int n = 0; n <= max_degree; ++n) volume_sum[n] += powers[n] * v.weight;
    }
    for (int n = 0; n <= max_degree; ++n) {
      const double radial = volume_sum[n] - measures.c * surface_powers[n] * node.weight;
      for (int m = -n; m <= n; ++m) residual[harmonic_offset(n, m)] += radial * y.y(n, m);
    }
  }
  return residual;
}

Complex harmonic_moment_residual(const QuadratureGrid& grid, const SurfaceMeasures& measures,
                                 const HarmonicIndex& idx) {
  const std::size_t n_rho = radial_count(grid);
  Complex volume_part = 0.0;
  Complex surface_part = 0.0;
  for (std::size_t i = 0; i < grid.surface().size(); ++i) {
    const SurfaceNode& node = grid.surface()[i];
    const Complex y = sph_harmonic(idx, node.angle);
    double radial = 0.0;
    for (std::size_t k = 0; k < n_rho; ++k) {
      const VolumeNode& v = grid.volume()[i * n_rho + k];
      radial += std::pow(v.position.norm(), idx.n) * v.weight;
    }
    volume_part += radial * y;
    surface_part += std::pow(node.position.norm(), idx.n) * node.weight * y;
  }
  return volume_part - measures.c * surface_part;
}

double rotational_identity_residual(const QuadratureGrid& grid, const HarmonicIndex& idx,
                                    const Vec3& alpha) {
  if (std::abs(alpha.norm() - 1.0) > 1e-12) throw DomainError("alpha must be a unit vector");
  const std::size_t n_rho = radial_count(grid);
  Complex volume_side = 0.0;
  Complex surface_side = 0.0;
  for (std::size_t i = 0; i < grid.surface().size(); ++i) {
    const SurfaceNode& node = grid.surface()[i];
    const AngularPoint& p = node.angle;
    const Complex y = sph_harmonic(idx, p);
    surface_side += std::pow(node.position.norm(), idx.n) * node.weight * y *
                    alpha.dot(node.position.cross(node.normal));
    if (idx.n == 0) continue;

    // grad h(r e_r) = r^{n-1} * (n Y e_r + dY/dtheta e_theta + dY/dphi / sin(theta) e_phi)
    const AngularGradient g = sph_harmonic_angular_gradient(idx, p);
    const CVec3 direction_part = frame_to_cartesian<Complex>(
        static_cast<double>(idx.n) * y, g.dtheta, g.dphi / p.sin_theta(), p);
    // alpha x x = r (alpha x e_r), so the integrand carries r^n overall
    // Eigen conjugates the left operand of dot(); keep the real vector there.
    const Complex angular = alpha.cross(p.e_r()).cast<Complex>().dot(direction_part);
    double radial = 0.0;
    for (std::size_t k = 0; k < n_rho; ++k) {
      const VolumeNode& v = grid.volume()[i * n_rho + k];
      radial += std::pow(v.position.norm(), idx.n) * v.weight;
    }
    volume_side += radial * angular;
  }
  return std::abs(volume_side - surface_side);
}

Complex eq20_defect(const MomentTable& moments, const SurfaceMeasures& measures,
                    const HarmonicIndex& idx) {
  if (idx.n < 1) throw DomainError("eq20 defect needs n >= 1; use the a_00 identity for n = 0");
  if (idx.n > moments.max_degree()) throw DomainError("moment table degree too small");
  return moments.a(idx.n, idx.m)[2] + Complex(0.0, idx.m) * measures.c * moments.c(idx.n, idx.m);
}

double degree_scale(const QuadratureGrid& grid, const SurfaceMeasures& measures, int n) {
  return measures.area * std::pow(grid.max_radius(), n + 1);
}

}  // namespace hmsa
