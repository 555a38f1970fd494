#include "hmsa/potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hmsa/errors.hpp"

namespace hmsa {
namespace {

constexpr double kFiniteDifferenceStep = 1e-5;

void check_clearance(const QuadratureGrid& grid, double nearest) {
  if (nearest < 2.0 * grid.node_spacing()) {
    throw NearSingularityError("evaluation point within two node spacings of the surface");
  }
}

}  // namespace

ExteriorPoint::ExteriorPoint(const Vec3& y, double max_radius) : y_(y), norm_(y.norm()) {
  if (!(norm_ > max_radius)) {
    throw DivergenceRegionError("point is not outside the circumscribed sphere");
  }
  direction_ = AngularPoint::from_direction(y);
}

double single_layer_direct(const QuadratureGrid& grid, const Vec3& y) {
  double sum = 0.0;
  double nearest = std::numeric_limits<double>::infinity();
  for (const SurfaceNode& node : grid.surface()) {
    const double d = (node.position - y).norm();
    nearest = std::min(nearest, d);
    sum += node.weight / d;
  }
  check_clearance(grid, nearest);
  return sum;
}

double single_layer_series(const MomentTable& moments, const ExteriorPoint& y, int degree) {
  if (degree < 0 || degree > moments.max_degree()) {
    throw DomainError("series degree exceeds the moment table");
  }
  const HarmonicTable harmonics(degree, y.direction());
  Complex sum = 0.0;
  double radial = 1.0 / y.norm();
  for (int n = 0; n <= degree; ++n) {
    Complex shell = 0.0;
    for (int m = -n; m <= n; ++m) shell += harmonics.y(n, m) * moments.c(n, m);
    sum += 4.0 * std::numbers::pi / (2.0 * n + 1.0) * radial * shell;
    radial /= y.norm();
  }
  return sum.real();
}

Vec3 single_layer_gradient(const QuadratureGrid& grid, const Vec3& y) {
  const double h = kFiniteDifferenceStep * y.norm();
  Vec3 grad;
  for (int k = 0; k < 3; ++k) {
    Vec3 step = Vec3::Zero();
    step[k] = h;
    grad[k] = (single_layer_direct(grid, y + step) - single_layer_direct(grid, y - step)) / (2 * h);
  }
  return grad;
}

Vec3 vector_boundary_potential(const QuadratureGrid& grid, const Vec3& y) {
  Vec3 sum = Vec3::Zero();
  double nearest = std::numeric_limits<double>::infinity();
  for (const SurfaceNode& node : grid.surface()) {
    const double d = (node.position - y).norm();
    nearest = std::min(nearest, d);
    sum += node.position.cross(node.normal) * (node.weight / d);
  }
  check_clearance(grid, nearest);
  return sum;
}

double eq11_identity_residual(const QuadratureGrid& grid, const Vec3& y) {
  Vec3 lhs = Vec3::Zero();
  for (const SurfaceNode& node : grid.surface()) {
    const Vec3 diff = node.position - y;
    const double d = diff.norm();
    const Vec3 grad_s = -diff / (d * d * d);
    lhs += node.position.cross(grad_s) * node.weight;
  }
  const Vec3 rhs = single_layer_gradient(grid, y).cross(y);
  return (lhs - rhs).norm();
}

Vec3 eq10_defect(const QuadratureGrid& grid, const SurfaceMeasures& measures,
                 const ExteriorPoint& y) {
  const Vec3 v = vector_boundary_potential(grid, y.position());
  const Vec3 rotated_gradient = single_layer_gradient(grid, y.position()).cross(y.position());
  return v - measures.c * rotated_gradient;
}

double volume_potential_defect(const QuadratureGrid& grid, std::span<const Vec3> test_points) {
  double volume = 0.0;
  for (const VolumeNode& node : grid.volume()) volume += node.weight;
  const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
  double worst = 0.0;
  for (const Vec3& x : test_points) {
    if (!(x.norm() > grid.max_radius())) {
      throw DomainError("volume-potential test point not outside the circumscribed sphere");
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (const SurfaceNode& node : grid.surface()) nearest = std::min(nearest, (node.position - x).norm());
    check_clearance(grid, nearest);
    double potential = 0.0;
    for (const VolumeNode& node : grid.volume()) {
      potential += node.weight / (x - node.position).norm();
    }
    worst = std::max(worst, std::abs(inv4pi * potential - inv4pi * volume / x.norm()));
  }
  return worst;
}

std::vector<Vec3> spherical_design_26(double radius) {
  std::vector<Vec3> points;
  points.reserve(26);
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        points.push_back(Vec3(i, j, k).normalized() * radius);
      }
    }
  }
  return points;
}

}  // namespace hmsa
