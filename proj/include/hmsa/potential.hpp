#pragma once

#include <span>
#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/moments.hpp"

namespace hmsa {

/// Point strictly outside the circumscribed sphere |y| = r_max.
class ExteriorPoint {
 public:
  /// Throws DivergenceRegionError unless |y| > max_radius.
  ExteriorPoint(const Vec3& y, double max_radius);

  const Vec3& position() const { return y_; }
  double norm() const { return norm_; }
  const AngularPoint& direction() const { return direction_; }

 private:
  Vec3 y_;
  double norm_;
  AngularPoint direction_;
};

/// w(y) = sum_i w_i / |s_i - y|.
double single_layer_direct(const QuadratureGrid& grid, const Vec3& y);

/// Truncated exterior expansion sum_{n<=degree} 4 pi/(2n+1) sum_m Y_nm(y^0) |y|^{-(n+1)} c_nm.
double single_layer_series(const MomentTable& moments, const ExteriorPoint& y, int degree);

/// Central-difference gradient of single_layer_direct, step 1e-5 |y|.
Vec3 single_layer_gradient(const QuadratureGrid& grid, const Vec3& y);

/// v(y) = sum_i (s_i x N_i) w_i / |s_i - y|.
Vec3 vector_boundary_potential(const QuadratureGrid& grid, const Vec3& y);

/// || int_S s x grad_s(1/|s-y|) ds - grad_y w(y) x y ||; a pure discretization error.
double eq11_identity_residual(const QuadratureGrid& grid, const Vec3& y);

/// v(y) - c grad_y w(y) x y.
Vec3 eq10_defect(const QuadratureGrid& grid, const SurfaceMeasures& measures,
                 const ExteriorPoint& y);

/// max over points of |sum_j v_j / (4 pi |x - x_j|) - |D| / (4 pi |x|)|.
/// Points must lie outside the circumscribed sphere.
double volume_potential_defect(const QuadratureGrid& grid, std::span<const Vec3> test_points);

/// Cube vertices, edge midpoints and face centres projected to |x| = radius (26 points).
std::vector<Vec3> spherical_design_26(double radius);

}  // namespace hmsa
