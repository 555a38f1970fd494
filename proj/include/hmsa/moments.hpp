#pragma once

#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/harmonics.hpp"

namespace hmsa {

/// Spherical moments c_nm = int_S |s|^n conj(Y_nm(s^0)) ds and rotational
/// moment vectors a_nm = int_S (s x N) |s|^n conj(Y_nm(s^0)) ds, n <= max_degree.
class MomentTable {
 public:
  explicit MomentTable(int max_degree);

  int max_degree() const { return max_degree_; }
  const Complex& c(int n, int m) const { return c_[harmonic_offset(n, m)]; }
  const CVec3& a(int n, int m) const { return a_[harmonic_offset(n, m)]; }
  Complex& c(int n, int m) { return c_[harmonic_offset(n, m)]; }
  CVec3& a(int n, int m) { return a_[harmonic_offset(n, m)]; }

  /// sum over m of |c_nm|^2 (rotation invariant).
  double c_degree_power(int n) const;
  /// sum over m of ||a_nm||^2 (rotation invariant).
  double a_degree_power(int n) const;

 private:
  int max_degree_;
  std::vector<Complex> c_;
  std::vector<CVec3> a_;
};

MomentTable moment_table(const QuadratureGrid& grid, int max_degree);

/// rho_nm = int_D h dx - c int_S h ds for h = |x|^n Y_nm(x^0).
Complex harmonic_moment_residual(const QuadratureGrid& grid, const SurfaceMeasures& measures,
                                 const HarmonicIndex& idx);

/// All rho_nm with n <= max_degree, in harmonic_offset order.
std::vector<Complex> harmonic_moment_residuals(const QuadratureGrid& grid,
                                               const SurfaceMeasures& measures, int max_degree);

/// |int_D grad h . (alpha x x) dx - alpha . int_S (s x N) h ds| for h = |x|^n Y_nm.
/// Both integrals agree on every closed surface (divergence theorem).
double rotational_identity_residual(const QuadratureGrid& grid, const HarmonicIndex& idx,
                                    const Vec3& alpha);

/// a_{nm,3} + i m c c_nm; requires n >= 1.
Complex eq20_defect(const MomentTable& moments, const SurfaceMeasures& measures,
                    const HarmonicIndex& idx);

/// Dimensionless scale |S| r_max^{n+1} used to normalize degree-n residuals.
double degree_scale(const QuadratureGrid& grid, const SurfaceMeasures& measures, int n);

}  // namespace hmsa
