#pragma once

#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/harmonics.hpp"

namespace hmsa {

/// u(x) = |x|^2 / 6 + sum_{n <= degree} beta_nm (|x| / R0)^n Y_nm(x^0), so Laplace(u) = 1.
struct TorsionSolution {
  int degree = 0;
  double reference_radius = 1.0;
  /// Complex coefficients in harmonic_offset order; beta_{n,-m} = conj(beta_{n,m}).
  std::vector<Complex> beta;
  /// sqrt(sum_i u(s_i)^2 w_i) after the fit.
  double boundary_misfit = 0.0;
  /// Ratio of extreme singular values of the weighted least-squares matrix.
  double condition = 1.0;

  double value(const Vec3& x) const;
  /// Analytic gradient; x must be off the polar axis.
  Vec3 gradient(const Vec3& x) const;
};

/// Weighted least-squares fit of u = 0 on S in the real basis Re/Im (|x|/R0)^n Y_nm.
/// Throws IllConditionedError when the condition indicator exceeds 1e12.
TorsionSolution solve_torsion(const QuadratureGrid& grid, int degree);

/// grad u . N at every surface node.
std::vector<double> normal_derivative(const TorsionSolution& solution, const QuadratureGrid& grid);

/// (sum_i (u_N - c)^2 w_i / |S|)^{1/2} / c.
double overdetermination_residual(const TorsionSolution& solution, const QuadratureGrid& grid,
                                  const SurfaceMeasures& measures);

}  // namespace hmsa
