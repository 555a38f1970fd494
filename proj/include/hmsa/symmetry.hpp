#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <vector>

#include "hmsa/geometry.hpp"
#include "hmsa/moments.hpp"
#include "hmsa/torsion.hpp"

namespace hmsa {

/// (sum_i ||s_i x N_i||^2 w_i / |S|)^{1/2} / r_mean. Zero exactly on centred spheres.
double tangency_defect(const QuadratureGrid& grid);

struct SphereDecision {
  bool is_sphere;
  double radius;  // area-weighted mean of |s|
};

/// Sphere iff tangency_defect < tol and the relative radial spread < tol.
SphereDecision sphere_decision(double tangency, const RadialStats& radial, double tol);

struct FunctionTriple {
  double f1;
  double f2;
  double f3;
};

/// f_1 = P_{n,m}, f_2 = -s P'_{n,m-1} - (m-1) z/s P_{n,m-1},
/// f_3 = -s P'_{n,m+1} - (m+1) z/s P_{n,m+1}, s = (1 - z^2)^{1/2}; 1 <= m <= n-1, |z| < 1.
FunctionTriple f_functions(int n, int m, double z);

struct GramSummary {
  Eigen::Matrix3d gram;
  double determinant;
  double min_eigenvalue;
  double max_eigenvalue;
  /// min / max eigenvalue; the system counts as independent when this exceeds 1e-8.
  double eigenvalue_ratio;
  bool independent;
};

inline constexpr double kIndependenceRatio = 1e-8;

/// Gram matrix of three functions on (-1, 1) under an n_quad-point Gauss-Legendre rule.
GramSummary gram_summary(const std::array<std::function<double(double)>, 3>& functions, int n_quad);

struct IndependenceRecord {
  int n;
  int m;
  GramSummary gram;
  /// Fitted exponents of |f_j| against |1 - z| near z = 1.
  std::array<double, 3> exponents;
};

IndependenceRecord gram_independence(int n, int m, int n_quad);

/// Log-log slopes of |f_j| vs |1 - z| on z = 1 - 10^{-k}, k = 4..8. Points where
/// |f_j| is at the roundoff level of its cancelling terms are dropped; with fewer
/// than two left the slope is NaN (f_3 vanishes identically for m = n - 1).
std::array<double, 3> asymptotic_exponent_check(int n, int m);

struct AnalysisConfig {
  GridResolution resolution{64, 128, 16};
  int moment_degree = 8;
  int basis_degree = 10;
  double tol = 1e-6;
  /// Quadrature on each exterior shell used for the eq10 defect.
  int shell_theta = 16;
  int shell_phi = 32;
};

struct TorsionSummary {
  int degree;
  double boundary_misfit;
  double condition;
  double residual;
  /// |sum u_N w - |D|| / |D|.
  double flux_error;
};

struct DefectReport {
  SurfaceMeasures measures;
  double max_radius;
  RadialStats radial;
  double tangency_defect;
  /// max over n of (sum_m |rho_nm|^2)^{1/2} / (|S| r_max^{n+1}).
  double moment_residual_norm;
  std::vector<double> moment_residual_by_degree;
  /// max over 1 <= n of (sum_m |eq20_nm|^2)^{1/2} / (|S| r_max^{n+1}).
  double eq20_defect_norm;
  /// max over the shells |y| = 2 r_max, 4 r_max of the RMS of |eq10 defect| |y|^2 / (|S| r_max^2).
  double eq10_defect_norm;
  double torsion_residual;
  TorsionSummary torsion;
  bool is_sphere;
  double radius_estimate;
  AnalysisConfig config;
  MomentTable moments;
};

/// Root-mean-square of |eq10_defect(y)| over the sphere |y| = radius, scaled by
/// radius^2 / (|S| r_max^2).
double eq10_shell_norm(const QuadratureGrid& grid, const SurfaceMeasures& measures, double radius,
                       int n_theta, int n_phi);

DefectReport defect_report(const StarSurface& surface, const AnalysisConfig& config);

}  // namespace hmsa
