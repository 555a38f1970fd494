#pragma once

#include <complex>
#include <vector>

#include "hmsa/frame.hpp"

namespace hmsa {

/// Degree/order pair (n, m) with n >= 0 and |m| <= n.
struct HarmonicIndex {
  int n = 0;
  int m = 0;

  HarmonicIndex() = default;
  HarmonicIndex(int degree, int order);

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;
};

/// Number of indices (n, m) with n <= max_degree, i.e. (N+1)^2.
constexpr int harmonic_count(int max_degree) { return (max_degree + 1) * (max_degree + 1); }
/// Position of (n, m) in the flat ordering n-major, m ascending from -n.
constexpr int harmonic_offset(int n, int m) { return n * n + n + m; }

// Associated Legendre functions use the real convention
// P_{n,m}(z) = (1 - z^2)^{m/2} d^m P_n / dz^m, without the (-1)^m phase.

double assoc_legendre(int n, int m, double z);

/// d/dz P_{n,m}(z) for |z| < 1.
double assoc_legendre_derivative(int n, int m, double z);

/// gamma_{n,|m|} = [(2n+1)(n-|m|)! / (4 pi (n+|m|)!)]^{1/2}, evaluated in log space.
double normalization(int n, int m);

/// Y_nm = gamma_{n|m|} P_{n,|m|}(cos theta) e^{i m phi}; Y_{n,-m} = conj(Y_{n,m}).
Complex sph_harmonic(const HarmonicIndex& idx, const AngularPoint& p);

struct AngularGradient {
  Complex dtheta;
  Complex dphi;
};

/// (d/dtheta Y_nm, d/dphi Y_nm); throws PoleError at theta = 0 or pi.
AngularGradient sph_harmonic_angular_gradient(const HarmonicIndex& idx, const AngularPoint& p);

/// b(n,m) = (n+m)! / (2^{m/2} m! (n-m)!), the z -> 1 coefficient of P_{n,m}.
double leading_coeff(int n, int m);

/// All P_{n,m}(z), 0 <= m <= n <= max_degree, from the stable recurrence in n.
class LegendreTable {
 public:
  LegendreTable(int max_degree, double z);
  /// s = (1 - z^2)^{1/2} supplied by the caller, e.g. sin(theta) near the poles.
  LegendreTable(int max_degree, double z, double s);

  int max_degree() const { return max_degree_; }
  /// P_{n,m}(z); zero for m > n.
  double operator()(int n, int m) const;

 private:
  int max_degree_;
  // row n holds orders 0..n+1 so that the m+1 neighbour is always addressable
  std::vector<double> values_;
};

/// Y_nm and its angular derivatives for all n <= max_degree at one point.
class HarmonicTable {
 public:
  /// With with_derivatives the point must be off the poles.
  HarmonicTable(int max_degree, const AngularPoint& p, bool with_derivatives = false);

  int max_degree() const { return max_degree_; }
  const AngularPoint& point() const { return point_; }

  Complex y(int n, int m) const { return y_[harmonic_offset(n, m)]; }
  Complex dtheta(int n, int m) const { return dtheta_[harmonic_offset(n, m)]; }
  Complex dphi(int n, int m) const { return Complex(0.0, m) * y(n, m); }

 private:
  int max_degree_;
  AngularPoint point_;
  std::vector<Complex> y_;
  std::vector<Complex> dtheta_;
};

/// Solid harmonic |x|^n Y_nm(x / |x|); value 0 at the origin for n > 0.
Complex solid_harmonic(const HarmonicIndex& idx, const Vec3& x);

/// Gradient of |x|^n Y_nm(x^0) from the angular derivatives and the spherical
/// frame conversion. Requires x off the polar axis.
CVec3 solid_harmonic_gradient(const HarmonicIndex& idx, const Vec3& x);

/// Same gradient from the Cartesian ladder relations of regular solid
/// harmonics; valid everywhere, including the polar axis.
CVec3 solid_harmonic_gradient_cartesian(const HarmonicIndex& idx, const Vec3& x);

}  // namespace hmsa
