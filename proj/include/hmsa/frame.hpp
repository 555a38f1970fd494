#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>

namespace hmsa {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Complex = std::complex<double>;

/// Point on the unit sphere in colatitude/azimuth form with cached cos(theta).
class AngularPoint {
 public:
  AngularPoint() = default;

  /// theta must lie in [0, pi]; phi is wrapped into [0, 2 pi).
  static AngularPoint from_angles(double theta, double phi);
  /// Direction of a nonzero vector.
  static AngularPoint from_direction(const Vec3& v);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double z() const { return z_; }
  double sin_theta() const { return std::sin(theta_); }

  Vec3 unit() const;
  Vec3 e_r() const { return unit(); }
  Vec3 e_theta() const;
  Vec3 e_phi() const;

 private:
  AngularPoint(double theta, double phi, double z) : theta_(theta), phi_(phi), z_(z) {}

  double theta_ = 0.0;
  double phi_ = 0.0;
  double z_ = 1.0;
};

/// Spherical components (F_r, F_theta, F_phi) at p to Cartesian components.
template <typename T>
Eigen::Matrix<T, 3, 1> frame_to_cartesian(const T& f_r, const T& f_theta, const T& f_phi,
                                          const AngularPoint& p) {
  const double st = std::sin(p.theta());
  const double ct = std::cos(p.theta());
  const double sp = std::sin(p.phi());
  const double cp = std::cos(p.phi());
  Eigen::Matrix<T, 3, 1> out;
  out[0] = f_r * (st * cp) + f_theta * (ct * cp) - f_phi * sp;
  out[1] = f_r * (st * sp) + f_theta * (ct * sp) + f_phi * cp;
  out[2] = f_r * ct - f_theta * st;
  return out;
}

/// Inverse of frame_to_cartesian: returns (F_r, F_theta, F_phi).
Vec3 cartesian_to_frame(const Vec3& f, const AngularPoint& p);

}  // namespace hmsa
