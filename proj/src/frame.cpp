#include "hmsa/frame.hpp"

#include <numbers>

#include "hmsa/errors.hpp"

namespace hmsa {

AngularPoint AngularPoint::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("colatitude outside [0, pi]");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  return AngularPoint(theta, wrapped, std::cos(theta));
}

AngularPoint AngularPoint::from_direction(const Vec3& v) {
  const double r = v.norm();
  if (!(r > 0.0)) throw DomainError("direction of a zero vector");
  const double rho = std::hypot(v.x(), v.y());
  const double theta = std::atan2(rho, v.z());
  const double phi = std::atan2(v.y(), v.x());
  return from_angles(theta, phi);
}

Vec3 AngularPoint::unit() const {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

Vec3 AngularPoint::e_theta() const {
  const double ct = std::cos(theta_);
  return {ct * std::cos(phi_), ct * std::sin(phi_), -std::sin(theta_)};
}

Vec3 AngularPoint::e_phi() const { return {-std::sin(phi_), std::cos(phi_), 0.0}; }

Vec3 cartesian_to_frame(const Vec3& f, const AngularPoint& p) {
  return {f.dot(p.e_r()), f.dot(p.e_theta()), f.dot(p.e_phi())};
}

}  // namespace hmsa
