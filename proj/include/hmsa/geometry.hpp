#pragma once

#include <Eigen/Geometry>
#include <vector>

#include "hmsa/frame.hpp"

namespace hmsa {

enum class SurfaceKind { sphere, ellipsoid, perturbed_sphere };

enum class HarmonicPart { re, im };

/// One term eps * part(Y_nm) / max|part(Y_nm)| of a perturbed radial map, so
/// that eps is the peak relative radial deviation contributed by the mode.
struct PerturbationMode {
  int n = 2;
  int m = 0;
  double eps = 0.0;
  HarmonicPart part = HarmonicPart::re;
};

/// Largest admissible |eps| per mode.
inline constexpr double kMaxPerturbation = 0.3;

/// rho and its partials with respect to the parametric angles.
struct RadialSample {
  double rho;
  double rho_theta;
  double rho_phi;
};

/// Surface r = rho(theta, phi) star-shaped about the origin.
///
/// A surface is a body-frame family (sphere, origin-centred ellipsoid or
/// perturbed sphere) together with an orientation; the radial map in world
/// coordinates is rho_body(orientation^T * direction).
class StarSurface {
 public:
  static StarSurface sphere(double radius);
  static StarSurface ellipsoid(double a, double b, double c);
  static StarSurface perturbed_sphere(double base_radius, std::vector<PerturbationMode> modes);

  SurfaceKind kind() const { return kind_; }
  double radius_parameter() const { return radius_; }
  const Vec3& axes() const { return axes_; }
  const std::vector<PerturbationMode>& modes() const { return modes_; }
  const Eigen::Matrix3d& orientation() const { return orientation_; }

  double rho(const AngularPoint& p) const;
  /// rho along a unit direction.
  double rho(const Vec3& direction) const;
  RadialSample sample(const AngularPoint& p) const;
  /// Tangential gradient of rho on the unit sphere, in world coordinates.
  Vec3 surface_gradient(const Vec3& direction) const;

  /// max over directions of rho; orientation independent.
  double max_radius() const { return max_radius_; }

  /// Whether x lies in the closed region bounded by the surface.
  bool contains(const Vec3& x) const;

  StarSurface rotated(const Eigen::Matrix3d& rotation) const;
  StarSurface dilated(double factor) const;

 private:
  StarSurface() = default;

  struct BodyValue {
    double rho;
    Vec3 gradient;  // tangential, body frame
  };
  BodyValue evaluate_body(const Vec3& direction) const;
  double compute_max_radius() const;

  SurfaceKind kind_ = SurfaceKind::sphere;
  double radius_ = 1.0;
  Vec3 axes_ = Vec3::Ones();
  std::vector<PerturbationMode> modes_;
  std::vector<double> mode_scale_;  // 1 / max|part(Y_nm)|
  Eigen::Matrix3d orientation_ = Eigen::Matrix3d::Identity();
  double max_radius_ = 1.0;
};

/// Rotation g about a unit axis by angle; the result has radial map rho o g^{-1}.
StarSurface rotate_surface(const StarSurface& surface, const Vec3& axis, double angle);

struct SurfaceNode {
  Vec3 position;
  Vec3 normal;  // unit, outward
  double weight;
  AngularPoint angle;
};

struct VolumeNode {
  Vec3 position;
  double weight;
};

struct GridResolution {
  int n_theta = 64;
  int n_phi = 128;
  int n_rho = 16;
};

/// Immutable surface and volume quadrature for one star surface.
class QuadratureGrid {
 public:
  QuadratureGrid(GridResolution resolution, double max_radius, std::vector<SurfaceNode> surface,
                 std::vector<VolumeNode> volume);

  const GridResolution& resolution() const { return resolution_; }
  const std::vector<SurfaceNode>& surface() const { return surface_; }
  const std::vector<VolumeNode>& volume() const { return volume_; }
  /// r_max of the underlying surface.
  double max_radius() const { return max_radius_; }
  /// Largest distance between neighbouring surface nodes, estimated from the angular steps.
  double node_spacing() const { return node_spacing_; }

 private:
  GridResolution resolution_;
  double max_radius_;
  double node_spacing_;
  std::vector<SurfaceNode> surface_;
  std::vector<VolumeNode> volume_;
};

/// Gauss-Legendre in cos(theta) x uniform phi on the surface, Gauss-Legendre in
/// the radius on [0, rho] for the volume.
QuadratureGrid build_grid(const StarSurface& surface, GridResolution resolution);
QuadratureGrid build_grid(const StarSurface& surface, int n_theta, int n_phi, int n_rho);

struct SurfaceMeasures {
  double area;
  double volume;
  double c;  // volume / area
};

SurfaceMeasures surface_measures(const QuadratureGrid& grid);

struct RadialStats {
  double mean;
  double relative_std;
};

/// Area-weighted mean of |s| and the relative standard deviation about it.
RadialStats radial_stats(const QuadratureGrid& grid);

}  // namespace hmsa
