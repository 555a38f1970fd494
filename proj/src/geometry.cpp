#include "hmsa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hmsa/errors.hpp"
#include "hmsa/harmonics.hpp"
#include "hmsa/quadrature.hpp"

namespace hmsa {
namespace {

constexpr double kPi = std::numbers::pi;

double part_of(const Complex& value, HarmonicPart part) {
  return part == HarmonicPart::re ? value.real() : value.imag();
}

Vec3 part_of(const CVec3& value, HarmonicPart part) {
  return part == HarmonicPart::re ? Vec3(value.real()) : Vec3(value.imag());
}

// max over z in [-1, 1] of |P_{n,m}(z)|: dense scan, then golden-section refinement.
double max_abs_legendre(int n, int m) {
  constexpr int kScan = 4001;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kScan; ++i) {
    const double z = -1.0 + 2.0 * i / (kScan - 1);
    const double v = std::abs(assoc_legendre(n, m, z));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = -1.0 + 2.0 * std::max(best - 1, 0) / (kScan - 1);
  double hi = -1.0 + 2.0 * std::min(best + 1, kScan - 1) / (kScan - 1);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double z) { return std::abs(assoc_legendre(n, m, z)); };
  for (int iter = 0; iter < 80; ++iter) {
    const double a = hi - ratio * (hi - lo);
    const double b = lo + ratio * (hi - lo);
    if (f(a) < f(b)) {
      lo = a;
    } else {
      hi = b;
    }
  }
  return std::max(best_value, f(0.5 * (lo + hi)));
}

void orthonormal_tangents(const Vec3& d, Vec3& t1, Vec3& t2) {
  const Vec3 helper = std::abs(d.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  t1 = d.cross(helper).normalized();
  t2 = d.cross(t1);
}

}  // namespace

StarSurface StarSurface::sphere(double radius) {
  if (!(radius > 0.0)) throw InvalidSurfaceError("sphere radius must be positive");
  StarSurface s;
  s.kind_ = SurfaceKind::sphere;
  s.radius_ = radius;
  s.axes_ = Vec3::Constant(radius);
  s.max_radius_ = radius;
  return s;
}

StarSurface StarSurface::ellipsoid(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw InvalidSurfaceError("ellipsoid semi-axes must be positive");
  }
  StarSurface s;
  s.kind_ = SurfaceKind::ellipsoid;
  s.axes_ = Vec3(a, b, c);
  s.radius_ = std::cbrt(a * b * c);
  s.max_radius_ = s.axes_.maxCoeff();
  return s;
}

StarSurface StarSurface::perturbed_sphere(double base_radius, std::vector<PerturbationMode> modes) {
  if (!(base_radius > 0.0)) throw InvalidSurfaceError("base radius must be positive");
  StarSurface s;
  s.kind_ = SurfaceKind::perturbed_sphere;
  s.radius_ = base_radius;
  s.axes_ = Vec3::Constant(base_radius);
  for (const PerturbationMode& mode : modes) {
    if (mode.n < 0 || std::abs(mode.m) > mode.n) {
      throw InvalidSurfaceError("perturbation mode (" + std::to_string(mode.n) + ", " +
                                std::to_string(mode.m) + ") is not a harmonic index");
    }
    if (!(std::abs(mode.eps) <= kMaxPerturbation)) {
      throw InvalidSurfaceError("perturbation amplitude " + std::to_string(mode.eps) +
                                " exceeds " + std::to_string(kMaxPerturbation));
    }
    if (mode.m == 0 && mode.part == HarmonicPart::im) {
      throw InvalidSurfaceError("imaginary part of a zonal harmonic vanishes identically");
    }
    const double peak = normalization(mode.n, mode.m) * max_abs_legendre(mode.n, std::abs(mode.m));
    s.mode_scale_.push_back(1.0 / peak);
  }
  s.modes_ = std::move(modes);

  // star-shapedness: rho must stay positive on a dense sample
  constexpr int kCheck = 96;
  for (int i = 0; i <= kCheck; ++i) {
    for (int j = 0; j < 2 * kCheck; ++j) {
      const AngularPoint p = AngularPoint::from_angles(kPi * i / kCheck, kPi * j / kCheck);
      if (!(s.evaluate_body(p.unit()).rho > 0.0)) {
        throw InvalidSurfaceError("radial map is not positive; amplitudes too large");
      }
    }
  }
  s.max_radius_ = s.compute_max_radius();
  return s;
}

StarSurface::BodyValue StarSurface::evaluate_body(const Vec3& d) const {
  switch (kind_) {
    case SurfaceKind::sphere:
      return {radius_, Vec3::Zero()};
    case SurfaceKind::ellipsoid: {
      const Vec3 inv2 = axes_.cwiseProduct(axes_).cwiseInverse();
      const Vec3 ad = inv2.cwiseProduct(d);
      const double q = d.dot(ad);
      const double rho = 1.0 / std::sqrt(q);
      const Vec3 g = -rho * rho * rho * ad;
      return {rho, g - g.dot(d) * d};
    }
    case SurfaceKind::perturbed_sphere: {
      double rel = 1.0;
      Vec3 grad = Vec3::Zero();
      for (size_t k = 0; k < modes_.size(); ++k) {
        const PerturbationMode& mode = modes_[k];
        const HarmonicIndex idx(mode.n, mode.m);
        const Complex y = solid_harmonic(idx, d);
        // tangential part of the solid-harmonic gradient at |d| = 1
        const CVec3 full = solid_harmonic_gradient_cartesian(idx, d);
        const CVec3 tangential = full - static_cast<double>(mode.n) * y * d.cast<Complex>();
        const double amp = mode.eps * mode_scale_[k];
        rel += amp * part_of(y, mode.part);
        grad += amp * part_of(tangential, mode.part);
      }
      return {radius_ * rel, radius_ * grad};
    }
  }
  return {radius_, Vec3::Zero()};
}

double StarSurface::rho(const Vec3& direction) const {
  return evaluate_body(orientation_.transpose() * direction).rho;
}

double StarSurface::rho(const AngularPoint& p) const { return rho(p.unit()); }

Vec3 StarSurface::surface_gradient(const Vec3& direction) const {
  return orientation_ * evaluate_body(orientation_.transpose() * direction).gradient;
}

RadialSample StarSurface::sample(const AngularPoint& p) const {
  const Vec3 d = p.unit();
  const BodyValue body = evaluate_body(orientation_.transpose() * d);
  const Vec3 g = orientation_ * body.gradient;
  return {body.rho, g.dot(p.e_theta()), g.dot(p.e_phi()) * p.sin_theta()};
}

bool StarSurface::contains(const Vec3& x) const {
  const double r = x.norm();
  if (r == 0.0) return true;
  return r <= rho(Vec3(x / r));
}

StarSurface StarSurface::rotated(const Eigen::Matrix3d& rotation) const {
  StarSurface s = *this;
  s.orientation_ = rotation * orientation_;
  return s;
}

StarSurface StarSurface::dilated(double factor) const {
  if (!(factor > 0.0)) throw DomainError("dilation factor must be positive");
  StarSurface s = *this;
  s.radius_ *= factor;
  s.axes_ *= factor;
  s.max_radius_ *= factor;
  return s;
}

double StarSurface::compute_max_radius() const {
  if (kind_ == SurfaceKind::sphere) return radius_;
  if (kind_ == SurfaceKind::ellipsoid) return axes_.maxCoeff();

  auto value = [&](const Vec3& d) { return evaluate_body(d).rho; };

  // coarse scan, keep the best few starting directions
  constexpr int kScan = 48;
  std::vector<std::pair<double, Vec3>> starts;
  for (int i = 0; i <= kScan; ++i) {
    for (int j = 0; j < 2 * kScan; ++j) {
      const Vec3 d = AngularPoint::from_angles(kPi * i / kScan, kPi * j / kScan).unit();
      starts.emplace_back(value(d), d);
    }
  }
  constexpr size_t kKeep = 8;
  std::partial_sort(starts.begin(), starts.begin() + kKeep, starts.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  double best = starts.front().first;
  for (size_t s = 0; s < kKeep; ++s) {
    Vec3 d = starts[s].second;
    double f0 = starts[s].first;
    // Newton ascent in a local tangent chart, finite-difference derivatives.
    for (int iter = 0; iter < 60; ++iter) {
      Vec3 t1, t2;
      orthonormal_tangents(d, t1, t2);
      auto chart = [&](double u, double v) { return Vec3((d + u * t1 + v * t2).normalized()); };
      auto f = [&](double u, double v) { return value(chart(u, v)); };
      constexpr double h = 1e-4;
      const double fpu = f(h, 0), fmu = f(-h, 0), fpv = f(0, h), fmv = f(0, -h);
      const Eigen::Vector2d g((fpu - fmu) / (2 * h), (fpv - fmv) / (2 * h));
      Eigen::Matrix2d hess;
      hess(0, 0) = (fpu - 2 * f0 + fmu) / (h * h);
      hess(1, 1) = (fpv - 2 * f0 + fmv) / (h * h);
      hess(0, 1) = hess(1, 0) = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
      Eigen::Vector2d step;
      if (hess(0, 0) < 0 && hess.determinant() > 0) {
        step = -hess.inverse() * g;
      } else {
        step = g;
      }
      const double len = step.norm();
      if (len > 0.2) step *= 0.2 / len;
      double f1 = f(step[0], step[1]);
      for (int tries = 0; tries < 40 && f1 < f0; ++tries) {
        step *= 0.5;
        f1 = f(step[0], step[1]);
      }
      if (f1 < f0) break;
      d = chart(step[0], step[1]);
      f0 = f1;
      if (step.norm() < 1e-12) break;
    }
    best = std::max(best, f0);
  }
  return best;
}

StarSurface rotate_surface(const StarSurface& surface, const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("rotation axis must be a unit vector");
  const Eigen::Matrix3d g = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
  return surface.rotated(g);
}

QuadratureGrid::QuadratureGrid(GridResolution resolution, double max_radius,
                               std::vector<SurfaceNode> surface, std::vector<VolumeNode> volume)
    : resolution_(resolution),
      max_radius_(max_radius),
      node_spacing_(max_radius * std::max(kPi / resolution.n_theta, 2.0 * kPi / resolution.n_phi)),
      surface_(std::move(surface)),
      volume_(std::move(volume)) {}

QuadratureGrid build_grid(const StarSurface& surface, int n_theta, int n_phi, int n_rho) {
  return build_grid(surface, GridResolution{n_theta, n_phi, n_rho});
}

QuadratureGrid build_grid(const StarSurface& surface, GridResolution res) {
  if (res.n_theta < 8 || res.n_phi < 8 || res.n_rho < 4) {
    throw DomainError("grid resolution below minimum (8, 8, 4)");
  }
  const GaussRule polar = gauss_legendre(res.n_theta);
  const GaussRule radial = gauss_legendre(res.n_rho);
  const double dphi = 2.0 * kPi / res.n_phi;

  std::vector<SurfaceNode> nodes;
  std::vector<VolumeNode> volume;
  nodes.reserve(static_cast<size_t>(res.n_theta) * res.n_phi);
  volume.reserve(nodes.capacity() * res.n_rho);

  for (int i = 0; i < res.n_theta; ++i) {
    const double theta = std::acos(polar.nodes[i]);
    const double sin_theta = std::sin(theta);
    for (int j = 0; j < res.n_phi; ++j) {
      const AngularPoint p = AngularPoint::from_angles(theta, j * dphi);
      const RadialSample r = surface.sample(p);
      if (!(r.rho > 0.0)) throw InvalidSurfaceError("radial map is not positive at a grid node");
      const Vec3 e_r = p.e_r();
      const Vec3 tangent_theta = r.rho_theta * e_r + r.rho * p.e_theta();
      const Vec3 tangent_phi = r.rho_phi * e_r + r.rho * sin_theta * p.e_phi();
      const Vec3 cross = tangent_theta.cross(tangent_phi);
      const double jac = cross.norm();
      // dS = |s_theta x s_phi| dtheta dphi and dtheta = dz / sin(theta)
      const double weight = jac / sin_theta * polar.weights[i] * dphi;
      nodes.push_back({r.rho * e_r, cross / jac, weight, p});

      const double solid_angle = polar.weights[i] * dphi;
      for (int k = 0; k < res.n_rho; ++k) {
        const double t = 0.5 * r.rho * (radial.nodes[k] + 1.0);
        volume.push_back({t * e_r, t * t * 0.5 * r.rho * radial.weights[k] * solid_angle});
      }
    }
  }
  return QuadratureGrid(res, surface.max_radius(), std::move(nodes), std::move(volume));
}

SurfaceMeasures surface_measures(const QuadratureGrid& grid) {
  double area = 0.0;
  for (const SurfaceNode& node : grid.surface()) area += node.weight;
  double volume = 0.0;
  for (const VolumeNode& node : grid.volume()) volume += node.weight;
  return {area, volume, volume / area};
}

RadialStats radial_stats(const QuadratureGrid& grid) {
  double area = 0.0;
  double first = 0.0;
  for (const SurfaceNode& node : grid.surface()) {
    area += node.weight;
    first += node.position.norm() * node.weight;
  }
  const double mean = first / area;
  double second = 0.0;
  for (const SurfaceNode& node : grid.surface()) {
    const double d = node.position.norm() - mean;
    second += d * d * node.weight;
  }
  return {mean, std::sqrt(second / area) / mean};
}

}  // namespace hmsa
