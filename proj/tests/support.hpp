#pragma once

#include <cmath>
#include <random>

#include "hmsa/geometry.hpp"

namespace hmsa::test {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Uniformly distributed direction.
inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline StarSurface prolate() { return StarSurface::ellipsoid(1.0, 1.0, 2.0); }

inline StarSurface zonal(double eps) {
  return StarSurface::perturbed_sphere(1.0, {{2, 0, eps, HarmonicPart::re}});
}

inline StarSurface tesseral(double eps) {
  return StarSurface::perturbed_sphere(1.0, {{3, 2, eps, HarmonicPart::re}});
}

}  // namespace hmsa::test
