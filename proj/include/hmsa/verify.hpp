#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hmsa/geometry.hpp"

namespace hmsa {

struct CorpusSurface {
  std::string name;
  nlohmann::json spec;
  StarSurface surface;
  bool is_sphere;
};

/// Spheres R in {0.5, 1, 3}; ellipsoids (1,1,1.05), (1,1,2), (1,1.2,1.5);
/// perturbed unit spheres (2,0,eps) and (3,2,eps) for eps in {0.01, 0.05, 0.1, 0.2}.
std::vector<CorpusSurface> standard_corpus();

struct CheckResult {
  std::string name;
  double value;
  double bound;
  bool passed;
};

/// P_{n,m}(z) from the expanded Rodrigues polynomial; exact arithmetic aside, a
/// second route to assoc_legendre for small n.
double explicit_assoc_legendre(int n, int m, double z);

std::vector<CheckResult> verify_harmonics();
std::vector<CheckResult> verify_identities(const GridResolution& resolution, int basis_degree);
std::vector<CheckResult> verify_independence(int max_degree = 10);

}  // namespace hmsa
