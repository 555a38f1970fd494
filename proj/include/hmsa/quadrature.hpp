#pragma once

#include <vector>

namespace hmsa {

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int count);

}  // namespace hmsa
