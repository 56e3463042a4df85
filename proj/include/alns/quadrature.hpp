#pragma once

#include <Eigen/Dense>

namespace alns {

/// Quadrature on the reference simplex. Points are barycentric (dim+1
/// columns); weights sum to the reference volume 1/dim! and the rule is exact
/// for polynomials up to `degree`.
struct QuadratureRule {
  Eigen::MatrixXd points;   // n x (dim+1)
  Eigen::VectorXd weights;  // n
  int degree = 0;
  int dim = 0;
  int size() const { return static_cast<int>(weights.size()); }
};

// Grundmann-Moller rule of the requested exactness degree (rounded up to the
// next odd degree). Valid for dim 1, 2, 3.
QuadratureRule simplex_quadrature(int dim, int degree);

// Gauss-Legendre on [0, 1], exact through degree 2n-1.
QuadratureRule gauss_legendre_01(int npoints);

}  // namespace alns
