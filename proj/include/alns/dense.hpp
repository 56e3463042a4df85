#pragma once

#include <Eigen/Dense>

namespace alns {

/// LU factorization with row pivoting of a small dense matrix. Flags
/// singularity when a pivot falls below `pivot_rel_tol * max|A|`.
class DenseFactor {
 public:
  DenseFactor() = default;
  explicit DenseFactor(const Eigen::MatrixXd& a, double pivot_rel_tol = 1e-14);

  int dim() const { return dim_; }
  bool singular() const { return singular_; }

  // Throws SingularMatrixError if the factorization was flagged singular.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  void solve_inplace(Eigen::VectorXd& rhs) const;

  Eigen::MatrixXd reconstruct() const { return lu_.reconstructedMatrix(); }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  int dim_ = 0;
  bool singular_ = true;
};

}  // namespace alns
