#pragma once

#include <Eigen/Dense>
#include <memory>

namespace alns {

class CsrMatrix;

/// Sparse LU with a fill-reducing column ordering, for the coarsest-level
/// solves. Factorization is deterministic for a fixed matrix.
class SparseLu {
 public:
  SparseLu();
  ~SparseLu();
  SparseLu(SparseLu&&) noexcept;
  SparseLu& operator=(SparseLu&&) noexcept;

  // Throws SingularMatrixError on structural or numerical singularity.
  void factorize(const CsrMatrix& a);
  bool ready() const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace alns
