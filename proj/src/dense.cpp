#include "alns/dense.hpp"

#include <cmath>

#include "alns/errors.hpp"

namespace alns {

DenseFactor::DenseFactor(const Eigen::MatrixXd& a, double pivot_rel_tol) {
  dim_ = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) throw Error("DenseFactor: matrix not square");
  if (dim_ == 0) {
    singular_ = false;
    return;
  }
  lu_.compute(a);
  const double scale = a.cwiseAbs().maxCoeff();
  double min_pivot = std::abs(lu_.matrixLU()(0, 0));
  for (int i = 1; i < dim_; ++i) min_pivot = std::min(min_pivot, std::abs(lu_.matrixLU()(i, i)));
  singular_ = !(min_pivot > pivot_rel_tol * scale) || !std::isfinite(min_pivot);
}

Eigen::VectorXd DenseFactor::solve(const Eigen::VectorXd& rhs) const {
  if (singular_) throw SingularMatrixError("DenseFactor::solve: singular matrix");
  if (dim_ == 0) return Eigen::VectorXd();
  return lu_.solve(rhs);
}

void DenseFactor::solve_inplace(Eigen::VectorXd& rhs) const {
  if (singular_) throw SingularMatrixError("DenseFactor::solve: singular matrix");
  if (dim_ == 0) return;
  rhs = lu_.solve(rhs);
}

}  // namespace alns
