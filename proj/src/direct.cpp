#include "alns/direct.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

#include "alns/errors.hpp"
#include "alns/sparse.hpp"

namespace alns {

struct SparseLu::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool ready = false;
  int n = 0;
};

SparseLu::SparseLu() : impl_(std::make_unique<Impl>()) {}
SparseLu::~SparseLu() = default;
SparseLu::SparseLu(SparseLu&&) noexcept = default;
SparseLu& SparseLu::operator=(SparseLu&&) noexcept = default;

void SparseLu::factorize(const CsrMatrix& a) {
  if (a.rows() != a.cols()) throw Error("SparseLu: matrix not square");
  Eigen::SparseMatrix<double> m(a.rows(), a.cols());
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(a.nnz());
    for (int r = 0; r < a.rows(); ++r)
      for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
        trip.emplace_back(r, a.col_idx()[k], a.values()[k]);
    m.setFromTriplets(trip.begin(), trip.end());
  }
  m.makeCompressed();
  impl_->lu.isSymmetric(false);
  impl_->lu.compute(m);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularMatrixError("SparseLu: factorization failed (singular or structurally deficient matrix)");
  // Zero pivots that slipped past Eigen's threshold pivoting show up as
  // non-finite entries on a probe solve.
  Eigen::VectorXd probe = impl_->lu.solve(Eigen::VectorXd::Ones(a.rows()));
  if (!probe.allFinite())
    throw SingularMatrixError("SparseLu: numerically singular matrix");
  impl_->ready = true;
  impl_->n = a.rows();
}

bool SparseLu::ready() const { return impl_->ready; }

Eigen::VectorXd SparseLu::solve(const Eigen::VectorXd& b) const {
  if (!impl_->ready) throw Error("SparseLu::solve before factorize");
  return impl_->lu.solve(b);
}

}  // namespace alns
