#pragma once

#include <Eigen/Dense>
#include <vector>

#include "alns/dense.hpp"
#include "alns/dofmap.hpp"
#include "alns/krylov.hpp"
#include "alns/sparse.hpp"

namespace alns {

/// Additive vertex-star relaxation. One patch per mesh vertex holds the
/// velocity dofs whose basis support lies inside the star of that vertex,
/// minus the Dirichlet set; empty patches are dropped. Index sets are
/// geometric and built once; the factorized local blocks follow the operator
/// and are refreshed with update().
class PatchSet {
 public:
  PatchSet() = default;
  PatchSet(const MeshLevel& mesh, const DofMap& umap, const std::vector<int>& dirichlet);

  int n_patches() const { return static_cast<int>(dofs_.size()); }
  const std::vector<int>& patch_dofs(int p) const { return dofs_[p]; }

  // Extracts and LU-factorizes the local blocks of A. Throws
  // SingularMatrixError if some local block is singular.
  void update(const CsrMatrix& A, int threads = 1);

  // z = sum over patches of the scattered local solve of r's restriction.
  // Local solves may run in parallel; the accumulation is in patch order.
  Eigen::VectorXd apply(const Eigen::VectorXd& r, int threads = 1) const;

 private:
  std::vector<std::vector<int>> dofs_;
  std::vector<DenseFactor> factors_;
};

/// k iterations of GMRES on A x = b from x0, preconditioned by the additive
/// star smoother, with no tolerance test (fixed work). The Krylov loop runs
/// on the defect equation with a zero initial guess.
Eigen::VectorXd relax(const CsrMatrix& A, const PatchSet& patches, const Eigen::VectorXd& rhs,
                      const Eigen::VectorXd& x0, int iterations, int threads = 1);

}  // namespace alns
