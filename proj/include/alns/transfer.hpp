#pragma once

#include <Eigen/Dense>
#include <vector>

#include "alns/dense.hpp"
#include "alns/dofmap.hpp"
#include "alns/sparse.hpp"

namespace alns {

/// Grid transfer between two consecutive velocity spaces.
///
/// Prolongation interpolates the coarse function at the fine dof functionals
/// (hierarchical basis), rescales the fine facet-bubble coefficients where
/// the plain interpolation loses coarse-facet flux, and then subtracts a
/// correction supported on the dofs interior to each coarse cell so that the
/// prolonged field stays nearly divergence-free in the discrete sense. The
/// correction solves, per coarse cell T,
///     a(w_T, v_T) = a(E u_H, v_T)  for all v_T in V_T,
/// with the current fine operator, and is independent across cells.
///
/// Restriction is the plain transpose of the unscaled interpolation;
/// injection (for nonlinear states) reads coarse dof functionals from the
/// fine field, re-interpolating bubbles.
class TransferOperator {
 public:
  TransferOperator(const MeshLevel& coarse, const MeshLevel& fine, const DofMap& coarse_umap,
                   const DofMap& fine_umap, const std::vector<int>& coarse_dirichlet,
                   const std::vector<int>& fine_dirichlet, bool scale_bubbles = true);

  // Refreshes the per-coarse-cell correction factors from the fine operator.
  // Keeps a reference to A for the prolongation right-hand sides.
  void update_correction(const CsrMatrix& A_fine, int threads = 1);

  Eigen::VectorXd prolong(const Eigen::VectorXd& coarse_vec) const;
  // Interpolation + bubble scaling without the local correction.
  Eigen::VectorXd prolong_uncorrected(const Eigen::VectorXd& coarse_vec) const;
  Eigen::VectorXd restrict_dual(const Eigen::VectorXd& fine_dual) const;
  Eigen::VectorXd inject_state(const Eigen::VectorXd& fine_vec) const;

  const std::vector<int>& correction_dofs(int coarse_cell) const { return vt_dofs_[coarse_cell]; }
  const CsrMatrix& interpolation() const { return E_; }
  bool bubbles_scaled() const { return scale_bubbles_; }

 private:
  const MeshLevel* coarse_;
  const MeshLevel* fine_;
  const DofMap* cmap_;
  const DofMap* fmap_;
  bool scale_bubbles_;
  CsrMatrix E_;    // fine x coarse interpolation, unscaled
  CsrMatrix inj_;  // coarse x fine injection
  Eigen::VectorXd scale_;  // per fine dof; 8/5 on bubble rows when enabled
  std::vector<char> fine_bc_, coarse_bc_;
  std::vector<std::vector<int>> vt_dofs_;   // per coarse cell
  std::vector<DenseFactor> vt_factors_;
  const CsrMatrix* A_ = nullptr;
  int threads_ = 1;
};

}  // namespace alns
