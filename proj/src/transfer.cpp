#include "alns/transfer.hpp"

#include <algorithm>

#include "alns/errors.hpp"
#include "alns/fe_eval.hpp"
#include "alns/threading.hpp"

namespace alns {

TransferOperator::TransferOperator(const MeshLevel& coarse, const MeshLevel& fine,
                                   const DofMap& coarse_umap, const DofMap& fine_umap,
                                   const std::vector<int>& coarse_dirichlet,
                                   const std::vector<int>& fine_dirichlet, bool scale_bubbles)
    : coarse_(&coarse), fine_(&fine), cmap_(&coarse_umap), fmap_(&fine_umap),
      scale_bubbles_(scale_bubbles) {
  if (!fine.has_genealogy()) throw Error("TransferOperator: fine mesh has no genealogy");
  if (coarse_umap.spec().family != fine_umap.spec().family)
    throw Error("TransferOperator: coarse/fine element mismatch");
  const int d = fine.dim;
  const Family fam = fine_umap.spec().family;

  const auto children = cell_children(fine, coarse.n_cells());

  // The local correction needs enough fine dofs interior to each coarse cell
  // to control the pressure jumps across the child cells; count them before
  // anything else so an unusable pairing is rejected with the dimensions.
  vt_dofs_.resize(coarse.n_cells());
  for (int t = 0; t < coarse.n_cells(); ++t) {
    vt_dofs_[t] = interior_dofs_of_coarse_cell(fine_umap, coarse, t, children[t]);
    const int dim_vt = static_cast<int>(vt_dofs_[t].size());
    const int dim_qt = static_cast<int>(children[t].size()) - 1;
    if (dim_vt < dim_qt)
      throw Error("TransferOperator: local correction space too small for [" +
                  family_name(fam) + "]^" + std::to_string(d) +
                  ": dim(V_T) = " + std::to_string(dim_vt) +
                  " < dim(Q_T) = " + std::to_string(dim_qt) +
                  " on a refined cell; the local solves are ill-posed");
  }
  if (fam != Family::P2 && fam != Family::P1FacetBubble && fam != Family::P2FacetBubble)
    throw Error("TransferOperator: unsupported velocity family " + family_name(fam));

  fine_bc_.assign(fine_umap.ndofs(), 0);
  for (int b : fine_dirichlet) fine_bc_[b] = 1;
  coarse_bc_.assign(coarse_umap.ndofs(), 0);
  for (int b : coarse_dirichlet) coarse_bc_[b] = 1;

  ElementSpec scalar = fine_umap.spec();
  scalar.value_size = 1;
  const int vs = fine_umap.spec().value_size;

  // Interpolation rows: apply each fine dof functional to the coarse basis
  // of the owning coarse cell. Shared fine dofs are filled on first visit;
  // continuity makes any owner equivalent.
  {
    PatternBuilder pb(fine_umap.ndofs(), coarse_umap.ndofs());
    std::vector<char> seen(fine_umap.n_scalar(), 0);
    std::vector<std::vector<std::pair<int, double>>> rows(fine_umap.n_scalar());
    for (int t = 0; t < coarse.n_cells(); ++t) {
      const int* ctd = coarse_umap.cell_dofs(t);
      const int ncb = coarse_umap.dofs_per_cell();
      for (int child : children[t]) {
        const int* fd = fine_umap.cell_dofs(child);
        for (int i = 0; i < fine_umap.dofs_per_cell(); ++i) {
          const int s = fd[i];
          if (seen[s]) continue;
          seen[s] = 1;
          Eigen::VectorXd acc = Eigen::VectorXd::Zero(ncb);
          for (const auto& term : fmap_->functional(s).terms) {
            const auto lam = coarse.barycentric(t, term.point.data());
            const BasisEval be = eval_basis(scalar, lam.data());
            acc += term.weight * be.values;
          }
          auto& row = rows[s];
          for (int j = 0; j < ncb; ++j)
            if (acc[j] != 0.0) row.emplace_back(ctd[j], acc[j]);
        }
      }
    }
    for (int s = 0; s < fine_umap.n_scalar(); ++s) {
      std::sort(rows[s].begin(), rows[s].end());
      std::vector<int> cols;
      for (const auto& [t, v] : rows[s]) cols.push_back(t);
      for (int comp = 0; comp < vs; ++comp) {
        std::vector<int> gcols;
        for (int t : cols) gcols.push_back(coarse_umap.global(t, comp));
        pb.connect_row(fine_umap.global(s, comp), gcols);
      }
    }
    E_ = pb.build();
    for (int s = 0; s < fine_umap.n_scalar(); ++s)
      for (const auto& [t, v] : rows[s])
        for (int comp = 0; comp < vs; ++comp)
          E_.set(fine_umap.global(s, comp), coarse_umap.global(t, comp), v);
  }

  // Plain interpolation keeps only 5/8 of a coarse bubble's facet flux; the
  // hierarchical basis lets the lost flux be restored by scaling the fine
  // bubble coefficients by 8/5.
  scale_ = Eigen::VectorXd::Ones(fine_umap.ndofs());
  if (scale_bubbles_ && fam == Family::P1FacetBubble) {
    for (int s = 0; s < fine_umap.n_scalar(); ++s)
      if (fine_umap.scalar_kind(s) == EntityKind::Facet)
        for (int comp = 0; comp < vs; ++comp) scale_[fine_umap.global(s, comp)] = 8.0 / 5.0;
  }

  // Injection: coarse dof functionals applied to the fine basis.
  {
    PatternBuilder pb(coarse_umap.ndofs(), fine_umap.ndofs());
    std::vector<char> seen(coarse_umap.n_scalar(), 0);
    std::vector<std::vector<std::pair<int, double>>> rows(coarse_umap.n_scalar());
    for (int t = 0; t < coarse.n_cells(); ++t) {
      const int* ctd = coarse_umap.cell_dofs(t);
      for (int j = 0; j < coarse_umap.dofs_per_cell(); ++j) {
        const int s = ctd[j];
        if (seen[s]) continue;
        seen[s] = 1;
        std::vector<std::pair<int, double>> entries;
        for (const auto& term : cmap_->functional(s).terms) {
          const int child = locate_cell(fine, children[t], term.point.data());
          if (child < 0) throw Error("TransferOperator: functional point not found in children");
          const auto lam = fine.barycentric(child, term.point.data());
          const BasisEval be = eval_basis(scalar, lam.data());
          const int* fd = fine_umap.cell_dofs(child);
          for (int i = 0; i < fine_umap.dofs_per_cell(); ++i)
            if (be.values[i] != 0.0) entries.emplace_back(fd[i], term.weight * be.values[i]);
        }
        std::sort(entries.begin(), entries.end());
        auto& row = rows[s];
        for (const auto& [fdof, v] : entries) {
          if (!row.empty() && row.back().first == fdof)
            row.back().second += v;
          else
            row.emplace_back(fdof, v);
        }
      }
    }
    for (int s = 0; s < coarse_umap.n_scalar(); ++s) {
      for (int comp = 0; comp < vs; ++comp) {
        std::vector<int> gcols;
        for (const auto& [f, v] : rows[s]) gcols.push_back(fine_umap.global(f, comp));
        pb.connect_row(coarse_umap.global(s, comp), gcols);
      }
    }
    inj_ = pb.build();
    for (int s = 0; s < coarse_umap.n_scalar(); ++s)
      for (const auto& [f, v] : rows[s])
        for (int comp = 0; comp < vs; ++comp)
          inj_.set(coarse_umap.global(s, comp), fine_umap.global(f, comp), v);
  }

  // Keep only correction dofs that are unconstrained (interior dofs cannot
  // sit on the outer boundary, so this is a no-op in practice).
  for (auto& dofs : vt_dofs_) {
    dofs.erase(std::remove_if(dofs.begin(), dofs.end(), [&](int d_) { return fine_bc_[d_]; }),
               dofs.end());
  }
}

void TransferOperator::update_correction(const CsrMatrix& A_fine, int threads) {
  A_ = &A_fine;
  threads_ = threads;
  const int nt = static_cast<int>(vt_dofs_.size());
  vt_factors_.assign(nt, DenseFactor());
  std::vector<char> bad(nt, 0);
  parallel_for(nt, threads, [&](int t) {
    const auto& dofs = vt_dofs_[t];
    const int n = static_cast<int>(dofs.size());
    if (n == 0) return;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const int r = dofs[i];
      for (int k = A_fine.row_ptr()[r]; k < A_fine.row_ptr()[r + 1]; ++k) {
        const auto it = std::lower_bound(dofs.begin(), dofs.end(), A_fine.col_idx()[k]);
        if (it != dofs.end() && *it == A_fine.col_idx()[k])
          a(i, it - dofs.begin()) = A_fine.values()[k];
      }
    }
    vt_factors_[t] = DenseFactor(a);
    if (vt_factors_[t].singular()) bad[t] = 1;
  });
  for (int t = 0; t < nt; ++t)
    if (bad[t])
      throw SingularMatrixError(
          "TransferOperator: singular local correction block on coarse cell " + std::to_string(t));
}

Eigen::VectorXd TransferOperator::prolong_uncorrected(const Eigen::VectorXd& coarse_vec) const {
  Eigen::VectorXd uf = E_.apply(coarse_vec);
  uf.array() *= scale_.array();
  for (int i = 0; i < uf.size(); ++i)
    if (fine_bc_[i]) uf[i] = 0.0;
  return uf;
}

Eigen::VectorXd TransferOperator::prolong(const Eigen::VectorXd& coarse_vec) const {
  if (!A_) throw Error("TransferOperator::prolong before update_correction");
  Eigen::VectorXd uf = prolong_uncorrected(coarse_vec);
  const int nt = static_cast<int>(vt_dofs_.size());
  std::vector<Eigen::VectorXd> corr(nt);
  parallel_for(nt, threads_, [&](int t) {
    const auto& dofs = vt_dofs_[t];
    if (dofs.empty()) return;
    Eigen::VectorXd r(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) r[i] = A_->row_dot(dofs[i], uf);
    vt_factors_[t].solve_inplace(r);
    corr[t] = std::move(r);
  });
  for (int t = 0; t < nt; ++t) {
    const auto& dofs = vt_dofs_[t];
    for (std::size_t i = 0; i < dofs.size(); ++i) uf[dofs[i]] -= corr[t][i];
  }
  return uf;
}

Eigen::VectorXd TransferOperator::restrict_dual(const Eigen::VectorXd& fine_dual) const {
  Eigen::VectorXd rc = E_.apply_transpose(fine_dual);
  for (int i = 0; i < rc.size(); ++i)
    if (coarse_bc_[i]) rc[i] = 0.0;
  return rc;
}

Eigen::VectorXd TransferOperator::inject_state(const Eigen::VectorXd& fine_vec) const {
  return inj_.apply(fine_vec);
}

}  // namespace alns
