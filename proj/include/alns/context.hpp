#pragma once

#include <memory>
#include <string>
#include <vector>

#include "alns/assembly.hpp"
#include "alns/multigrid.hpp"
#include "alns/saddle.hpp"

namespace alns {

/// Everything a nonlinear solve needs on one mesh hierarchy: spaces, Dirichlet
/// data, per-level assemblers, the transfer chain, and the operator state
/// (matrices, patch factorizations, coarse factorization) refreshed at each
/// linearization point. Coarse-level operators are rediscretized at the
/// injected velocity with the stabilization of their own mesh.
class FlowContext {
 public:
  FlowContext(MeshHierarchy hierarchy, Family velocity_family,
              std::vector<std::pair<std::string, ForceField>> dirichlet,
              std::vector<std::string> neumann_markers, MgConfig mg);

  int n_levels() const { return meshes_.n_levels(); }
  int dim() const { return meshes_.finest().dim; }
  bool enclosed() const { return enclosed_; }
  const MgConfig& mg_config() const { return mg_; }

  const MeshLevel& mesh(int l) const { return meshes_.levels[l]; }
  const MeshLevel& fine_mesh() const { return meshes_.finest(); }
  const DofMap& umap(int l) const { return umaps_[l]; }
  const DofMap& pmap(int l) const { return pmaps_[l]; }
  const DofMap& fine_umap() const { return umaps_.back(); }
  const DofMap& fine_pmap() const { return pmaps_.back(); }
  const Assembler& assembler(int l) const { return assemblers_[l]; }
  const std::vector<int>& dirichlet_dofs(int l) const { return bc_[l]; }
  const TransferOperator& transfer(int l) const { return transfers_[l]; }
  const PatchSet& patch_set(int l) const { return patches_[l]; }

  DiscreteState zero_state() const;
  // Writes the boundary data into the velocity coefficients of the finest
  // level (hierarchical interpolation of g on the marked facets).
  void apply_dirichlet_values(DiscreteState& state) const;

  // Full refresh at a linearization point: fine blocks + residual, injected
  // coarse operators, patch/correction/coarse factorizations.
  void assemble(const DiscreteState& state, const AssemblyOptions& opts);
  // Residual on the finest level only.
  void residual_only(const DiscreteState& state, const AssemblyOptions& opts,
                     Eigen::VectorXd& ru, Eigen::VectorXd& rp) const;

  bool assembled() const { return assembled_; }
  const BlockSystem& system() const;
  const AssemblyOptions& current_options() const { return opts_; }
  const CsrMatrix& level_matrix(int l) const;

  MomentumMultigrid multigrid() const;
  LinearOp momentum_fmg() const;
  // One V-cycle on the finest level (momentum action of the comparison mode).
  LinearOp momentum_vcycle() const;
  BlockPreconditioner block_preconditioner() const;

 private:
  MeshHierarchy meshes_;
  std::vector<DofMap> umaps_, pmaps_;
  std::vector<Assembler> assemblers_;
  std::vector<std::vector<int>> bc_;
  std::vector<PatchSet> patches_;           // patches_[l] for l >= 1
  std::vector<TransferOperator> transfers_; // transfers_[l]: level l -> l+1
  std::vector<std::pair<std::string, ForceField>> dirichlet_;
  bool enclosed_ = true;
  MgConfig mg_;

  BlockSystem sys_;
  std::vector<CsrMatrix> level_a_;  // rediscretized operators below the finest
  SparseLu coarse_lu_;
  AssemblyOptions opts_;
  bool assembled_ = false;
};

}  // namespace alns
