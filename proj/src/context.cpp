#include "alns/context.hpp"

#include "alns/errors.hpp"

namespace alns {

FlowContext::FlowContext(MeshHierarchy hierarchy, Family velocity_family,
                         std::vector<std::pair<std::string, ForceField>> dirichlet,
                         std::vector<std::string> neumann_markers, MgConfig mg)
    : meshes_(std::move(hierarchy)), dirichlet_(std::move(dirichlet)), mg_(mg) {
  const int L = meshes_.n_levels();
  if (L < 1) throw Error("FlowContext: empty hierarchy");
  const int dim = meshes_.levels[0].dim;
  enclosed_ = neumann_markers.empty();

  ElementSpec uspec{velocity_family, dim, dim};
  ElementSpec pspec{Family::P0, dim, 1};
  umaps_.reserve(L);
  pmaps_.reserve(L);
  assemblers_.reserve(L);
  std::vector<std::string> dirichlet_markers;
  for (const auto& [m, fn] : dirichlet_) dirichlet_markers.push_back(m);
  for (int l = 0; l < L; ++l) {
    umaps_.emplace_back(meshes_.levels[l], uspec);
    pmaps_.emplace_back(meshes_.levels[l], pspec);
  }
  for (int l = 0; l < L; ++l) {
    assemblers_.emplace_back(meshes_.levels[l], umaps_[l], pmaps_[l]);
    bc_.push_back(umaps_[l].boundary_dofs(dirichlet_markers));
    // make sure the problem's markers all exist
    for (const auto& name : neumann_markers)
      if (meshes_.levels[l].marker_id(name) < 0)
        throw Error("FlowContext: unknown marker '" + name + "'");
  }
  patches_.resize(L);
  for (int l = 1; l < L; ++l) patches_[l] = PatchSet(meshes_.levels[l], umaps_[l], bc_[l]);
  for (int l = 0; l + 1 < L; ++l)
    transfers_.emplace_back(meshes_.levels[l], meshes_.levels[l + 1], umaps_[l], umaps_[l + 1],
                            bc_[l], bc_[l + 1], mg_.bubble_scaling);
  level_a_.resize(L > 1 ? L - 1 : 0);
}

DiscreteState FlowContext::zero_state() const {
  DiscreteState s;
  s.u = Eigen::VectorXd::Zero(fine_umap().ndofs());
  s.p = Eigen::VectorXd::Zero(fine_pmap().ndofs());
  return s;
}

void FlowContext::apply_dirichlet_values(DiscreteState& state) const {
  const DofMap& umap = fine_umap();
  const int d = dim();
  for (const auto& [marker, g] : dirichlet_) {
    for (int s : umap.boundary_scalar_dofs({marker})) {
      std::array<double, 3> val{0, 0, 0};
      for (const auto& term : umap.functional(s).terms) {
        const auto gv = g ? g(term.point) : std::array<double, 3>{0, 0, 0};
        for (int k = 0; k < d; ++k) val[k] += term.weight * gv[k];
      }
      for (int k = 0; k < d; ++k) state.u[umap.global(s, k)] = val[k];
    }
  }
}

void FlowContext::assemble(const DiscreteState& state, const AssemblyOptions& opts) {
  const int L = n_levels();
  opts_ = opts;
  sys_ = assemblers_[L - 1].assemble(state, opts, bc_[L - 1]);

  // carry the linearization state down by injection, rediscretize
  std::vector<Eigen::VectorXd> level_u(L);
  level_u[L - 1] = state.u;
  for (int l = L - 1; l > 0; --l) level_u[l - 1] = transfers_[l - 1].inject_state(level_u[l]);
  for (int l = 0; l + 1 < L; ++l)
    level_a_[l] = assemblers_[l].momentum_matrix(level_u[l], opts, bc_[l]);

  for (int l = 1; l < L; ++l)
    patches_[l].update(l + 1 < L ? level_a_[l] : sys_.A, mg_.threads);
  for (int l = 0; l + 1 < L; ++l)
    transfers_[l].update_correction(l + 2 < L ? level_a_[l + 1] : sys_.A, mg_.threads);
  coarse_lu_.factorize(L > 1 ? level_a_[0] : sys_.A);
  assembled_ = true;
}

void FlowContext::residual_only(const DiscreteState& state, const AssemblyOptions& opts,
                                Eigen::VectorXd& ru, Eigen::VectorXd& rp) const {
  assemblers_.back().residual(state, opts, bc_.back(), ru, rp);
}

const BlockSystem& FlowContext::system() const {
  if (!assembled_) throw Error("FlowContext::system before assemble");
  return sys_;
}

const CsrMatrix& FlowContext::level_matrix(int l) const {
  if (!assembled_) throw Error("FlowContext::level_matrix before assemble");
  return l + 1 < n_levels() ? level_a_[l] : sys_.A;
}

MomentumMultigrid FlowContext::multigrid() const {
  if (!assembled_) throw Error("FlowContext::multigrid before assemble");
  const int L = n_levels();
  std::vector<const CsrMatrix*> a;
  std::vector<const PatchSet*> ps;
  std::vector<const TransferOperator*> tr;
  for (int l = 0; l < L; ++l) {
    a.push_back(&level_matrix(l));
    ps.push_back(&patches_[l]);
  }
  for (int l = 0; l + 1 < L; ++l) tr.push_back(&transfers_[l]);
  return MomentumMultigrid(std::move(a), std::move(ps), std::move(tr), &coarse_lu_, mg_,
                           dim());
}

LinearOp FlowContext::momentum_fmg() const {
  return [mg = multigrid()](const Eigen::VectorXd& r) { return mg.fmg(r); };
}

LinearOp FlowContext::momentum_vcycle() const {
  return [mg = multigrid()](const Eigen::VectorXd& r) { return mg.vcycle_finest(r); };
}

BlockPreconditioner FlowContext::block_preconditioner() const {
  BlockPreconditioner p;
  p.momentum_inv = momentum_fmg();
  p.sys = &system();
  p.schur_scale = opts_.params.nu + opts_.params.gamma;
  p.enclosed = enclosed_;
  return p;
}

}  // namespace alns
