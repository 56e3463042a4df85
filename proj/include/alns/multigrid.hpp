#pragma once

#include <Eigen/Dense>
#include <vector>

#include "alns/direct.hpp"
#include "alns/patches.hpp"
#include "alns/transfer.hpp"

namespace alns {

struct MgConfig {
  int relax_iterations = 0;  // 0 = dimension default: 6 in 2D, 10 in 3D
  bool bubble_scaling = true;
  int threads = 1;
  int verbosity = 0;

  int effective_relax(int dim) const {
    return relax_iterations > 0 ? relax_iterations : (dim == 2 ? 6 : 10);
  }
};

/// Full-multigrid solver for the augmented momentum block. Owns nothing: the
/// per-level operators, patch sets and transfers are assembled and refreshed
/// by the caller. One application: exact solve on the coarsest level, then
/// per level prolong and run one V-cycle (one pre- and one post-relaxation,
/// each a fixed number of smoother-preconditioned GMRES steps).
class MomentumMultigrid {
 public:
  MomentumMultigrid() = default;
  MomentumMultigrid(std::vector<const CsrMatrix*> a, std::vector<const PatchSet*> patches,
                    std::vector<const TransferOperator*> transfers, const SparseLu* coarse,
                    MgConfig cfg, int dim)
      : a_(std::move(a)), patches_(std::move(patches)), transfers_(std::move(transfers)),
        coarse_(coarse), cfg_(cfg), dim_(dim) {}

  int n_levels() const { return static_cast<int>(a_.size()); }

  // One full-multigrid pass for A x = rhs (used as the preconditioner action
  // on the momentum block).
  Eigen::VectorXd fmg(const Eigen::VectorXd& rhs) const;

  // One V-cycle on the finest level from a zero initial guess.
  Eigen::VectorXd vcycle_finest(const Eigen::VectorXd& rhs) const;

 private:
  Eigen::VectorXd vcycle(int level, const Eigen::VectorXd& rhs, Eigen::VectorXd x) const;

  std::vector<const CsrMatrix*> a_;
  std::vector<const PatchSet*> patches_;
  std::vector<const TransferOperator*> transfers_;  // transfers_[l]: level l -> l+1
  const SparseLu* coarse_ = nullptr;
  MgConfig cfg_;
  int dim_ = 2;
};

}  // namespace alns
