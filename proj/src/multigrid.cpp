#include "alns/multigrid.hpp"

#include <cstdio>

#include "alns/errors.hpp"

namespace alns {

Eigen::VectorXd MomentumMultigrid::vcycle(int level, const Eigen::VectorXd& rhs,
                                          Eigen::VectorXd x) const {
  if (level == 0) return coarse_->solve(rhs);
  const int k = cfg_.effective_relax(dim_);
  x = relax(*a_[level], *patches_[level], rhs, x, k, cfg_.threads);
  const Eigen::VectorXd defect = rhs - a_[level]->apply(x);
  if (cfg_.verbosity >= 2)
    std::fprintf(stderr, "      mg level %d pre-relax defect %.3e\n", level, defect.norm());
  const Eigen::VectorXd coarse_rhs = transfers_[level - 1]->restrict_dual(defect);
  Eigen::VectorXd correction =
      vcycle(level - 1, coarse_rhs, Eigen::VectorXd::Zero(coarse_rhs.size()));
  x += transfers_[level - 1]->prolong(correction);
  x = relax(*a_[level], *patches_[level], rhs, x, k, cfg_.threads);
  if (cfg_.verbosity >= 2)
    std::fprintf(stderr, "      mg level %d post-relax defect %.3e\n", level,
                 (rhs - a_[level]->apply(x)).norm());
  return x;
}

Eigen::VectorXd MomentumMultigrid::fmg(const Eigen::VectorXd& rhs) const {
  const int L = n_levels() - 1;
  if (L < 0) throw Error("MomentumMultigrid: no levels");
  std::vector<Eigen::VectorXd> level_rhs(L + 1);
  level_rhs[L] = rhs;
  for (int l = L; l > 0; --l) level_rhs[l - 1] = transfers_[l - 1]->restrict_dual(level_rhs[l]);

  Eigen::VectorXd x = coarse_->solve(level_rhs[0]);
  for (int l = 1; l <= L; ++l) {
    x = transfers_[l - 1]->prolong(x);
    x = vcycle(l, level_rhs[l], std::move(x));
    if (cfg_.verbosity >= 2)
      std::fprintf(stderr, "    fmg level %d residual %.3e\n", l,
                   (level_rhs[l] - a_[l]->apply(x)).norm());
  }
  return x;
}

Eigen::VectorXd MomentumMultigrid::vcycle_finest(const Eigen::VectorXd& rhs) const {
  return vcycle(n_levels() - 1, rhs, Eigen::VectorXd::Zero(rhs.size()));
}

}  // namespace alns
