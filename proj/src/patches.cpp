#include "alns/patches.hpp"

#include <algorithm>
#include <thread>

#include "alns/errors.hpp"
#include "alns/threading.hpp"

namespace alns {

PatchSet::PatchSet(const MeshLevel& mesh, const DofMap& umap, const std::vector<int>& dirichlet) {
  const int ns = umap.n_scalar();
  const int vs = umap.spec().value_size;

  // support cells per scalar dof; sorted by construction (cells in order)
  std::vector<std::vector<int>> support(ns);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int* cd = umap.cell_dofs(c);
    for (int i = 0; i < umap.dofs_per_cell(); ++i) support[cd[i]].push_back(c);
  }

  std::vector<char> bc(umap.ndofs(), 0);
  for (int d : dirichlet) bc[d] = 1;

  std::vector<char> in_star(mesh.n_cells(), 0);
  std::vector<char> seen(ns, 0);
  std::vector<int> touched;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const int lo = mesh.vertex_cell_offsets[v], hi = mesh.vertex_cell_offsets[v + 1];
    for (int k = lo; k < hi; ++k) in_star[mesh.vertex_cell_ids[k]] = 1;
    touched.clear();
    std::vector<int> scalars;
    for (int k = lo; k < hi; ++k) {
      const int c = mesh.vertex_cell_ids[k];
      const int* cd = umap.cell_dofs(c);
      for (int i = 0; i < umap.dofs_per_cell(); ++i) {
        const int s = cd[i];
        if (seen[s]) continue;
        seen[s] = 1;
        touched.push_back(s);
        bool interior = true;
        for (int sc : support[s]) interior &= (in_star[sc] != 0);
        if (interior) scalars.push_back(s);
      }
    }
    for (int s : touched) seen[s] = 0;
    for (int k = lo; k < hi; ++k) in_star[mesh.vertex_cell_ids[k]] = 0;

    std::sort(scalars.begin(), scalars.end());
    std::vector<int> dofs;
    for (int s : scalars)
      for (int comp = 0; comp < vs; ++comp) {
        const int gd = umap.global(s, comp);
        if (!bc[gd]) dofs.push_back(gd);
      }
    if (!dofs.empty()) dofs_.push_back(std::move(dofs));
  }
}

void PatchSet::update(const CsrMatrix& A, int threads) {
  factors_.assign(dofs_.size(), DenseFactor());
  const int np = n_patches();
  threads = std::max(1, std::min(threads, np));
  std::vector<std::thread> pool;
  std::vector<std::string> errors(threads);
  const int chunk = (np + threads - 1) / threads;
  auto work = [&](int t) {
    std::vector<int> loc(A.cols(), -1);
    for (int p = t * chunk; p < std::min(np, (t + 1) * chunk); ++p) {
      const auto& dofs = dofs_[p];
      const int n = static_cast<int>(dofs.size());
      for (int i = 0; i < n; ++i) loc[dofs[i]] = i;
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        const int r = dofs[i];
        for (int k = A.row_ptr()[r]; k < A.row_ptr()[r + 1]; ++k) {
          const int j = loc[A.col_idx()[k]];
          if (j >= 0) a(i, j) = A.values()[k];
        }
      }
      for (int i = 0; i < n; ++i) loc[dofs[i]] = -1;
      factors_[p] = DenseFactor(a);
      if (factors_[p].singular() && errors[t].empty())
        errors[t] = "PatchSet::update: singular local block for patch " + std::to_string(p);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw SingularMatrixError(e);
}

Eigen::VectorXd PatchSet::apply(const Eigen::VectorXd& r, int threads) const {
  const int np = n_patches();
  std::vector<Eigen::VectorXd> sol(np);
  parallel_for(np, threads, [&](int p) {
    const auto& dofs = dofs_[p];
    Eigen::VectorXd rl(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) rl[i] = r[dofs[i]];
    factors_[p].solve_inplace(rl);
    sol[p] = std::move(rl);
  });
  Eigen::VectorXd z = Eigen::VectorXd::Zero(r.size());
  for (int p = 0; p < np; ++p) {
    const auto& dofs = dofs_[p];
    for (std::size_t i = 0; i < dofs.size(); ++i) z[dofs[i]] += sol[p][i];
  }
  return z;
}

Eigen::VectorXd relax(const CsrMatrix& A, const PatchSet& patches, const Eigen::VectorXd& rhs,
                      const Eigen::VectorXd& x0, int iterations, int threads) {
  if (iterations < 1) throw Error("relax: need at least one iteration");
  Eigen::VectorXd defect = x0.size() ? Eigen::VectorXd(rhs - A.apply(x0)) : rhs;
  KrylovConfig cfg;
  cfg.max_iterations = iterations;
  cfg.restart = iterations;
  cfg.atol = 0.0;
  cfg.rtol = 0.0;
  LinearOp op = [&](const Eigen::VectorXd& x) { return A.apply(x); };
  LinearOp prec = [&](const Eigen::VectorXd& x) { return patches.apply(x, threads); };
  KrylovResult res = gmres(op, &prec, defect, Eigen::VectorXd::Zero(rhs.size()), cfg);
  return x0.size() ? Eigen::VectorXd(x0 + res.x) : res.x;
}

}  // namespace alns
