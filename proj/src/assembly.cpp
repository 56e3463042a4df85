#include "alns/assembly.hpp"

#include <cassert>
#include <cmath>

#include "alns/errors.hpp"

namespace alns {

double supg_delta(double u_norm, double h, const PhysicalParams& params) {
  if (!(h > 0)) throw Error("supg_delta: h must be positive");
  const double s =
      4.0 * u_norm * u_norm / (h * h) + 144.0 * params.nu * params.nu / (h * h * h * h);
  return params.delta_d / std::sqrt(s);
}

Assembler::Assembler(const MeshLevel& mesh, const DofMap& umap, const DofMap& pmap)
    : mesh_(&mesh), umap_(&umap), pmap_(&pmap) {
  if (umap.spec().value_size != mesh.dim) throw Error("Assembler: velocity space must be vector-valued");
  if (pmap.spec().family != Family::P0) throw Error("Assembler: pressure space must be piecewise constant");
  if (&umap.mesh() != &mesh || &pmap.mesh() != &mesh) throw Error("Assembler: space/mesh mismatch");

  quad_ = simplex_quadrature(mesh.dim, 2 * umap.spec().degree() + 1);
  ElementSpec scalar_spec = umap.spec();
  scalar_spec.value_size = 1;
  ref_.reserve(quad_.size());
  for (int q = 0; q < quad_.size(); ++q) {
    std::array<double, 4> lam{0, 0, 0, 0};
    for (int j = 0; j <= mesh.dim; ++j) lam[j] = quad_.points(q, j);
    ref_.push_back(eval_basis(scalar_spec, lam.data()));
  }

  const int d = mesh.dim;
  const int nb = umap.dofs_per_cell();
  PatternBuilder pa(umap.ndofs(), umap.ndofs());
  PatternBuilder pb(pmap.ndofs(), umap.ndofs());
  std::vector<int> cell_u(nb * d);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int* cd = umap.cell_dofs(c);
    for (int i = 0; i < nb; ++i)
      for (int k = 0; k < d; ++k) cell_u[i * d + k] = umap.global(cd[i], k);
    pa.connect(cell_u, cell_u);
    pb.connect_row(pmap.cell_dofs(c)[0], cell_u);
  }
  a_pattern_ = pa.build();
  b_pattern_ = pb.build();
}

void Assembler::assemble_impl(const DiscreteState& state, const AssemblyOptions& opts,
                              const std::vector<int>& bc,
                              const Eigen::VectorXd* frozen_advection, BlockSystem* out_full,
                              Eigen::VectorXd* out_ru, Eigen::VectorXd* out_rp,
                              CsrMatrix* out_A) const {
  const MeshLevel& mesh = *mesh_;
  const int d = mesh.dim;
  const int nb = umap_->dofs_per_cell();
  const int nloc = nb * d;
  const int nu_dofs = umap_->ndofs();
  const int np_dofs = pmap_->ndofs();
  if (state.u.size() != nu_dofs) throw Error("assemble: velocity state has wrong size");
  if (out_full || out_rp)
    if (state.p.size() != np_dofs) throw Error("assemble: pressure state has wrong size");

  const PhysicalParams& par = opts.params;
  const bool advect = opts.advection;
  const bool supg = opts.supg && advect;
  const bool newton = opts.linearization == Linearization::Newton && !frozen_advection;
  const bool want_matrix = out_full || out_A;

  CsrMatrix* A = nullptr;
  CsrMatrix* B = nullptr;
  Eigen::VectorXd *ru = out_ru, *rp = out_rp;
  if (out_full) {
    out_full->A = a_pattern_;
    out_full->B = b_pattern_;
    out_full->mp.resize(np_dofs);
    out_full->rhs_u.setZero(nu_dofs);
    out_full->rhs_p.setZero(np_dofs);
    out_full->bc = bc;
    A = &out_full->A;
    B = &out_full->B;
    ru = &out_full->rhs_u;
    rp = &out_full->rhs_p;
  } else {
    if (out_A) {
      *out_A = a_pattern_;
      A = out_A;
    }
    if (ru) ru->setZero(nu_dofs);
    if (rp) rp->setZero(np_dofs);
  }

  const int nq = quad_.size();
  Eigen::MatrixXd Aloc(nloc, nloc);
  std::vector<double> phi(nb), gg(nb * nb), adv_dot_g(nb), trH(nb);
  std::vector<double> g(nb * d), H(nb * d * d);
  std::vector<double> coef(nb * d), fcoef(nb * d);
  std::vector<double> divint(nb * d), rloc(nb * d);
  std::vector<int> gdofs(nloc);

  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int* cd = umap_->cell_dofs(c);
    const int* cv = mesh.cell(c);
    for (int i = 0; i < nb; ++i)
      for (int k = 0; k < d; ++k) {
        gdofs[i * d + k] = umap_->global(cd[i], k);
        coef[i * d + k] = state.u[gdofs[i * d + k]];
      }
    if (frozen_advection)
      for (int i = 0; i < nloc; ++i) fcoef[i] = (*frozen_advection)[gdofs[i]];

    // affine geometry
    Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) J(k, l) = mesh.vertex(cv[l + 1])[k] - mesh.vertex(cv[0])[k];
    const double detJ = d == 2 ? J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0) : J.determinant();
    assert(detJ > 0);
    const Eigen::Matrix3d Jinv = J.inverse();
    const double vol = mesh.cell_volume(c);
    const double h = mesh.cell_diameter(c);

    if (want_matrix) Aloc.setZero();
    std::fill(rloc.begin(), rloc.end(), 0.0);
    std::fill(divint.begin(), divint.end(), 0.0);

    for (int q = 0; q < nq; ++q) {
      const double w = quad_.weights[q] * detJ;
      const BasisEval& rq = ref_[q];
      for (int i = 0; i < nb; ++i) {
        phi[i] = rq.values[i];
        for (int k = 0; k < d; ++k) {
          double s = 0;
          for (int l = 0; l < d; ++l) s += rq.gradients(i, l) * Jinv(l, k);
          g[i * d + k] = s;
        }
      }
      if (supg) {
        for (int i = 0; i < nb; ++i) {
          // physical Hessian Jinv^T Href Jinv
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
              double s = 0;
              for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) s += Jinv(a, k) * rq.hessians[i](a, b) * Jinv(b, l);
              H[(i * d + k) * d + l] = s;
            }
          double t = 0;
          for (int k = 0; k < d; ++k) t += H[(i * d + k) * d + k];
          trH[i] = t;
        }
      }

      double u_q[3] = {0, 0, 0}, adv_q[3] = {0, 0, 0}, grad_u[3][3] = {};
      for (int i = 0; i < nb; ++i)
        for (int k = 0; k < d; ++k) {
          const double ci = coef[i * d + k];
          u_q[k] += ci * phi[i];
          for (int e = 0; e < d; ++e) grad_u[k][e] += ci * g[i * d + e];
        }
      if (frozen_advection) {
        for (int i = 0; i < nb; ++i)
          for (int k = 0; k < d; ++k) adv_q[k] += fcoef[i * d + k] * phi[i];
      } else {
        for (int k = 0; k < d; ++k) adv_q[k] = u_q[k];
      }

      std::array<double, 3> f_q{0, 0, 0};
      if (opts.body_force) {
        std::array<double, 3> x{0, 0, 0};
        for (int j = 0; j <= d; ++j)
          for (int k = 0; k < d; ++k) x[k] += quad_.points(q, j) * mesh.vertex(cv[j])[k];
        f_q = opts.body_force(x);
      }

      for (int i = 0; i < nb; ++i) {
        double s = 0;
        for (int k = 0; k < d; ++k) s += adv_q[k] * g[i * d + k];
        adv_dot_g[i] = s;
      }
      if (want_matrix) {
        for (int i = 0; i < nb; ++i)
          for (int j = 0; j <= i; ++j) {
            double s = 0;
            for (int k = 0; k < d; ++k) s += g[i * d + k] * g[j * d + k];
            gg[i * nb + j] = gg[j * nb + i] = s;
          }
      }

      double conv[3] = {0, 0, 0};
      if (advect)
        for (int k = 0; k < d; ++k)
          for (int e = 0; e < d; ++e) conv[k] += adv_q[e] * grad_u[k][e];

      double delta = 0, fac_ddelta = 0, L[3] = {0, 0, 0};
      if (supg) {
        double un2 = 0;
        for (int k = 0; k < d; ++k) un2 += adv_q[k] * adv_q[k];
        const double s =
            4.0 * un2 / (h * h) + 144.0 * par.nu * par.nu / (h * h * h * h);
        delta = par.delta_d / std::sqrt(s);
        fac_ddelta = -4.0 * par.delta_d / (h * h * std::pow(s, 1.5));
        double lap[3] = {0, 0, 0}, gd[3] = {0, 0, 0};
        for (int i = 0; i < nb; ++i)
          for (int k = 0; k < d; ++k) {
            lap[k] += coef[i * d + k] * trH[i];
            for (int e = 0; e < d; ++e) gd[k] += coef[i * d + e] * H[(i * d + e) * d + k];
          }
        for (int k = 0; k < d; ++k) L[k] = -par.nu * (lap[k] + gd[k]) + conv[k] - f_q[k];
      }

      // residual rows
      for (int j = 0; j < nb; ++j) {
        const double tg_j = adv_dot_g[j];
        for (int cc = 0; cc < d; ++cc) {
          double r = 0;
          for (int e = 0; e < d; ++e)
            r += par.nu * (grad_u[cc][e] + grad_u[e][cc]) * g[j * d + e];
          if (advect) r += conv[cc] * phi[j];
          if (supg) r += delta * L[cc] * tg_j;
          if (opts.continuous_graddiv) {
            double divu = 0;
            for (int k = 0; k < d; ++k) divu += grad_u[k][k];
            r += par.gamma * divu * g[j * d + cc];
          }
          r -= f_q[cc] * phi[j];
          rloc[j * d + cc] += w * r;
          divint[j * d + cc] += w * g[j * d + cc];
        }
      }

      if (!want_matrix) continue;

      for (int j = 0; j < nb; ++j) {
        const double tg_j = adv_dot_g[j];
        for (int cc = 0; cc < d; ++cc) {
          const int row = j * d + cc;
          for (int i = 0; i < nb; ++i) {
            const double gic = g[i * d + cc];
            for (int e = 0; e < d; ++e) {
              double m = par.nu * gic * g[j * d + e];
              if (e == cc) m += par.nu * gg[i * nb + j];
              if (advect) {
                if (e == cc) m += adv_dot_g[i] * phi[j];
                if (newton) m += grad_u[cc][e] * phi[i] * phi[j];
              }
              if (supg) {
                double dL = -par.nu * H[(i * d + e) * d + cc];
                if (e == cc) dL += -par.nu * trH[i] + adv_dot_g[i];
                if (newton) dL += phi[i] * grad_u[cc][e];
                double m_supg = delta * dL * tg_j;
                if (newton) {
                  m_supg += fac_ddelta * u_q[e] * phi[i] * L[cc] * tg_j;
                  m_supg += delta * L[cc] * phi[i] * g[j * d + e];
                }
                m += m_supg;
              }
              if (opts.continuous_graddiv) m += par.gamma * g[i * d + e] * g[j * d + cc];
              Aloc(row, i * d + e) += w * m;
            }
          }
        }
      }
    }

    // projected grad-div term and the divergence constraint row
    double udiv = 0;
    for (int i = 0; i < nloc; ++i) udiv += coef[i] * divint[i];
    if (!opts.continuous_graddiv && par.gamma != 0.0) {
      const double fac = par.gamma / vol;
      for (int j = 0; j < nloc; ++j) rloc[j] += fac * udiv * divint[j];
      if (want_matrix)
        for (int j = 0; j < nloc; ++j)
          for (int i = 0; i < nloc; ++i) Aloc(j, i) += fac * divint[i] * divint[j];
    }

    const int prow = pmap_->cell_dofs(c)[0];
    if (out_full) {
      const double pK = state.p[prow];
      for (int j = 0; j < nloc; ++j) rloc[j] -= pK * divint[j];
      out_full->rhs_p[prow] = -udiv;
      out_full->mp[prow] = vol;
      for (int j = 0; j < nloc; ++j) B->set(prow, gdofs[j], -divint[j]);
    } else if (rp) {
      const double pK = state.p[prow];
      for (int j = 0; j < nloc; ++j) rloc[j] -= pK * divint[j];
      (*rp)[prow] = -udiv;
    }

    if (ru)
      for (int j = 0; j < nloc; ++j) (*ru)[gdofs[j]] += rloc[j];
    if (A)
      for (int j = 0; j < nloc; ++j)
        for (int i = 0; i < nloc; ++i)
          if (Aloc(j, i) != 0.0) A->add(gdofs[j], gdofs[i], Aloc(j, i));
  }

  if (A) A->eliminate_symmetric(bc);
  if (B) B->zero_columns(bc);
  if (ru)
    for (int dof : bc) (*ru)[dof] = 0.0;
}

void Assembler::residual(const DiscreteState& state, const AssemblyOptions& opts,
                         const std::vector<int>& bc, Eigen::VectorXd& rhs_u,
                         Eigen::VectorXd& rhs_p, const Eigen::VectorXd* frozen_advection) const {
  assemble_impl(state, opts, bc, frozen_advection, nullptr, &rhs_u, &rhs_p, nullptr);
}

BlockSystem Assembler::assemble(const DiscreteState& state, const AssemblyOptions& opts,
                                const std::vector<int>& bc) const {
  BlockSystem sys;
  assemble_impl(state, opts, bc, nullptr, &sys, nullptr, nullptr, nullptr);
  return sys;
}

CsrMatrix Assembler::momentum_matrix(const Eigen::VectorXd& u, const AssemblyOptions& opts,
                                     const std::vector<int>& bc) const {
  DiscreteState state;
  state.u = u;
  CsrMatrix A;
  assemble_impl(state, opts, bc, nullptr, nullptr, nullptr, nullptr, &A);
  return A;
}

Eigen::VectorXd Assembler::p0_divergence(const Eigen::VectorXd& u) const {
  const MeshLevel& mesh = *mesh_;
  const int d = mesh.dim;
  const int nb = umap_->dofs_per_cell();
  Eigen::VectorXd out(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int* cd = umap_->cell_dofs(c);
    const int* cv = mesh.cell(c);
    Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) J(k, l) = mesh.vertex(cv[l + 1])[k] - mesh.vertex(cv[0])[k];
    const double detJ = d == 2 ? J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0) : J.determinant();
    const Eigen::Matrix3d Jinv = J.inverse();
    double acc = 0;
    for (int q = 0; q < quad_.size(); ++q) {
      const BasisEval& rq = ref_[q];
      double divu = 0;
      for (int i = 0; i < nb; ++i)
        for (int k = 0; k < d; ++k) {
          double gk = 0;
          for (int l = 0; l < d; ++l) gk += rq.gradients(i, l) * Jinv(l, k);
          divu += u[umap_->global(cd[i], k)] * gk;
        }
      acc += quad_.weights[q] * detJ * divu;
    }
    out[c] = acc / mesh.cell_volume(c);
  }
  return out;
}

}  // namespace alns
