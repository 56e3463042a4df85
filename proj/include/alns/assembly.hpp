#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "alns/dofmap.hpp"
#include "alns/quadrature.hpp"
#include "alns/sparse.hpp"

namespace alns {

struct PhysicalParams {
  double nu = 1.0;       // kinematic viscosity, > 0
  double gamma = 1e4;    // grad-div parameter, >= 0
  double delta_d = 1.0;  // streamline-stabilization prefactor
  double re = 0.0;       // Reynolds number, bookkeeping only
};

enum class Linearization { Newton, Picard };

using ForceField = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

struct AssemblyOptions {
  PhysicalParams params;
  bool advection = true;
  bool supg = true;  // only active together with advection
  Linearization linearization = Linearization::Newton;
  bool continuous_graddiv = false;  // pointwise div-div instead of the projected term
  ForceField body_force;            // null = zero
};

struct DiscreteState {
  Eigen::VectorXd u, p;
};

struct BlockSystem {
  CsrMatrix A;            // velocity-velocity block, constraints eliminated
  CsrMatrix B;            // pressure-velocity divergence block, bc columns zeroed
  Eigen::VectorXd mp;     // pressure mass diagonal (cell volumes)
  Eigen::VectorXd rhs_u;  // residual, momentum rows (zero at Dirichlet dofs)
  Eigen::VectorXd rhs_p;  // residual, constraint rows
  std::vector<int> bc;    // sorted Dirichlet velocity dofs
};

/// Stabilization weight delta(u) = delta_d / sqrt(4|u|^2/h^2 + 144 nu^2/h^4),
/// with h the cell diameter and |u| the local speed.
double supg_delta(double u_norm, double h, const PhysicalParams& params);

/// Assembles the residual and Jacobian blocks of the stabilized, grad-div
/// augmented weak form. The velocity state must already carry its Dirichlet
/// values; constrained rows/columns are eliminated symmetrically with unit
/// diagonal and the corresponding residual entries zeroed.
class Assembler {
 public:
  Assembler(const MeshLevel& mesh, const DofMap& umap, const DofMap& pmap);

  const MeshLevel& mesh() const { return *mesh_; }
  const DofMap& umap() const { return *umap_; }
  const DofMap& pmap() const { return *pmap_; }

  // Residual only. `frozen_advection`, when given, supplies the velocity
  // field used in the advecting slots (transport coefficient, delta weight,
  // and the streamline test direction); the result is then affine in the
  // state, which is what the Picard matrix is the derivative of.
  void residual(const DiscreteState& state, const AssemblyOptions& opts,
                const std::vector<int>& bc, Eigen::VectorXd& rhs_u, Eigen::VectorXd& rhs_p,
                const Eigen::VectorXd* frozen_advection = nullptr) const;

  // Residual + Jacobian blocks.
  BlockSystem assemble(const DiscreteState& state, const AssemblyOptions& opts,
                       const std::vector<int>& bc) const;

  // Momentum block only (used on coarse levels where only the velocity
  // operator is rediscretized).
  CsrMatrix momentum_matrix(const Eigen::VectorXd& u, const AssemblyOptions& opts,
                            const std::vector<int>& bc) const;

  // Per-cell mean divergence of a velocity field.
  Eigen::VectorXd p0_divergence(const Eigen::VectorXd& u) const;

  const QuadratureRule& quadrature() const { return quad_; }

 private:
  void assemble_impl(const DiscreteState& state, const AssemblyOptions& opts,
                     const std::vector<int>& bc, const Eigen::VectorXd* frozen_advection,
                     BlockSystem* out_full, Eigen::VectorXd* out_ru, Eigen::VectorXd* out_rp,
                     CsrMatrix* out_A) const;

  const MeshLevel* mesh_;
  const DofMap* umap_;
  const DofMap* pmap_;
  QuadratureRule quad_;
  // reference basis data at quadrature points
  std::vector<BasisEval> ref_;
  CsrMatrix a_pattern_, b_pattern_;
};

}  // namespace alns
