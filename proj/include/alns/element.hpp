#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace alns {

enum class Family { P0, P1, P2, P3, P1FacetBubble, P2FacetBubble };

std::string family_name(Family f);

struct ElementSpec {
  Family family = Family::P1;
  int dim = 2;
  int value_size = 1;  // 1 (scalar) or dim (vector)

  bool continuous() const { return family != Family::P0; }
  bool has_bubbles() const {
    return family == Family::P1FacetBubble || family == Family::P2FacetBubble;
  }
  // Polynomial degree of the span (bubbles are cubic).
  int degree() const;
  void validate() const;  // throws on unsupported family/dim combinations
};

/// Which mesh entity a scalar basis function is attached to, in the local
/// numbering of a reference cell.
enum class EntityKind { Vertex, Edge, Facet, Cell };

struct LocalDof {
  EntityKind kind;
  int entity;       // local vertex/edge/facet index (0 for Cell)
  int index_on_entity;  // 0 or 1 (two dofs per edge for P3)
};

/// Reference basis evaluated at one barycentric point: values, gradients and
/// Hessians with respect to the reference coordinates (x_i = lambda_{i+1}).
struct BasisEval {
  Eigen::VectorXd values;
  Eigen::MatrixXd gradients;             // n x dim
  std::vector<Eigen::MatrixXd> hessians;  // n entries of dim x dim
};

int n_scalar_basis(const ElementSpec& spec);
const std::vector<LocalDof>& local_dof_layout(const ElementSpec& spec);

/// Evaluates the scalar basis at a barycentric point (dim+1 coordinates,
/// nonnegative up to round-off, summing to 1). The basis is hierarchical for
/// the enriched families: Lagrange part first, then one bubble per facet,
/// each scaled to peak at 1 on its facet barycenter. Throws if the point lies
/// outside the closed reference simplex.
BasisEval eval_basis(const ElementSpec& spec, const double* barycentric);

}  // namespace alns
