#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "alns/element.hpp"
#include "alns/mesh.hpp"

namespace alns {

/// Point-evaluation representation of the dual basis: ell(g) = sum_k w_k *
/// g(x_k). Lagrange dofs are a single unit term at the node; hierarchical
/// bubble coefficients subtract the lower-order interpolant at the facet
/// barycenter.
struct DofFunctional {
  struct Term {
    std::array<double, 3> point;
    double weight;
  };
  std::vector<Term> terms;
};

/// Global scalar degrees of freedom for one element space on one mesh level.
/// Vector-valued spaces are blocked per scalar dof: global index =
/// scalar_index * value_size + component.
class DofMap {
 public:
  DofMap(const MeshLevel& mesh, const ElementSpec& spec);

  const MeshLevel& mesh() const { return *mesh_; }
  const ElementSpec& spec() const { return spec_; }
  int n_scalar() const { return n_scalar_; }
  int ndofs() const { return n_scalar_ * spec_.value_size; }
  int global(int scalar, int comp) const { return scalar * spec_.value_size + comp; }

  // Scalar dof ids of a cell, aligned with the element basis ordering.
  const int* cell_dofs(int c) const { return &cell_dofs_[static_cast<std::size_t>(c) * nb_]; }
  int dofs_per_cell() const { return nb_; }

  EntityKind scalar_kind(int s) const;
  int scalar_entity(int s) const;
  const std::array<double, 3>& scalar_point(int s) const { return points_[s]; }
  const DofFunctional& functional(int s) const { return functionals_[s]; }

  // All dofs (component-expanded, sorted) on facets carrying any of the
  // markers.
  std::vector<int> boundary_dofs(const std::vector<std::string>& markers) const;
  // Same, but scalar dof ids.
  std::vector<int> boundary_scalar_dofs(const std::vector<std::string>& markers) const;

  // Cells supporting the basis function of scalar dof s (cells containing its
  // entity), sorted.
  std::vector<int> scalar_support(int s) const;

 private:
  const MeshLevel* mesh_;
  ElementSpec spec_;
  int nb_ = 0;
  int n_scalar_ = 0;
  int edge_dofs_ = 0;   // scalar dofs per edge
  int facet_dofs_ = 0;  // scalar dofs per facet (3D families with facet dofs)
  int cell_dofs_per_ = 0;
  int edge_offset_ = 0, facet_offset_ = 0, cell_offset_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<std::array<double, 3>> points_;
  std::vector<DofFunctional> functionals_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;  // 3D: vertex pair -> edge id

  friend std::vector<int> interior_dofs_of_coarse_cell(const DofMap&, const MeshLevel&, int,
                                                       const std::vector<int>&);
};

/// children[t] = fine cells whose parent is coarse cell t.
std::vector<std::vector<int>> cell_children(const MeshLevel& fine, int n_coarse_cells);

/// Component-expanded fine dofs whose basis functions vanish on the boundary
/// of the given coarse cell: dofs attached to entities strictly interior to
/// it. Requires refinement genealogy on the fine mesh.
std::vector<int> interior_dofs_of_coarse_cell(const DofMap& fine_map, const MeshLevel& coarse,
                                              int coarse_cell, const std::vector<int>& children);
std::vector<int> interior_dofs_of_coarse_cell(const DofMap& fine_map, const MeshLevel& coarse,
                                              int coarse_cell);

}  // namespace alns
