#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace alns {

/// Parent entity of a fine vertex: either a coarse vertex or the coarse edge
/// whose midpoint it is. In 2D "edge" ids index the facet array (facets and
/// edges coincide).
struct ParentVertex {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  int id = -1;
};

/// One level of a simplicial mesh. Cells are triangles (dim 2) or tetrahedra
/// (dim 3) stored as vertex tuples with positive signed volume. Facets are
/// stored with sorted vertex ids; orientation is recovered from the adjacent
/// cell when needed. Immutable after construction.
struct MeshLevel {
  int dim = 0;
  std::vector<double> coords;   // n_vertices * dim
  std::vector<int> cells;       // n_cells * (dim+1)
  std::vector<int> facets;      // n_facets * dim, each sorted
  std::vector<std::array<int, 2>> facet_cells;  // second = -1 on the boundary
  std::vector<int> facet_marker;                // -1 interior, else marker_names index
  std::vector<std::string> marker_names;
  std::vector<std::array<int, 2>> edges;        // 3D only; sorted pairs

  // cell -> facet ids; local facet k is opposite local vertex k
  std::vector<int> cell_facets;
  // 3D: cell -> edge ids in local order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
  std::vector<int> cell_edges;
  // vertex -> incident cells (CSR)
  std::vector<int> vertex_cell_offsets, vertex_cell_ids;

  // Refinement genealogy; empty on a root level.
  std::vector<int> parent_cell;            // per cell
  std::vector<ParentVertex> vertex_parent; // per vertex
  std::vector<int> facet_parent;           // per facet, -1 if not inside a coarse facet

  int n_vertices() const { return static_cast<int>(coords.size()) / dim; }
  int n_cells() const { return static_cast<int>(cells.size()) / (dim + 1); }
  int n_facets() const { return static_cast<int>(facets.size()) / dim; }
  int n_edges() const { return dim == 2 ? n_facets() : static_cast<int>(edges.size()); }
  bool has_genealogy() const { return !parent_cell.empty(); }

  const double* vertex(int v) const { return &coords[static_cast<std::size_t>(v) * dim]; }
  const int* cell(int c) const { return &cells[static_cast<std::size_t>(c) * (dim + 1)]; }
  const int* facet(int f) const { return &facets[static_cast<std::size_t>(f) * dim]; }
  std::array<int, 2> edge_vertices(int e) const;
  const int* cell_facet_ids(int c) const { return &cell_facets[static_cast<std::size_t>(c) * (dim + 1)]; }
  const int* cell_edge_ids(int c) const;  // 3D: 6 entries; 2D: use cell_facet_ids
  int marker_id(const std::string& name) const;  // -1 if unknown

  // Geometry
  double cell_volume(int c) const;    // positive by the orientation invariant
  double cell_diameter(int c) const;  // longest edge
  double facet_area(int f) const;
  // Unit normal of facet f pointing out of cell c (c must be adjacent).
  std::array<double, 3> facet_normal(int f, int c) const;
  // Barycentric coordinates of physical point x with respect to cell c.
  std::array<double, 4> barycentric(int c, const double* x) const;
};

// Local facet vertex tables: facet k of a simplex is opposite local vertex k.
const int* local_facet_vertices(int dim, int k);
// Local edges: 2D (0,1),(0,2),(1,2); 3D (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
const int* local_edge_vertices(int dim, int k);
int n_local_edges(int dim);

/// Assembles topology (facets, adjacency, edges) from raw vertices/cells and
/// assigns boundary markers via the callback (called with the facet centroid).
/// Every generator and the file loader funnel through here, so entity
/// numbering is deterministic: ids follow first appearance in cell order.
MeshLevel build_from_cells(int dim, std::vector<double> coords, std::vector<int> cells,
                           const std::function<std::string(const double*)>& boundary_marker);

/// Axis-aligned box subdivided into simplices. 2D: each quad is split by the
/// negative-slope diagonal. 3D: each cube is split into 6 tetrahedra sharing
/// the main diagonal (Kuhn), so faces of neighboring cubes match. Boundary
/// markers: "x_min", "x_max", "y_min", ... per box face.
MeshLevel build_structured_grid(int dim, const std::array<double, 3>& lo,
                                const std::array<double, 3>& hi, const std::array<int, 3>& n);

/// Same simplex splitting over an arbitrary set of lattice cubes (origin +
/// spacing * index). Used for stepped domains.
MeshLevel build_lattice_grid(int dim, const std::vector<std::array<int, 3>>& lattice_cells,
                             const std::array<double, 3>& origin, double spacing,
                             const std::function<std::string(const double*)>& boundary_marker);

/// Regular refinement: triangles split into 4 congruent children; tetrahedra
/// into 4 corner children plus 4 from the interior octahedron, split along
/// its shortest diagonal (ties broken by lowest vertex index). Boundary
/// markers are inherited and genealogy is recorded.
MeshLevel refine_uniform(const MeshLevel& coarse);

/// Cells sharing a vertex, in increasing cell order.
std::vector<int> vertex_star(const MeshLevel& mesh, int vertex_id);

struct MeshHierarchy {
  std::vector<MeshLevel> levels;  // coarse to fine
  static MeshHierarchy build(MeshLevel coarse, int refinements);
  const MeshLevel& finest() const { return levels.back(); }
  int n_levels() const { return static_cast<int>(levels.size()); }
};

}  // namespace alns
