#include "alns/dofmap.hpp"

#include <algorithm>
#include <cassert>

#include "alns/errors.hpp"

namespace alns {

namespace {

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

DofMap::DofMap(const MeshLevel& mesh, const ElementSpec& spec) : mesh_(&mesh), spec_(spec) {
  spec_.validate();
  if (spec.dim != mesh.dim) throw Error("DofMap: element and mesh dimension mismatch");
  const int d = mesh.dim;
  nb_ = n_scalar_basis(spec_);

  int vertex_dofs = 0;
  switch (spec_.family) {
    case Family::P0: cell_dofs_per_ = 1; break;
    case Family::P1: vertex_dofs = 1; break;
    case Family::P2: vertex_dofs = 1; edge_dofs_ = 1; break;
    case Family::P3:
      vertex_dofs = 1;
      edge_dofs_ = 2;
      if (d == 2) cell_dofs_per_ = 1;
      else facet_dofs_ = 1;
      break;
    case Family::P1FacetBubble: vertex_dofs = 1; facet_dofs_ = 1; break;
    case Family::P2FacetBubble: vertex_dofs = 1; edge_dofs_ = 1; facet_dofs_ = 1; break;
  }

  const int nv = mesh.n_vertices(), ne = mesh.n_edges(), nf = mesh.n_facets(), nc = mesh.n_cells();
  edge_offset_ = vertex_dofs * nv;
  facet_offset_ = edge_offset_ + edge_dofs_ * ne;
  cell_offset_ = facet_offset_ + facet_dofs_ * nf;
  n_scalar_ = cell_offset_ + cell_dofs_per_ * nc;

  // Per-cell scalar dofs in element basis order. P3 edge dofs follow the
  // global edge orientation (first dof nearest the lower-id vertex).
  const auto& layout = local_dof_layout(spec_);
  cell_dofs_.resize(static_cast<std::size_t>(nc) * nb_);
  for (int c = 0; c < nc; ++c) {
    const int* cv = mesh.cell(c);
    for (int i = 0; i < nb_; ++i) {
      const LocalDof& ld = layout[i];
      int s = -1;
      switch (ld.kind) {
        case EntityKind::Vertex: s = cv[ld.entity]; break;
        case EntityKind::Edge: {
          int e;
          if (d == 2)
            e = mesh.cell_facet_ids(c)[3 - local_edge_vertices(2, ld.entity)[0] -
                                       local_edge_vertices(2, ld.entity)[1]];
          else
            e = mesh.cell_edge_ids(c)[ld.entity];
          int k = ld.index_on_entity;
          if (edge_dofs_ == 2) {
            const int* lv = local_edge_vertices(d, ld.entity);
            if (cv[lv[0]] > cv[lv[1]]) k = 1 - k;
          }
          s = edge_offset_ + edge_dofs_ * e + k;
          break;
        }
        case EntityKind::Facet: s = facet_offset_ + mesh.cell_facet_ids(c)[ld.entity]; break;
        case EntityKind::Cell: s = cell_offset_ + c; break;
      }
      cell_dofs_[static_cast<std::size_t>(c) * nb_ + i] = s;
    }
  }

  if (d == 3 && (edge_dofs_ > 0 || facet_dofs_ > 0)) {
    edge_lookup_.reserve(mesh.edges.size());
    for (int e = 0; e < ne; ++e)
      edge_lookup_.emplace(pair_key(mesh.edges[e][0], mesh.edges[e][1]), e);
  }

  // Nodes and dual functionals.
  points_.assign(n_scalar_, {0, 0, 0});
  functionals_.assign(n_scalar_, {});
  auto point_of_vertex = [&](int v) {
    std::array<double, 3> p{0, 0, 0};
    for (int k = 0; k < d; ++k) p[k] = mesh.vertex(v)[k];
    return p;
  };
  auto combine = [&](std::initializer_list<std::pair<std::array<double, 3>, double>> pts) {
    std::array<double, 3> p{0, 0, 0};
    for (const auto& [x, w] : pts)
      for (int k = 0; k < 3; ++k) p[k] += w * x[k];
    return p;
  };

  if (vertex_dofs) {
    for (int v = 0; v < nv; ++v) {
      points_[v] = point_of_vertex(v);
      functionals_[v].terms = {{points_[v], 1.0}};
    }
  }
  for (int e = 0; e < ne && edge_dofs_; ++e) {
    const auto ev = mesh.edge_vertices(e);
    const auto a = point_of_vertex(std::min(ev[0], ev[1]));
    const auto b = point_of_vertex(std::max(ev[0], ev[1]));
    if (edge_dofs_ == 1) {
      const int s = edge_offset_ + e;
      points_[s] = combine({{a, 0.5}, {b, 0.5}});
      functionals_[s].terms = {{points_[s], 1.0}};
    } else {
      for (int k = 0; k < 2; ++k) {
        const int s = edge_offset_ + 2 * e + k;
        points_[s] = k == 0 ? combine({{a, 2.0 / 3.0}, {b, 1.0 / 3.0}})
                            : combine({{a, 1.0 / 3.0}, {b, 2.0 / 3.0}});
        functionals_[s].terms = {{points_[s], 1.0}};
      }
    }
  }
  for (int f = 0; f < nf && facet_dofs_; ++f) {
    const int s = facet_offset_ + f;
    const auto a = point_of_vertex(mesh.facet(f)[0]);
    const auto b = point_of_vertex(mesh.facet(f)[1]);
    const auto c = point_of_vertex(mesh.facet(f)[2]);
    const double third = 1.0 / 3.0;
    points_[s] = combine({{a, third}, {b, third}, {c, third}});
    auto& terms = functionals_[s].terms;
    terms = {{points_[s], 1.0}};
    if (spec_.family == Family::P1FacetBubble) {
      terms.push_back({a, -third});
      terms.push_back({b, -third});
      terms.push_back({c, -third});
    } else if (spec_.family == Family::P2FacetBubble) {
      // subtract the quadratic interpolant at the barycenter
      terms.push_back({a, 1.0 / 9.0});
      terms.push_back({b, 1.0 / 9.0});
      terms.push_back({c, 1.0 / 9.0});
      terms.push_back({combine({{a, 0.5}, {b, 0.5}}), -4.0 / 9.0});
      terms.push_back({combine({{a, 0.5}, {c, 0.5}}), -4.0 / 9.0});
      terms.push_back({combine({{b, 0.5}, {c, 0.5}}), -4.0 / 9.0});
    } else {
      // P3 facet node: plain Lagrange point evaluation
    }
  }
  for (int c = 0; c < nc && cell_dofs_per_; ++c) {
    const int s = cell_offset_ + c;
    std::array<double, 3> p{0, 0, 0};
    for (int i = 0; i <= d; ++i)
      for (int k = 0; k < d; ++k) p[k] += mesh.vertex(mesh.cell(c)[i])[k] / (d + 1);
    points_[s] = p;
    functionals_[s].terms = {{p, 1.0}};
  }
}

EntityKind DofMap::scalar_kind(int s) const {
  if (s >= cell_offset_ && cell_dofs_per_) return EntityKind::Cell;
  if (s >= facet_offset_ && facet_dofs_) return EntityKind::Facet;
  if (s >= edge_offset_ && edge_dofs_) return EntityKind::Edge;
  return EntityKind::Vertex;
}

int DofMap::scalar_entity(int s) const {
  switch (scalar_kind(s)) {
    case EntityKind::Cell: return s - cell_offset_;
    case EntityKind::Facet: return s - facet_offset_;
    case EntityKind::Edge: return (s - edge_offset_) / edge_dofs_;
    default: return s;
  }
}

std::vector<int> DofMap::boundary_dofs(const std::vector<std::string>& markers) const {
  std::vector<int> dofs;
  for (int s : boundary_scalar_dofs(markers))
    for (int c = 0; c < spec_.value_size; ++c) dofs.push_back(global(s, c));
  return dofs;
}

std::vector<int> DofMap::boundary_scalar_dofs(const std::vector<std::string>& markers) const {
  const MeshLevel& mesh = *mesh_;
  const int d = mesh.dim;
  std::vector<char> want(mesh.marker_names.size(), 0);
  for (const auto& name : markers) {
    const int id = mesh.marker_id(name);
    if (id < 0) throw Error("boundary_dofs: unknown marker '" + name + "'");
    want[id] = 1;
  }
  std::vector<int> scalars;
  for (int f = 0; f < mesh.n_facets(); ++f) {
    if (mesh.facet_marker[f] < 0 || !want[mesh.facet_marker[f]]) continue;
    const int* fv = mesh.facet(f);
    if (spec_.family != Family::P0)
      for (int j = 0; j < d; ++j) scalars.push_back(fv[j]);
    if (edge_dofs_) {
      if (d == 2) {
        for (int k = 0; k < edge_dofs_; ++k) scalars.push_back(edge_offset_ + edge_dofs_ * f + k);
      } else {
        const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (const auto& pr : pairs) {
          const auto it = edge_lookup_.find(pair_key(fv[pr[0]], fv[pr[1]]));
          assert(it != edge_lookup_.end());
          for (int k = 0; k < edge_dofs_; ++k)
            scalars.push_back(edge_offset_ + edge_dofs_ * it->second + k);
        }
      }
    }
    if (facet_dofs_) scalars.push_back(facet_offset_ + f);
  }
  std::sort(scalars.begin(), scalars.end());
  scalars.erase(std::unique(scalars.begin(), scalars.end()), scalars.end());
  return scalars;
}

std::vector<int> DofMap::scalar_support(int s) const {
  const MeshLevel& mesh = *mesh_;
  std::vector<int> cells;
  switch (scalar_kind(s)) {
    case EntityKind::Vertex:
      cells = vertex_star(mesh, s);
      break;
    case EntityKind::Cell:
      cells = {scalar_entity(s)};
      break;
    case EntityKind::Facet: {
      const int f = scalar_entity(s);
      cells.push_back(mesh.facet_cells[f][0]);
      if (mesh.facet_cells[f][1] >= 0) cells.push_back(mesh.facet_cells[f][1]);
      std::sort(cells.begin(), cells.end());
      break;
    }
    case EntityKind::Edge: {
      const auto ev = mesh.edge_vertices(scalar_entity(s));
      const auto sa = vertex_star(mesh, ev[0]);
      const auto sb = vertex_star(mesh, ev[1]);
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(cells));
      break;
    }
  }
  return cells;
}

std::vector<std::vector<int>> cell_children(const MeshLevel& fine, int n_coarse_cells) {
  if (!fine.has_genealogy()) throw Error("cell_children: fine mesh has no genealogy");
  std::vector<std::vector<int>> out(n_coarse_cells);
  for (int c = 0; c < fine.n_cells(); ++c) out[fine.parent_cell[c]].push_back(c);
  return out;
}

std::vector<int> interior_dofs_of_coarse_cell(const DofMap& fine_map, const MeshLevel& coarse,
                                              int coarse_cell, const std::vector<int>& children) {
  const MeshLevel& fine = fine_map.mesh();
  if (!fine.has_genealogy()) throw Error("interior_dofs_of_coarse_cell: missing genealogy");
  const int d = fine.dim;
  const int* tv = coarse.cell(coarse_cell);

  // Coarse facet vertex sets of this cell, as local bitmasks over fine
  // vertices' parent entities.
  auto facet_mask_of_fine_vertex = [&](int v) -> unsigned {
    const ParentVertex pv = fine.vertex_parent[v];
    unsigned mask = 0;
    for (int k = 0; k <= d; ++k) {
      const int* lf = local_facet_vertices(d, k);
      bool contains;
      if (pv.kind == ParentVertex::Kind::Vertex) {
        contains = false;
        for (int j = 0; j < d; ++j) contains |= (tv[lf[j]] == pv.id);
      } else {
        const auto ev = coarse.edge_vertices(pv.id);
        bool a = false, b = false;
        for (int j = 0; j < d; ++j) {
          a |= (tv[lf[j]] == ev[0]);
          b |= (tv[lf[j]] == ev[1]);
        }
        contains = a && b;
      }
      if (contains) mask |= (1u << k);
    }
    return mask;
  };

  const auto& layout = local_dof_layout(fine_map.spec());
  std::vector<int> scalars;
  for (int child : children) {
    const int* cd = fine_map.cell_dofs(child);
    const int* cv = fine.cell(child);
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const LocalDof& ld = layout[i];
      unsigned mask = ~0u;
      switch (ld.kind) {
        case EntityKind::Cell: mask = 0; break;
        case EntityKind::Vertex: mask = facet_mask_of_fine_vertex(cv[ld.entity]); break;
        case EntityKind::Edge: {
          const int* lv = local_edge_vertices(d, ld.entity);
          mask = facet_mask_of_fine_vertex(cv[lv[0]]) & facet_mask_of_fine_vertex(cv[lv[1]]);
          break;
        }
        case EntityKind::Facet: {
          const int* lf = local_facet_vertices(d, ld.entity);
          mask = facet_mask_of_fine_vertex(cv[lf[0]]) & facet_mask_of_fine_vertex(cv[lf[1]]);
          if (d == 3) mask &= facet_mask_of_fine_vertex(cv[lf[2]]);
          break;
        }
      }
      if (mask == 0) scalars.push_back(cd[i]);
    }
  }
  std::sort(scalars.begin(), scalars.end());
  scalars.erase(std::unique(scalars.begin(), scalars.end()), scalars.end());
  std::vector<int> dofs;
  for (int s : scalars)
    for (int c = 0; c < fine_map.spec().value_size; ++c) dofs.push_back(fine_map.global(s, c));
  return dofs;
}

std::vector<int> interior_dofs_of_coarse_cell(const DofMap& fine_map, const MeshLevel& coarse,
                                              int coarse_cell) {
  const auto children = cell_children(fine_map.mesh(), coarse.n_cells());
  return interior_dofs_of_coarse_cell(fine_map, coarse, coarse_cell, children[coarse_cell]);
}

}  // namespace alns
