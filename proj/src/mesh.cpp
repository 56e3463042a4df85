#include "alns/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>

#include "alns/errors.hpp"

namespace alns {

namespace {

constexpr int kFacet2d[3][2] = {{1, 2}, {0, 2}, {0, 1}};
constexpr int kFacet3d[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
constexpr int kEdge2d[3][2] = {{0, 1}, {0, 2}, {1, 2}};
constexpr int kEdge3d[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

inline std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

inline double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double signed_volume(int dim, const double* a, const double* b, const double* c,
                     const double* d = nullptr) {
  if (dim == 2) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
  }
  double m[3][3];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = b[i] - a[i];
    m[i][1] = c[i] - a[i];
    m[i][2] = d[i] - a[i];
  }
  return det3(m) / 6.0;
}

double dist(int dim, const double* a, const double* b) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

const int* local_facet_vertices(int dim, int k) {
  return dim == 2 ? kFacet2d[k] : kFacet3d[k];
}

const int* local_edge_vertices(int dim, int k) {
  return dim == 2 ? kEdge2d[k] : kEdge3d[k];
}

int n_local_edges(int dim) { return dim == 2 ? 3 : 6; }

std::array<int, 2> MeshLevel::edge_vertices(int e) const {
  if (dim == 2) return {facets[2 * e], facets[2 * e + 1]};
  return edges[e];
}

const int* MeshLevel::cell_edge_ids(int c) const {
  assert(dim == 3);
  return &cell_edges[static_cast<std::size_t>(c) * 6];
}

int MeshLevel::marker_id(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(marker_names.size()); ++i)
    if (marker_names[i] == name) return i;
  return -1;
}

double MeshLevel::cell_volume(int c) const {
  const int* v = cell(c);
  return dim == 2 ? signed_volume(2, vertex(v[0]), vertex(v[1]), vertex(v[2]))
                  : signed_volume(3, vertex(v[0]), vertex(v[1]), vertex(v[2]), vertex(v[3]));
}

double MeshLevel::cell_diameter(int c) const {
  const int* v = cell(c);
  double h = 0.0;
  for (int i = 0; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) h = std::max(h, dist(dim, vertex(v[i]), vertex(v[j])));
  return h;
}

double MeshLevel::facet_area(int f) const {
  const int* v = facet(f);
  if (dim == 2) return dist(2, vertex(v[0]), vertex(v[1]));
  const double *a = vertex(v[0]), *b = vertex(v[1]), *c = vertex(v[2]);
  double u[3], w[3], n[3];
  for (int k = 0; k < 3; ++k) {
    u[k] = b[k] - a[k];
    w[k] = c[k] - a[k];
  }
  n[0] = u[1] * w[2] - u[2] * w[1];
  n[1] = u[2] * w[0] - u[0] * w[2];
  n[2] = u[0] * w[1] - u[1] * w[0];
  return 0.5 * std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

std::array<double, 3> MeshLevel::facet_normal(int f, int c) const {
  const int* fv = facet(f);
  std::array<double, 3> n{0, 0, 0};
  if (dim == 2) {
    const double *a = vertex(fv[0]), *b = vertex(fv[1]);
    const double len = dist(2, a, b);
    n = {(b[1] - a[1]) / len, -(b[0] - a[0]) / len, 0.0};
  } else {
    const double *a = vertex(fv[0]), *b = vertex(fv[1]), *d = vertex(fv[2]);
    double u[3], w[3];
    for (int k = 0; k < 3; ++k) {
      u[k] = b[k] - a[k];
      w[k] = d[k] - a[k];
    }
    n = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& x : n) x /= len;
  }
  // Orient away from the cell: flip if it points toward the opposite vertex.
  const int* cv = cell(c);
  int opp = -1;
  for (int i = 0; i <= dim; ++i) {
    bool in_facet = false;
    for (int j = 0; j < dim; ++j) in_facet |= (cv[i] == fv[j]);
    if (!in_facet) {
      opp = cv[i];
      break;
    }
  }
  assert(opp >= 0);
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += n[k] * (vertex(opp)[k] - vertex(fv[0])[k]);
  if (s > 0)
    for (auto& x : n) x = -x;
  return n;
}

std::array<double, 4> MeshLevel::barycentric(int c, const double* x) const {
  const int* v = cell(c);
  std::array<double, 4> lam{0, 0, 0, 0};
  const double vol = cell_volume(c);
  if (dim == 2) {
    lam[0] = signed_volume(2, x, vertex(v[1]), vertex(v[2])) / vol;
    lam[1] = signed_volume(2, vertex(v[0]), x, vertex(v[2])) / vol;
    lam[2] = 1.0 - lam[0] - lam[1];
  } else {
    lam[0] = signed_volume(3, x, vertex(v[1]), vertex(v[2]), vertex(v[3])) / vol;
    lam[1] = signed_volume(3, vertex(v[0]), x, vertex(v[2]), vertex(v[3])) / vol;
    lam[2] = signed_volume(3, vertex(v[0]), vertex(v[1]), x, vertex(v[3])) / vol;
    lam[3] = 1.0 - lam[0] - lam[1] - lam[2];
  }
  return lam;
}

MeshLevel build_from_cells(int dim, std::vector<double> coords, std::vector<int> cells,
                           const std::function<std::string(const double*)>& boundary_marker) {
  if (dim != 2 && dim != 3) throw Error("mesh: dim must be 2 or 3");
  MeshLevel m;
  m.dim = dim;
  m.coords = std::move(coords);
  m.cells = std::move(cells);
  const int nc = m.n_cells();
  const int nv = m.n_vertices();

  for (int c = 0; c < nc; ++c) {
    const int* v = m.cell(c);
    for (int i = 0; i <= dim; ++i)
      if (v[i] < 0 || v[i] >= nv) throw Error("mesh: cell vertex id out of range");
    if (m.cell_volume(c) <= 0.0)
      throw Error("mesh: cell " + std::to_string(c) + " has non-positive volume");
  }

  // Facets, keyed by sorted vertex tuple; ids in order of first appearance.
  std::unordered_map<std::uint64_t, int> fmap2;
  std::map<std::array<int, 3>, int> fmap3;
  m.cell_facets.assign(static_cast<std::size_t>(nc) * (dim + 1), -1);
  for (int c = 0; c < nc; ++c) {
    const int* v = m.cell(c);
    for (int k = 0; k <= dim; ++k) {
      const int* lf = local_facet_vertices(dim, k);
      int fid;
      if (dim == 2) {
        int a = v[lf[0]], b = v[lf[1]];
        auto [it, inserted] = fmap2.try_emplace(pair_key(a, b), m.n_facets());
        fid = it->second;
        if (inserted) {
          if (a > b) std::swap(a, b);
          m.facets.push_back(a);
          m.facets.push_back(b);
          m.facet_cells.push_back({c, -1});
        } else {
          if (m.facet_cells[fid][1] != -1) throw Error("mesh: facet shared by >2 cells");
          m.facet_cells[fid][1] = c;
        }
      } else {
        std::array<int, 3> key{v[lf[0]], v[lf[1]], v[lf[2]]};
        std::sort(key.begin(), key.end());
        auto [it, inserted] = fmap3.try_emplace(key, m.n_facets());
        fid = it->second;
        if (inserted) {
          m.facets.insert(m.facets.end(), key.begin(), key.end());
          m.facet_cells.push_back({c, -1});
        } else {
          if (m.facet_cells[fid][1] != -1) throw Error("mesh: facet shared by >2 cells");
          m.facet_cells[fid][1] = c;
        }
      }
      m.cell_facets[static_cast<std::size_t>(c) * (dim + 1) + k] = fid;
    }
  }

  if (dim == 3) {
    std::unordered_map<std::uint64_t, int> emap;
    m.cell_edges.assign(static_cast<std::size_t>(nc) * 6, -1);
    for (int c = 0; c < nc; ++c) {
      const int* v = m.cell(c);
      for (int k = 0; k < 6; ++k) {
        const int* le = local_edge_vertices(3, k);
        int a = v[le[0]], b = v[le[1]];
        auto [it, inserted] = emap.try_emplace(pair_key(a, b), static_cast<int>(m.edges.size()));
        if (inserted) m.edges.push_back({std::min(a, b), std::max(a, b)});
        m.cell_edges[static_cast<std::size_t>(c) * 6 + k] = it->second;
      }
    }
  }

  // Vertex -> cell adjacency.
  m.vertex_cell_offsets.assign(nv + 1, 0);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i <= dim; ++i) ++m.vertex_cell_offsets[m.cell(c)[i] + 1];
  for (int v = 0; v < nv; ++v) m.vertex_cell_offsets[v + 1] += m.vertex_cell_offsets[v];
  m.vertex_cell_ids.resize(m.vertex_cell_offsets[nv]);
  {
    std::vector<int> cursor(m.vertex_cell_offsets.begin(), m.vertex_cell_offsets.end() - 1);
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i <= dim; ++i) m.vertex_cell_ids[cursor[m.cell(c)[i]]++] = c;
  }
  for (int v = 0; v < nv; ++v)
    if (m.vertex_cell_offsets[v] == m.vertex_cell_offsets[v + 1])
      throw Error("mesh: dangling vertex " + std::to_string(v));

  // Boundary markers.
  m.facet_marker.assign(m.n_facets(), -1);
  for (int f = 0; f < m.n_facets(); ++f) {
    if (m.facet_cells[f][1] != -1) continue;
    double centroid[3] = {0, 0, 0};
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) centroid[k] += m.vertex(m.facet(f)[j])[k] / dim;
    const std::string name = boundary_marker(centroid);
    if (name.empty()) throw Error("mesh: boundary facet without marker");
    int id = m.marker_id(name);
    if (id < 0) {
      id = static_cast<int>(m.marker_names.size());
      m.marker_names.push_back(name);
    }
    m.facet_marker[f] = id;
  }
  return m;
}

MeshLevel build_structured_grid(int dim, const std::array<double, 3>& lo,
                                const std::array<double, 3>& hi, const std::array<int, 3>& n) {
  for (int k = 0; k < dim; ++k) {
    if (n[k] < 1) throw Error("build_structured_grid: subdivisions must be >= 1");
    if (!(hi[k] > lo[k])) throw Error("build_structured_grid: empty extent");
  }
  std::vector<std::array<int, 3>> lattice;
  if (dim == 2) {
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) lattice.push_back({i, j, 0});
  } else {
    for (int k = 0; k < n[2]; ++k)
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i) lattice.push_back({i, j, k});
  }
  // Anisotropic boxes are handled by scaling coordinates after lattice build.
  const char* axes = "xyz";
  std::array<double, 3> h{};
  for (int k = 0; k < dim; ++k) h[k] = (hi[k] - lo[k]) / n[k];
  auto marker = [&](const double* x) -> std::string {
    const double tol = 1e-9;
    for (int k = 0; k < dim; ++k) {
      if (std::abs(x[k] - 0.0) < tol) return std::string(1, axes[k]) + "_min";
      if (std::abs(x[k] - n[k]) < tol) return std::string(1, axes[k]) + "_max";
    }
    return "";
  };
  MeshLevel m = build_lattice_grid(dim, lattice, {0, 0, 0}, 1.0, marker);
  for (int v = 0; v < m.n_vertices(); ++v)
    for (int k = 0; k < dim; ++k) m.coords[static_cast<std::size_t>(v) * dim + k] =
        lo[k] + h[k] * m.coords[static_cast<std::size_t>(v) * dim + k];
  return m;
}

MeshLevel build_lattice_grid(int dim, const std::vector<std::array<int, 3>>& lattice_cells,
                             const std::array<double, 3>& origin, double spacing,
                             const std::function<std::string(const double*)>& boundary_marker) {
  std::map<std::array<int, 3>, int> vid;
  std::vector<double> coords;
  auto vertex_id = [&](std::array<int, 3> p) {
    auto [it, inserted] = vid.try_emplace(p, static_cast<int>(vid.size()));
    if (inserted)
      for (int k = 0; k < dim; ++k) coords.push_back(origin[k] + spacing * p[k]);
    return it->second;
  };

  std::vector<int> cells;
  if (dim == 2) {
    for (const auto& q : lattice_cells) {
      const int v00 = vertex_id({q[0], q[1], 0});
      const int v10 = vertex_id({q[0] + 1, q[1], 0});
      const int v01 = vertex_id({q[0], q[1] + 1, 0});
      const int v11 = vertex_id({q[0] + 1, q[1] + 1, 0});
      // negative-slope diagonal v01 -- v10
      cells.insert(cells.end(), {v00, v10, v01});
      cells.insert(cells.end(), {v10, v11, v01});
    }
  } else {
    // 6 tetrahedra per cube, all sharing the main diagonal c0 -- c7.
    constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& q : lattice_cells) {
      for (const auto& perm : perms) {
        std::array<int, 3> p = {q[0], q[1], q[2]};
        int t[4];
        t[0] = vertex_id(p);
        for (int s = 0; s < 3; ++s) {
          p[perm[s]] += 1;
          t[s + 1] = vertex_id(p);
        }
        // Fix orientation: odd permutations produce negative volume.
        double a[3], b[3], c[3];
        for (int k = 0; k < 3; ++k) {
          a[k] = coords[3 * t[1] + k] - coords[3 * t[0] + k];
          b[k] = coords[3 * t[2] + k] - coords[3 * t[0] + k];
          c[k] = coords[3 * t[3] + k] - coords[3 * t[0] + k];
        }
        const double d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                         a[2] * (b[0] * c[1] - b[1] * c[0]);
        if (d < 0) std::swap(t[2], t[3]);
        cells.insert(cells.end(), {t[0], t[1], t[2], t[3]});
      }
    }
  }
  return build_from_cells(dim, std::move(coords), std::move(cells), boundary_marker);
}

MeshLevel refine_uniform(const MeshLevel& coarse) {
  const int dim = coarse.dim;
  MeshLevel fine;
  fine.dim = dim;
  const int ncv = coarse.n_vertices();
  const int n_edges = coarse.n_edges();

  // Vertices: all coarse vertices (bit-identical coordinates), then one
  // midpoint per coarse edge.
  fine.coords = coarse.coords;
  fine.coords.resize(static_cast<std::size_t>(ncv + n_edges) * dim);
  fine.vertex_parent.resize(ncv + n_edges);
  for (int v = 0; v < ncv; ++v) fine.vertex_parent[v] = {ParentVertex::Kind::Vertex, v};
  for (int e = 0; e < n_edges; ++e) {
    const auto ev = coarse.edge_vertices(e);
    for (int k = 0; k < dim; ++k)
      fine.coords[static_cast<std::size_t>(ncv + e) * dim + k] =
          0.5 * (coarse.vertex(ev[0])[k] + coarse.vertex(ev[1])[k]);
    fine.vertex_parent[ncv + e] = {ParentVertex::Kind::Edge, e};
  }

  auto midpoint_2d = [&](int c, int la, int lb) {
    // edge id of local pair (la, lb) within cell c: 2D edges alias facets,
    // facet k is opposite vertex k, so the pair (la, lb) is facet 3-la-lb.
    return ncv + coarse.cell_facet_ids(c)[3 - la - lb];
  };
  auto midpoint_3d = [&](int c, int la, int lb) {
    static constexpr int edge_of_pair[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return ncv + coarse.cell_edge_ids(c)[edge_of_pair[la][lb]];
  };

  for (int c = 0; c < coarse.n_cells(); ++c) {
    const int* v = coarse.cell(c);
    if (dim == 2) {
      const int m01 = midpoint_2d(c, 0, 1), m12 = midpoint_2d(c, 1, 2), m02 = midpoint_2d(c, 0, 2);
      const int ch[4][3] = {
          {v[0], m01, m02}, {m01, v[1], m12}, {m02, m12, v[2]}, {m01, m12, m02}};
      for (const auto& t : ch) fine.cells.insert(fine.cells.end(), {t[0], t[1], t[2]});
      for (int i = 0; i < 4; ++i) fine.parent_cell.push_back(c);
    } else {
      const int m01 = midpoint_3d(c, 0, 1), m02 = midpoint_3d(c, 0, 2), m03 = midpoint_3d(c, 0, 3);
      const int m12 = midpoint_3d(c, 1, 2), m13 = midpoint_3d(c, 1, 3), m23 = midpoint_3d(c, 2, 3);
      int tets[8][4] = {{v[0], m01, m02, m03},
                        {m01, v[1], m12, m13},
                        {m02, m12, v[2], m23},
                        {m03, m13, m23, v[3]},
                        {0, 0, 0, 0},
                        {0, 0, 0, 0},
                        {0, 0, 0, 0},
                        {0, 0, 0, 0}};
      // Interior octahedron: opposite midpoint pairs are its three diagonals.
      const std::array<std::array<int, 2>, 3> diags = {{{m01, m23}, {m02, m13}, {m03, m12}}};
      int best = 0;
      double best_len = -1.0;
      for (int s = 0; s < 3; ++s) {
        const double len = dist(3, &fine.coords[3 * static_cast<std::size_t>(diags[s][0])],
                                &fine.coords[3 * static_cast<std::size_t>(diags[s][1])]);
        const auto key = std::minmax(diags[s][0], diags[s][1]);
        const auto best_key = std::minmax(diags[best][0], diags[best][1]);
        if (best_len < 0 || len < best_len ||
            (len == best_len && (key.first < best_key.first ||
                                 (key.first == best_key.first && key.second < best_key.second)))) {
          best = s;
          best_len = len;
        }
      }
      const int a = diags[best][0], b = diags[best][1];
      // The other four midpoints form the equatorial cycle; consecutive ones
      // share a coarse vertex.
      std::array<int, 4> cyc{};
      {
        std::vector<int> others;
        for (int s = 0; s < 3; ++s)
          if (s != best) {
            others.push_back(diags[s][0]);
            others.push_back(diags[s][1]);
          }
        auto shares_vertex = [&](int ma, int mb) {
          const auto ea = coarse.edge_vertices(fine.vertex_parent[ma].id);
          const auto eb = coarse.edge_vertices(fine.vertex_parent[mb].id);
          return ea[0] == eb[0] || ea[0] == eb[1] || ea[1] == eb[0] || ea[1] == eb[1];
        };
        cyc[0] = others[0];
        std::vector<int> rest(others.begin() + 1, others.end());
        for (int s = 1; s < 4; ++s) {
          for (std::size_t t = 0; t < rest.size(); ++t) {
            if (shares_vertex(cyc[s - 1], rest[t])) {
              cyc[s] = rest[t];
              rest.erase(rest.begin() + t);
              break;
            }
          }
        }
      }
      for (int s = 0; s < 4; ++s) {
        tets[4 + s][0] = a;
        tets[4 + s][1] = cyc[s];
        tets[4 + s][2] = cyc[(s + 1) % 4];
        tets[4 + s][3] = b;
      }
      for (auto& t : tets) {
        if (signed_volume(3, &fine.coords[3 * static_cast<std::size_t>(t[0])],
                          &fine.coords[3 * static_cast<std::size_t>(t[1])],
                          &fine.coords[3 * static_cast<std::size_t>(t[2])],
                          &fine.coords[3 * static_cast<std::size_t>(t[3])]) < 0)
          std::swap(t[2], t[3]);
        fine.cells.insert(fine.cells.end(), {t[0], t[1], t[2], t[3]});
        fine.parent_cell.push_back(c);
      }
    }
  }

  // Topology, then marker inheritance through the facet genealogy.
  {
    std::vector<double> coords = fine.coords;
    std::vector<int> cells = fine.cells;
    std::vector<ParentVertex> vparent = fine.vertex_parent;
    std::vector<int> cparent = fine.parent_cell;
    MeshLevel built = build_from_cells(dim, std::move(coords), std::move(cells),
                                       [](const double*) { return std::string("tmp"); });
    built.vertex_parent = std::move(vparent);
    built.parent_cell = std::move(cparent);
    built.marker_names = coarse.marker_names;
    fine = std::move(built);
  }

  // A fine facet lies inside coarse facet F iff all its vertices are vertices
  // of F or midpoints of F's edges.
  fine.facet_parent.assign(fine.n_facets(), -1);
  std::vector<std::vector<int>> coarse_vertex_facets(coarse.n_vertices());
  for (int f = 0; f < coarse.n_facets(); ++f)
    for (int j = 0; j < dim; ++j) coarse_vertex_facets[coarse.facet(f)[j]].push_back(f);
  // Per fine vertex: sorted list of coarse facets whose closure contains it.
  std::vector<std::vector<int>> vmember(fine.n_vertices());
  for (int v = 0; v < fine.n_vertices(); ++v) {
    const ParentVertex pv = fine.vertex_parent[v];
    if (pv.kind == ParentVertex::Kind::Vertex) {
      vmember[v] = coarse_vertex_facets[pv.id];
    } else {
      const auto ev = coarse.edge_vertices(pv.id);
      std::set_intersection(coarse_vertex_facets[ev[0]].begin(),
                            coarse_vertex_facets[ev[0]].end(),
                            coarse_vertex_facets[ev[1]].begin(),
                            coarse_vertex_facets[ev[1]].end(), std::back_inserter(vmember[v]));
    }
  }

  fine.facet_marker.assign(fine.n_facets(), -1);
  for (int f = 0; f < fine.n_facets(); ++f) {
    std::vector<int> common = vmember[fine.facet(f)[0]];
    for (int j = 1; j < dim; ++j) {
      std::vector<int> next;
      const auto& other = vmember[fine.facet(f)[j]];
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    if (!common.empty()) fine.facet_parent[f] = common.front();
    if (fine.facet_cells[f][1] == -1) {
      if (common.empty()) throw Error("refine_uniform: boundary facet without coarse parent");
      fine.facet_marker[f] = coarse.facet_marker[common.front()];
    }
  }
  return fine;
}

std::vector<int> vertex_star(const MeshLevel& mesh, int vertex_id) {
  if (vertex_id < 0 || vertex_id >= mesh.n_vertices())
    throw Error("vertex_star: vertex id out of range");
  std::vector<int> star(mesh.vertex_cell_ids.begin() + mesh.vertex_cell_offsets[vertex_id],
                        mesh.vertex_cell_ids.begin() + mesh.vertex_cell_offsets[vertex_id + 1]);
  std::sort(star.begin(), star.end());
  return star;
}

MeshHierarchy MeshHierarchy::build(MeshLevel coarse, int refinements) {
  MeshHierarchy h;
  h.levels.push_back(std::move(coarse));
  for (int r = 0; r < refinements; ++r) h.levels.push_back(refine_uniform(h.levels.back()));
  return h;
}

}  // namespace alns
