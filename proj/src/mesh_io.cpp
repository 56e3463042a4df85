#include "alns/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "alns/errors.hpp"

namespace alns {

namespace {

// Strips comments and blank lines; returns payload lines.
std::vector<std::string> payload_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) lines.push_back(line);
  }
  return lines;
}

}  // namespace

MeshLevel parse_mesh(const std::string& text) {
  const auto lines = payload_lines(text);
  if (lines.empty()) throw ParseError("mesh file: empty");
  std::size_t cursor = 0;
  auto next_line = [&]() -> std::istringstream {
    if (cursor >= lines.size()) throw ParseError("mesh file: unexpected end of file");
    return std::istringstream(lines[cursor++]);
  };

  int dim = 0, nv = 0, nc = 0, nf = 0;
  {
    auto in = next_line();
    if (!(in >> dim >> nv >> nc >> nf)) throw ParseError("mesh file: bad header");
  }
  if (dim != 2 && dim != 3) throw ParseError("mesh file: dim must be 2 or 3");
  if (nv <= 0 || nc <= 0 || nf < 0) throw ParseError("mesh file: bad header counts");

  std::vector<double> coords(static_cast<std::size_t>(nv) * dim);
  for (int v = 0; v < nv; ++v) {
    auto in = next_line();
    for (int k = 0; k < dim; ++k)
      if (!(in >> coords[static_cast<std::size_t>(v) * dim + k]))
        throw ParseError("mesh file: bad coordinate line " + std::to_string(v));
    std::string extra;
    if (in >> extra) throw ParseError("mesh file: trailing tokens on coordinate line");
  }

  std::vector<int> cells(static_cast<std::size_t>(nc) * (dim + 1));
  for (int c = 0; c < nc; ++c) {
    auto in = next_line();
    for (int k = 0; k <= dim; ++k)
      if (!(in >> cells[static_cast<std::size_t>(c) * (dim + 1) + k]))
        throw ParseError("mesh file: bad cell line " + std::to_string(c));
    std::string extra;
    if (in >> extra) throw ParseError("mesh file: cell is not simplicial (extra vertex ids)");
  }

  struct MarkedFacet {
    std::array<int, 3> verts;
    std::string marker;
  };
  std::vector<MarkedFacet> marked(nf);
  for (int f = 0; f < nf; ++f) {
    auto in = next_line();
    MarkedFacet mf;
    mf.verts = {-1, -1, -1};
    for (int k = 0; k < dim; ++k)
      if (!(in >> mf.verts[k])) throw ParseError("mesh file: bad facet line " + std::to_string(f));
    if (!(in >> mf.marker)) throw ParseError("mesh file: facet line missing marker");
    std::sort(mf.verts.begin(), mf.verts.begin() + dim);
    marked[f] = mf;
  }
  if (cursor != lines.size()) throw ParseError("mesh file: trailing content");

  std::map<std::array<int, 3>, std::string> marker_of;
  for (const auto& mf : marked) {
    if (!marker_of.emplace(mf.verts, mf.marker).second)
      throw ParseError("mesh file: facet listed twice");
  }

  MeshLevel mesh = build_from_cells(dim, std::move(coords), std::move(cells),
                                    [](const double*) { return std::string("boundary"); });

  // Markers are matched by facet vertex set rather than the centroid callback.
  mesh.marker_names.clear();
  mesh.facet_marker.assign(mesh.n_facets(), -1);
  std::size_t used = 0;
  for (int f = 0; f < mesh.n_facets(); ++f) {
    std::array<int, 3> key = {-1, -1, -1};
    for (int k = 0; k < dim; ++k) key[k] = mesh.facet(f)[k];
    const auto it = marker_of.find(key);
    if (mesh.facet_cells[f][1] == -1) {
      if (it == marker_of.end())
        throw ParseError("mesh file: boundary facet has no marker line");
      int id = mesh.marker_id(it->second);
      if (id < 0) {
        id = static_cast<int>(mesh.marker_names.size());
        mesh.marker_names.push_back(it->second);
      }
      mesh.facet_marker[f] = id;
      ++used;
    } else if (it != marker_of.end()) {
      throw ParseError("mesh file: marked facet is interior");
    }
  }
  if (used != marker_of.size())
    throw ParseError("mesh file: facet line does not match any boundary facet");
  return mesh;
}

MeshLevel load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_mesh: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

void save_mesh(const MeshLevel& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_mesh: cannot open " + path);
  int nf = 0;
  for (int f = 0; f < mesh.n_facets(); ++f)
    if (mesh.facet_cells[f][1] == -1) ++nf;
  out << mesh.dim << " " << mesh.n_vertices() << " " << mesh.n_cells() << " " << nf << "\n";
  char buf[64];
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    for (int k = 0; k < mesh.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", mesh.vertex(v)[k]);
      out << (k ? " " : "") << buf;
    }
    out << "\n";
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    for (int k = 0; k <= mesh.dim; ++k) out << (k ? " " : "") << mesh.cell(c)[k];
    out << "\n";
  }
  for (int f = 0; f < mesh.n_facets(); ++f) {
    if (mesh.facet_cells[f][1] != -1) continue;
    for (int k = 0; k < mesh.dim; ++k) out << mesh.facet(f)[k] << " ";
    out << mesh.marker_names[mesh.facet_marker[f]] << "\n";
  }
}

}  // namespace alns
