#pragma once

#include <string>

#include "alns/mesh.hpp"

namespace alns {

/// ASCII mesh format. Header line `dim V C F`, then V coordinate lines, C
/// cell lines (0-based vertex ids), and F boundary-facet lines of the form
/// `v0 v1 [v2] marker`. Lines starting with `#` are comments. Every boundary
/// facet must be listed with a marker; interior facets are not listed.
MeshLevel load_mesh(const std::string& path);
MeshLevel parse_mesh(const std::string& text);
void save_mesh(const MeshLevel& mesh, const std::string& path);

}  // namespace alns
