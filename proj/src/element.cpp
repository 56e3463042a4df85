#include "alns/element.hpp"

#include <cmath>
#include <map>

#include "alns/errors.hpp"
#include "alns/mesh.hpp"

namespace alns {

std::string family_name(Family f) {
  switch (f) {
    case Family::P0: return "P0";
    case Family::P1: return "P1";
    case Family::P2: return "P2";
    case Family::P3: return "P3";
    case Family::P1FacetBubble: return "P1+FacetBubble";
    case Family::P2FacetBubble: return "P2+FacetBubble";
  }
  return "?";
}

int ElementSpec::degree() const {
  switch (family) {
    case Family::P0: return 0;
    case Family::P1: return 1;
    case Family::P2: return 2;
    default: return 3;
  }
}

void ElementSpec::validate() const {
  if (dim != 2 && dim != 3) throw Error("element: dim must be 2 or 3");
  if (value_size != 1 && value_size != dim) throw Error("element: value_size must be 1 or dim");
  if (has_bubbles() && dim != 3)
    throw Error("element: facet-bubble families are only defined for dim 3");
}

int n_scalar_basis(const ElementSpec& spec) {
  const int d = spec.dim;
  switch (spec.family) {
    case Family::P0: return 1;
    case Family::P1: return d + 1;
    case Family::P2: return d + 1 + n_local_edges(d);
    case Family::P3: return d == 2 ? 10 : 20;
    case Family::P1FacetBubble: return 8;
    case Family::P2FacetBubble: return 14;
  }
  return 0;
}

const std::vector<LocalDof>& local_dof_layout(const ElementSpec& spec) {
  spec.validate();
  static std::map<std::pair<int, int>, std::vector<LocalDof>> cache;
  const auto key = std::make_pair(static_cast<int>(spec.family), spec.dim);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<LocalDof> dofs;
  const int d = spec.dim;
  if (spec.family == Family::P0) {
    dofs.push_back({EntityKind::Cell, 0, 0});
  } else {
    for (int v = 0; v <= d; ++v) dofs.push_back({EntityKind::Vertex, v, 0});
    if (spec.family == Family::P2 || spec.family == Family::P2FacetBubble)
      for (int e = 0; e < n_local_edges(d); ++e) dofs.push_back({EntityKind::Edge, e, 0});
    if (spec.family == Family::P3)
      for (int e = 0; e < n_local_edges(d); ++e)
        for (int k = 0; k < 2; ++k) dofs.push_back({EntityKind::Edge, e, k});
    if (spec.family == Family::P3) {
      if (d == 2)
        dofs.push_back({EntityKind::Cell, 0, 0});
      else
        for (int f = 0; f < 4; ++f) dofs.push_back({EntityKind::Facet, f, 0});
    }
    if (spec.has_bubbles())
      for (int f = 0; f < 4; ++f) dofs.push_back({EntityKind::Facet, f, 0});
  }
  return cache.emplace(key, std::move(dofs)).first->second;
}

namespace {

// Scalar polynomial in the barycentric coordinates with derivatives.
struct Poly {
  double value = 0;
  Eigen::VectorXd dlam;   // d+2 safe size; indexed by barycentric coordinate
  Eigen::MatrixXd d2lam;
  explicit Poly(int nb) : dlam(Eigen::VectorXd::Zero(nb)), d2lam(Eigen::MatrixXd::Zero(nb, nb)) {}
};

Poly vertex_fn(Family fam, int i, const double* L, int nb) {
  Poly p(nb);
  const double l = L[i];
  switch (fam) {
    case Family::P1:
    case Family::P1FacetBubble:
      p.value = l;
      p.dlam[i] = 1.0;
      break;
    case Family::P2:
    case Family::P2FacetBubble:
      p.value = l * (2 * l - 1);
      p.dlam[i] = 4 * l - 1;
      p.d2lam(i, i) = 4;
      break;
    case Family::P3:
      p.value = 0.5 * l * (3 * l - 1) * (3 * l - 2);
      p.dlam[i] = 0.5 * (27 * l * l - 18 * l + 2);
      p.d2lam(i, i) = 27 * l - 9;
      break;
    default: throw Error("vertex_fn: bad family");
  }
  return p;
}

Poly p2_edge_fn(int a, int b, const double* L, int nb) {
  Poly p(nb);
  p.value = 4 * L[a] * L[b];
  p.dlam[a] = 4 * L[b];
  p.dlam[b] = 4 * L[a];
  p.d2lam(a, b) = p.d2lam(b, a) = 4;
  return p;
}

Poly p3_edge_fn(int a, int b, const double* L, int nb) {
  // peaks at the node two thirds of the way toward vertex a
  Poly p(nb);
  const double la = L[a], lb = L[b];
  p.value = 4.5 * la * lb * (3 * la - 1);
  p.dlam[a] = 4.5 * lb * (6 * la - 1);
  p.dlam[b] = 4.5 * la * (3 * la - 1);
  p.d2lam(a, a) = 27 * lb;
  p.d2lam(a, b) = p.d2lam(b, a) = 4.5 * (6 * la - 1);
  return p;
}

Poly triple_product_fn(int a, int b, int c, const double* L, int nb) {
  // 27 * la*lb*lc: equals 1 at the barycenter of the (a,b,c) face
  Poly p(nb);
  const double la = L[a], lb = L[b], lc = L[c];
  p.value = 27 * la * lb * lc;
  p.dlam[a] = 27 * lb * lc;
  p.dlam[b] = 27 * la * lc;
  p.dlam[c] = 27 * la * lb;
  p.d2lam(a, b) = p.d2lam(b, a) = 27 * lc;
  p.d2lam(a, c) = p.d2lam(c, a) = 27 * lb;
  p.d2lam(b, c) = p.d2lam(c, b) = 27 * la;
  return p;
}

}  // namespace

BasisEval eval_basis(const ElementSpec& spec, const double* barycentric) {
  spec.validate();
  const int d = spec.dim;
  const double* L = barycentric;
  {
    double sum = 0;
    for (int i = 0; i <= d; ++i) {
      if (L[i] < -1e-10) throw Error("eval_basis: point outside reference simplex");
      sum += L[i];
    }
    if (std::abs(sum - 1.0) > 1e-10) throw Error("eval_basis: barycentric coordinates must sum to 1");
  }

  const auto& layout = local_dof_layout(spec);
  const int n = static_cast<int>(layout.size());
  const int nb = d + 1;

  BasisEval out;
  out.values.resize(n);
  out.gradients.resize(n, d);
  out.hessians.assign(n, Eigen::MatrixXd::Zero(d, d));

  // chain rule through lambda_0 = 1 - sum(x), lambda_i = x_i
  auto emit = [&](int idx, const Poly& p) {
    out.values[idx] = p.value;
    for (int k = 0; k < d; ++k) out.gradients(idx, k) = p.dlam[k + 1] - p.dlam[0];
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        out.hessians[idx](k, l) =
            p.d2lam(k + 1, l + 1) - p.d2lam(k + 1, 0) - p.d2lam(0, l + 1) + p.d2lam(0, 0);
  };

  for (int idx = 0; idx < n; ++idx) {
    const LocalDof& dof = layout[idx];
    switch (dof.kind) {
      case EntityKind::Cell: {
        if (spec.family == Family::P0) {
          Poly p(nb);
          p.value = 1.0;
          emit(idx, p);
        } else {  // P3 interior bubble in 2D
          emit(idx, triple_product_fn(0, 1, 2, L, nb));
        }
        break;
      }
      case EntityKind::Vertex:
        emit(idx, vertex_fn(spec.family, dof.entity, L, nb));
        break;
      case EntityKind::Edge: {
        const int* ev = local_edge_vertices(d, dof.entity);
        if (spec.family == Family::P3)
          emit(idx, dof.index_on_entity == 0 ? p3_edge_fn(ev[0], ev[1], L, nb)
                                             : p3_edge_fn(ev[1], ev[0], L, nb));
        else
          emit(idx, p2_edge_fn(ev[0], ev[1], L, nb));
        break;
      }
      case EntityKind::Facet: {
        const int* fv = local_facet_vertices(d, dof.entity);
        emit(idx, triple_product_fn(fv[0], fv[1], fv[2], L, nb));
        break;
      }
    }
  }
  return out;
}

}  // namespace alns
