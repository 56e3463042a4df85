#pragma once

#include <functional>

#include "alns/assembly.hpp"

namespace alns {

using ScalarField = std::function<double(const std::array<double, 3>&)>;
using VectorField = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

struct ErrorNorms {
  double velocity_l2 = 0.0;
  double pressure_l2 = 0.0;
};

/// L2 errors of a discrete state against reference fields, by quadrature of
/// the given exactness degree (at least element degree + 3 for error
/// measurement).
ErrorNorms compute_error_norms(const DiscreteState& state, const DofMap& umap, const DofMap& pmap,
                               const VectorField& exact_u, const ScalarField& exact_p,
                               int quad_degree);

}  // namespace alns
