#pragma once

#include <array>
#include <functional>

namespace alns {

/// Manufactured stationary solution on [0,2]^3 (plane flow extended in z)
/// used for solver verification. The velocity is divergence-free, vanishes on
/// the x/y walls, and matches the regularized lid profile on y = 2; the
/// pressure has zero mean. The body force comes from substituting the fields
/// into the strong momentum equation with nu = 1/re.
struct MmsSolution {
  double re = 1.0;
  std::array<double, 3> velocity(const std::array<double, 3>& x) const;
  double pressure(const std::array<double, 3>& x) const;
  std::array<double, 3> body_force(const std::array<double, 3>& x) const;
};

MmsSolution mms_exact(double re);

}  // namespace alns
