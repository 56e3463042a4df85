#include "alns/quadrature.hpp"

#include <cmath>
#include <vector>

#include "alns/errors.hpp"

namespace alns {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Enumerates nonnegative integer tuples of length `parts` summing to s.
void compositions(int s, int parts, std::vector<std::vector<int>>& out) {
  std::vector<int> k(parts, 0);
  k[0] = s;
  while (true) {
    out.push_back(k);
    if (k[parts - 1] == s) break;
    int i = parts - 2;
    while (i >= 0 && k[i] == 0) --i;
    const int val = k[parts - 1];
    k[parts - 1] = 0;
    k[i] -= 1;
    k[i + 1] = val + 1;
  }
}

}  // namespace

QuadratureRule simplex_quadrature(int dim, int degree) {
  if (dim < 1 || dim > 3) throw Error("simplex_quadrature: dim must be 1..3");
  if (degree < 0) throw Error("simplex_quadrature: negative degree");
  const int s = std::max(0, (degree - 1 + 1) / 2);  // degree 2s+1 >= requested
  const int d = 2 * s + 1;
  const int n = dim;

  std::vector<std::array<double, 4>> pts;
  std::vector<double> wts;
  for (int i = 0; i <= s; ++i) {
    const double denom = d + n - 2 * i;
    double w = std::pow(2.0, -2 * s) * std::pow(denom, d) / (factorial(i) * factorial(d + n - i));
    if (i % 2) w = -w;
    std::vector<std::vector<int>> comps;
    compositions(s - i, n + 1, comps);
    for (const auto& k : comps) {
      std::array<double, 4> lam{0, 0, 0, 0};
      for (int j = 0; j <= n; ++j) lam[j] = (2.0 * k[j] + 1.0) / denom;
      pts.push_back(lam);
      wts.push_back(w);
    }
  }

  QuadratureRule rule;
  rule.dim = dim;
  rule.degree = std::max(degree, d);
  rule.points.resize(static_cast<int>(pts.size()), n + 1);
  rule.weights.resize(static_cast<int>(wts.size()));
  for (std::size_t q = 0; q < pts.size(); ++q) {
    for (int j = 0; j <= n; ++j) rule.points(static_cast<int>(q), j) = pts[q][j];
    rule.weights[static_cast<int>(q)] = wts[q];
  }
  return rule;
}

QuadratureRule gauss_legendre_01(int npoints) {
  if (npoints < 1) throw Error("gauss_legendre_01: need at least one point");
  const int n = npoints;
  QuadratureRule rule;
  rule.dim = 1;
  rule.degree = 2 * n - 1;
  rule.points.resize(n, 2);
  rule.weights.resize(n);
  // Newton iteration on Legendre polynomials over [-1, 1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    // map to [0,1]; store as barycentric (1-t, t)
    const double t = 0.5 * (x + 1.0);
    rule.points(n - 1 - i, 0) = 1.0 - t;
    rule.points(n - 1 - i, 1) = t;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace alns
