#include "alns/mms.hpp"

#include <cmath>

#include "alns/errors.hpp"

namespace alns {

namespace {

inline double sq(double v) { return v * v; }

}  // namespace

MmsSolution mms_exact(double re) {
  if (!(re > 0)) throw Error("mms_exact: re must be positive");
  MmsSolution s;
  s.re = re;
  return s;
}

std::array<double, 3> MmsSolution::velocity(const std::array<double, 3>& p) const {
  const double x = p[0], y = p[1];
  const double u1 = 0.25 * sq(x - 2) * sq(x) * y * (y * y - 2);
  const double u2 = -0.25 * x * (x * x - 3 * x + 2) * y * y * (y * y - 4);
  return {u1, u2, 0.0};
}

double MmsSolution::pressure(const std::array<double, 3>& p) const {
  const double x = p[0], y = p[1];
  const double pt =
      x * y * (3 * std::pow(x, 4) - 15 * std::pow(x, 3) + 10 * x * x * y * y -
               30 * x * (y * y - 2) + 20 * (y * y - 2)) /
          (5.0 * re) -
      std::pow(x - 2, 4) * std::pow(x, 4) * y * y *
          (std::pow(y, 4) - 2 * y * y + 8) / 128.0;
  return pt + 1408.0 / 33075.0 - 8.0 / (5.0 * re);
}

std::array<double, 3> MmsSolution::body_force(const std::array<double, 3>& p) const {
  const double x = p[0], y = p[1];
  const double y2 = y * y, y3 = y2 * y;
  const double f1 =
      (x * (x * (x * (3 * x * y - 12 * y) + 6 * y3) + y * (24 - 12 * y2)) + y * (4 * y2 - 8)) /
      (2.0 * re);
  const double a0 =
      x * x *
      (x * (x * (x * (x * (x * (x * y * (y2 * (15 * y2 - 20) + 40) +
                                y * (y2 * (160 - 120 * y2) - 320)) +
                           y * (y2 * (y2 * (480 - 20 * y2) - 640) + 960)) +
                      y * (y2 * (y2 * (120 * y2 - 1200) + 1600) - 1280)) +
                 y * (y2 * (y2 * (1920 - 280 * y2) - 2560) + 640)) +
            y3 * (y2 * (320 * y2 - 1920) + 2560)) +
       y3 * (y2 * (960 - 160 * y2) - 1280));
  const double b0 =
      x * (x * (x * (x * (960 - 192 * x) - 2880 * y2 + 640) + 8640 * y2 - 5760) +
           y2 * (-480 * y2 - 3840) + 3840) +
      y2 * (480 * y2 - 1920);
  const double f2 = -(re * a0 + b0) / (320.0 * re);
  return {f1, f2, 0.0};
}

}  // namespace alns
