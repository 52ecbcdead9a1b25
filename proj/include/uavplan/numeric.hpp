#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavplan {

inline constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct GoldenResult {
  double x;
  double fx;
};

// Golden-section minimization with a fixed iteration count. Tracks the best
// point among all evaluations (interval endpoints included), so the result
// never regresses on functions that are monotone over [a, b].
template <typename F>
GoldenResult golden_min(F&& f, double a, double b, int iterations) {
  if (!(a <= b)) throw std::invalid_argument("golden_min: empty interval");
  GoldenResult best{a, f(a)};
  const double fb = f(b);
  if (fb < best.fx) best = {b, fb};
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  if (fc < best.fx) best = {c, fc};
  if (fd < best.fx) best = {d, fd};
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best.fx) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best.fx) best = {d, fd};
    }
  }
  return best;
}

template <typename F>
GoldenResult golden_max(F&& f, double a, double b, int iterations) {
  GoldenResult r = golden_min([&](double x) { return -f(x); }, a, b, iterations);
  return {r.x, -r.fx};
}

}  // namespace uavplan
