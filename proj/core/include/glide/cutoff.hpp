#pragma once

#include <limits>

namespace glide {

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// Smooth window: 0 outside (lo, hi), 1 on [plateau_lo, plateau_hi], smooth
// transitions in between.  Infinite ends give one-sided steps.
class SmoothWindow {
public:
  static constexpr double inf = std::numeric_limits<double>::infinity();

  SmoothWindow() = default;
  SmoothWindow(double lo, double plateau_lo, double plateau_hi, double hi);

  double operator()(double t) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double plateau_lo() const { return plo_; }
  double plateau_hi() const { return phi_; }
  bool bounded() const;

private:
  double lo_ = -1.0, plo_ = 0.0, phi_ = 0.0, hi_ = 1.0;
};

struct BumpFunction {
  double center = 0.0;
  double half_width = 1.0;
  double plateau_fraction = 0.5;

  SmoothWindow window() const;
  double operator()(double t) const { return window()(t); }
};

}  // namespace glide
