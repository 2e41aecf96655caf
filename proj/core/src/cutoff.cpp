#include "glide/cutoff.hpp"

#include <cmath>

#include "glide/errors.hpp"

namespace glide {

namespace {
double flat(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}  // namespace

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = flat(u), b = flat(1.0 - u);
  return a / (a + b);
}

SmoothWindow::SmoothWindow(double lo, double plateau_lo, double plateau_hi, double hi)
    : lo_(lo), plo_(plateau_lo), phi_(plateau_hi), hi_(hi) {
  if (!(lo <= plateau_lo && plateau_lo <= plateau_hi && plateau_hi <= hi))
    throw ValidationError("SmoothWindow: breakpoints must be ordered");
  if (std::isinf(lo) != std::isinf(plateau_lo) || std::isinf(hi) != std::isinf(plateau_hi))
    throw ValidationError("SmoothWindow: an infinite end needs an infinite plateau end");
}

double SmoothWindow::operator()(double t) const {
  if (t <= lo_ || t >= hi_) return 0.0;
  if (t < plo_) return smooth_step((t - lo_) / (plo_ - lo_));
  if (t > phi_) return smooth_step((hi_ - t) / (hi_ - phi_));
  return 1.0;
}

bool SmoothWindow::bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }

SmoothWindow BumpFunction::window() const {
  if (!(half_width > 0.0) || plateau_fraction < 0.0 || plateau_fraction >= 1.0)
    throw ValidationError("BumpFunction: need half_width > 0 and 0 <= plateau_fraction < 1");
  const double p = plateau_fraction * half_width;
  return {center - half_width, center - p, center + p, center + half_width};
}

}  // namespace glide
