#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "glide/field.hpp"
#include "glide/propagator.hpp"
#include "glide/wavepacket.hpp"

namespace glide {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
};

// Trapezoid L^r norm of values sampled on the (x, y) lattice, y fastest.
// r = infinity gives max |value|.  Throws ValidationError on axes with fewer
// than two points.
double spatial_norm(const std::vector<double>& x, const std::vector<double>& y, const std::vector<Complex>& v,
                    double r);
double spatial_norm(const ComplexField& f, std::size_t it, double r);

// L^q in T (trapezoid over the T samples inside the window) of the per-slice
// spatial norms.
double mixed_norm(const ComplexField& f, double q, double r, Interval window);
double mixed_norm(const std::vector<double>& t, const std::vector<double>& slice_norms, double q, Interval window);

struct LowerBoundWindow {
  Interval t, x, y;
  double measured_min = 0.0;  // min of h |U| over the probe lattice
};

using FieldEvaluator = std::function<Complex(double t, double x, double y)>;

// Focusing window around the J-th reflection and the smallest h|U| on a
// 5 x 5 x 5 lattice inside it.
LowerBoundWindow lower_bound_window(const PacketParams& p, int j, const FieldEvaluator& u, int points = 5);
// Only the window.
LowerBoundWindow lower_bound_window(const PacketParams& p, int j);

double strichartz_quotient(const PacketParams& p, double q, double r, double lhs_norm, double data_norm);
// Mixed norm of the field over [0, M_a].
double strichartz_quotient(const PacketParams& p, double q, double r, const ComplexField& f, double data_norm);

struct ScanRow {
  double h = 0.0, a = 0.0, M = 0.0, lambda = 0.0, q = 0.0, r = 0.0;
  double lhs = 0.0, rhs = 0.0, quotient = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  void write_csv(std::ostream& out) const;
  static ScanResult read_csv(std::istream& in);
};

struct ScalingFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  int n = 0;
  std::string summary() const;  // slope=<v> stderr=<v> n=<v>
};

// Least squares of log quotient on log lambda.  Needs >= 4 rows with
// lambda_max / lambda_min >= min_span and a common (q, r).
ScalingFit fit_scaling(const ScanResult& scan, double min_span = 8.0);

// T samples on [0, M_a]: `per_window` points around each reflection time
// 4J sqrt(1+a), denser near the centre, and `between` points in each gap.
std::vector<double> scan_times(const PacketParams& p, int per_window = 21, int between = 5);

struct SupOptions {
  double x_step = 1.0 / 6.0;  // in units of lambda^{-2/3}
  double y_step = 0.5;        // in units of 1/lambda
  int refine_iterations = 24;
};

struct SupResult {
  double value = 0.0;
  double x = 0.0, y = 0.0;
};

// max |U(T, ., .)| searched along the arcs X = 1 - S^2, Y = 4N/3 + 2 S^3/3 of
// the reflections present at time T, with golden-section refinement.
SupResult arc_sup(const PacketEvolution& u, double t, const SupOptions& o = {});

struct ScanOptions {
  std::vector<double> lambdas;
  std::vector<double> qs;
  double r = kInf;
  ParamRules rules;
  SpectralOptions spectral;
  SupOptions sup;
  unsigned threads = 0;
};

// One ScanResult per q, rows ordered by lambda.  Only r = infinity is
// supported; the per-T sups are shared between the q values.
std::vector<ScanResult> strichartz_scan(const ScanOptions& o);

}  // namespace glide
