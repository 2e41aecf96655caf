#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "glide/field.hpp"
#include "glide/spectrum.hpp"
#include "glide/wavepacket.hpp"

namespace glide {

struct ModeEntry {
  int k = 0;
  Complex c;            // <e_k, v0>
  double weight = 1.0;  // chi0(omega_k) chi1(omega_k hbar^{2/3})
};

// Entries sorted by decreasing |c_k weight|.
struct ModeCoefficients {
  double hbar = 0.0;
  std::vector<ModeEntry> entries;
  // sum |c_k weight|^2
  double projected_norm_sq() const;
};

struct DecomposeOptions {
  // Modes are scanned outward from k_hint and a direction stops after
  // `patience` consecutive |c_k| below prune_tol * max|c|.  prune_tol = 0
  // keeps the whole chi1 support.
  double prune_tol = 0.0;
  int k_hint = 0;
  int patience = 8;
};

// Largest k with omega_k hbar^{2/3} inside the chi1 support.
int max_mode_index(double hbar, const CutoffSpec& c);

ModeCoefficients decompose(const SampledFunction& v0, double hbar, const CutoffSpec& c = {},
                           const DecomposeOptions& o = {});

// v(t, x) = sum_k exp(i (t/hbar) sqrt(1 + omega_k hbar^{2/3})) c_k weight_k e_k(x)
std::vector<Complex> evolve_modes(const ModeCoefficients& m, double t, const std::vector<double>& xs);

// L2 norm on the half line of a sampled function via the trapezoid rule.
double l2_norm(const std::vector<double>& xs, const std::vector<Complex>& v);

struct SpectralOptions {
  int eta_order = 64;
  double prune_tol = 1e-6;
  unsigned threads = 0;  // per-eta decompositions; 0 = hardware concurrency
};

// The datum V0(., lambda eta) as a function of lab x for one eta.
SampledFunction packet_datum(const PacketParams& p, double eta);

// Exact solution U(T, X, Y) as an eta quadrature of mode sums.
class PacketEvolution {
public:
  PacketEvolution(const PacketParams& p, const CutoffSpec& c = {}, const SpectralOptions& o = {});

  const PacketParams& params() const { return p_; }
  const std::vector<double>& etas() const { return eta_; }
  int mode_count() const;

  Complex operator()(double t, double x, double y) const;
  // w_j with U(T, X, Y) = sum_j w_j exp(i lambda eta_j Y).
  std::vector<Complex> y_spectrum(double t, double x) const;
  static Complex sum_y(const std::vector<Complex>& w, const std::vector<double>& lam_eta, double y);
  const std::vector<double>& lam_etas() const { return lam_eta_; }

  // ||U(0)||_{L2(X>0,Y)} of the spectrally projected datum.
  double projected_norm() const;

  // Lab-frame value u(t, x, y).
  Complex lab(double t, double x, double y) const;

private:
  struct Band {
    std::vector<double> omega, e, norm;
    std::vector<double> rate;   // (E_k - 1) / (sqrt(1 + a E_k) + sqrt(1 + a))
    std::vector<Complex> coef;  // c_k weight_k / a scaled to packet variables
  };
  using Rows = std::vector<std::vector<double>>;
  std::shared_ptr<const Rows> airy_rows(double x) const;

  PacketParams p_;
  CutoffSpec c_;
  std::vector<double> eta_, lam_eta_, w_eta_;
  std::vector<Band> band_;
  mutable std::mutex mu_;
  mutable std::map<double, std::shared_ptr<const Rows>> cache_;
};

// Field on a packet-frame lattice; throws ResolutionError when the Y axis
// has fewer than 6 points per wavelength 2 pi / (2 lambda).
ComplexField evolve_full(const PacketEvolution& u, const std::vector<double>& t, const std::vector<double>& x,
                         const std::vector<double>& y);
ComplexField evolve_full(const PacketParams& p, const CutoffSpec& c, double t, const std::vector<double>& x,
                         const std::vector<double>& y);

struct GreenOptions {
  int eta_order = 64;
  long max_terms = 20'000'000;
};

// Truncated half-wave Green function between (x, y, t) and (a, b, s),
// sign = +1 or -1.
Complex green_function(double h, const CutoffSpec& c, double x, double y, double t, double a, double b, double s,
                       int sign, const GreenOptions& o = {});

}  // namespace glide
