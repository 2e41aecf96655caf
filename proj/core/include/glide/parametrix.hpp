#pragma once

#include <optional>

#include "glide/wavepacket.hpp"

namespace glide {

// Phases of the N-th reflected wave in packet variables; lam_eta = lambda * eta.
class ReflectionPhase {
public:
  ReflectionPhase(int n, const PacketParams& p) : n_(n), p_(p) {}
  int n() const { return n_; }

  // Real phase before the Z and s integrations.
  double psi(double sigma, double s_big, double e, double z, double t, double x, double lam_eta) const;
  // Complex phase after the Z integration.
  Complex phi(double sigma, double s, double e, double t, double x, double lam_eta) const;
  // Complex phase after the s integration.
  Complex phi_tilde(double sigma, double e, double t, double x, double lam_eta) const;
  double dphi_tilde_dsigma(double sigma, double e, double x) const { return sigma * sigma + x - e; }

  double time_term(double t, double e) const;

private:
  int n_;
  PacketParams p_;
};

// Sigma on the stationary set at E = 1.
double stationary_sigma(double t, int n, double lam_eta, double a);

struct RegionEps {
  double eps0 = 0.2;
  double eps1 = 0.2;
  double eps2 = 0.25;
  void validate() const;
};

class ReflectionRegion {
public:
  ReflectionRegion(int j, double a, const RegionEps& eps = {});
  int j() const { return j_; }
  double t_center() const { return 4.0 * j_ * sqa_; }
  double t_lo() const { return t_center() - 2.0 * eps_.eps0; }
  double t_hi() const { return t_center() + 2.0 * eps_.eps0; }
  double y_center() const { return 4.0 * j_ / 3.0; }
  const RegionEps& eps() const { return eps_; }
  // Half-open in T: [t_lo, t_hi).
  bool contains(double t, double x, double y) const;

private:
  int j_;
  double sqa_;
  RegionEps eps_;
};

std::optional<int> dominant_reflection(double t, double x, double y, const PacketParams& p,
                                       const RegionEps& eps = {});

struct NRange {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
};

struct TruncationOptions {
  int pad = 3;
  double cap = 2.0;  // |N| <= cap * h^{-1/3}
};

NRange n_truncation(const PacketParams& p, double t, const TruncationOptions& o = {});

// integral exp(i lam (s^3/3 + s c)) ds along the real window [-4, 4] with
// tails rotated by pi/6 into the decaying sectors.
Complex sigma_integral_contour(double c, double lam);
// Same integral in closed form: 2 pi lam^{-1/3} Ai(lam^{2/3} c).
double sigma_integral_closed(double c, double lam);

struct ParametrixOptions {
  int eta_order = 64;
  bool contour_sigma = false;    // rotated-contour Sigma integral instead of the Airy form
  double e_window = 10.0;        // |E - 1| <= e_window / sqrt(lam_eta M)
  double rad_per_panel = 4.0;
};

Complex parametrix_u(double t, double x, double y, const PacketParams& p, const CutoffSpec& c, NRange n,
                     const ParametrixOptions& o = {});
// With the N-range from n_truncation.
Complex parametrix_u(double t, double x, double y, const PacketParams& p, const CutoffSpec& c = {},
                     const ParametrixOptions& o = {});

// Largest radius c <= 1 on a 1e-3 grid with min |Ai| > 1/10 on |z| = c
// (720 angles).  Cached.
double airy_lower_bound_constant();

// B(u) = 4u/3 + pi/2 - L(u^{2/3})
double phase_b(double u);

class AsymptoticProfile {
public:
  AsymptoticProfile(int j, const PacketParams& p);
  int j() const { return j_; }
  double big_lambda() const { return p_.lambda() * p_.M * (1.0 + p_.a); }
  Complex nu_a(double tt) const;
  Complex gamma(double tt) const;

  double f(double et) const;
  Complex psi_tilde_m(double tt, double et, double sigma, double xt) const;
  Complex g0(double sigma, double tt, double xt) const;
  // Critical value over E~ of psi_tilde_m + J (F + 4/3).
  Complex g(double sigma, double tt, double xt) const;

  // Closed Airy form; includes the 2 pi of the Airy integral.
  Complex i0(double tt, double xt, double eta, const SmoothWindow& psi) const;
  Complex i0_quadrature(double tt, double xt, double eta, const SmoothWindow& psi) const;
  // The (E~, Sigma) integral normalised by the E~ stationary-phase factor,
  // Sigma done in closed form and E~ by quadrature.
  Complex i_direct(double tt, double xt, double eta, const SmoothWindow& psi) const;

private:
  int j_;
  PacketParams p_;
};

double profile_vs_quadrature(double tt, double xt, const PacketParams& p, int j, double eta = 1.0,
                             const CutoffSpec& c = {});

}  // namespace glide
