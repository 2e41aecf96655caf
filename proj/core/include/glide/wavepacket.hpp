#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "glide/airy.hpp"
#include "glide/cutoff.hpp"

namespace glide {

enum class ARule { given, cube_root, half_minus_eps };  // a given, h^(1/3), h^(1/2-eps)
enum class MRule { given, lambda_cube_root, m_a };      // M given, lambda^(1/3), a^(-1/2)

struct ParamRules {
  ARule a_rule = ARule::cube_root;
  MRule m_rule = MRule::lambda_cube_root;
  double eps = 0.0;
};

ARule parse_a_rule(const std::string& s);
MRule parse_m_rule(const std::string& s);
std::string to_string(ARule r);
std::string to_string(MRule r);

struct PacketParams {
  double h = 0.0;
  double a = 0.0;
  double M = 0.0;

  double lambda() const;
  double m_a() const;
  // Throws ValidationError unless h^{2/3} < a, 1 < M < lambda, lambda > 1.
  void validate() const;
  // Desk-scale gates: a >= 2 h^{2/3}, M <= lambda / 4 and, when the Airy
  // profile is used, M >= 4 lambda^{1/3} / c.
  std::vector<std::string> desk_scale_issues(bool profile = false) const;
};

PacketParams make_params(double h, double a, double M);
PacketParams derive_params(double h, const ParamRules& rules, double a = 0.0, double M = 0.0);
// Inverts the a-rule so that the packet has the requested lambda.
PacketParams params_for_lambda(double lambda, const ParamRules& rules);
// Keys h, a, M, a_rule, M_rule, eps.
PacketParams params_from_config(const std::map<std::string, std::string>& kv);

struct CutoffSpec {
  SmoothWindow psi{0.5, 0.75, 1.5, 2.0};
  SmoothWindow chi0{1.0, 2.0, SmoothWindow::inf, SmoothWindow::inf};
  SmoothWindow chi1{-1.0, 0.0, 1.0, 2.0};
};

struct LabPoint {
  double t = 0.0, x = 0.0, y = 0.0;
};
struct PacketPoint {
  double T = 0.0, X = 0.0, Y = 0.0;
};

class FrameMap {
public:
  explicit FrameMap(const PacketParams& p) : p_(p) {}
  PacketPoint lab_to_packet(const LabPoint& l) const;
  LabPoint packet_to_lab(const PacketPoint& q) const;

private:
  PacketParams p_;
};

// integral exp(i lam_eta ((Z-1)s + s^3/3 + (i/2) s^2/M)) ds by quadrature.
Complex v0_oscillatory(double Z, double lam_eta, double M);

struct V0Closed {
  double value = 0.0;
  double log_abs = 0.0;  // log |value|, always finite unless value == 0
  int sign = 0;
  bool overflow = false;  // exponent above 700: only log_abs is meaningful
};
V0Closed v0_closed_scaled(double Z, double lam_eta, double M);
// Closed Airy form; throws DomainError when it would overflow.
Complex v0_closed(double Z, double lam_eta, double M);

// (1/2pi) integral exp(-i lam_eta xi Z) V0(Z) dZ.
Complex v0_hat(double xi, double lam_eta, double M);

struct DataNorm {
  double norm = 0.0;
  double ratio = 0.0;              // norm / (h^{-1} lambda^{-5/4} M^{1/4})
  double gaussian_mismatch = 0.0;  // worst relative gap of the xi quadrature vs sqrt(pi M / lambda eta)
};
DataNorm data_l2_norm(const PacketParams& p, const CutoffSpec& c = {});

struct NormFactors {
  double spatial = 1.0;
  double spacetime = 1.0;
};
// a^{-5/(2r)} and a^{-1/(2q) - 5/(2r)}; pass infinity for q or r = infinity.
NormFactors norm_scaling(double r, double q, const PacketParams& p);
// lambda^{1-1/q-2/r} M_a^{1/2-1/r-2/q}
double reduced_strichartz_rhs(double q, double r, const PacketParams& p);

}  // namespace glide
