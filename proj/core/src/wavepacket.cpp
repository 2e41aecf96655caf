#include "glide/wavepacket.hpp"

#include <cmath>
#include <numbers>

#include "glide/parametrix.hpp"

namespace glide {

namespace {
constexpr double pi = std::numbers::pi;

double recip(double v) { return std::isinf(v) ? 0.0 : 1.0 / v; }

double to_double(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ValidationError("missing parameter '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("parameter '" + key + "' is not a number: " + it->second);
  }
}
}  // namespace

ARule parse_a_rule(const std::string& s) {
  if (s == "given" || s.empty()) return ARule::given;
  if (s == "h^(1/3)") return ARule::cube_root;
  if (s == "h^(1/2-eps)") return ARule::half_minus_eps;
  throw ValidationError("unknown a_rule: " + s);
}

MRule parse_m_rule(const std::string& s) {
  if (s == "given" || s.empty()) return MRule::given;
  if (s == "lambda^(1/3)") return MRule::lambda_cube_root;
  if (s == "M_a") return MRule::m_a;
  throw ValidationError("unknown M_rule: " + s);
}

std::string to_string(ARule r) {
  switch (r) {
    case ARule::cube_root: return "h^(1/3)";
    case ARule::half_minus_eps: return "h^(1/2-eps)";
    default: return "given";
  }
}

std::string to_string(MRule r) {
  switch (r) {
    case MRule::lambda_cube_root: return "lambda^(1/3)";
    case MRule::m_a: return "M_a";
    default: return "given";
  }
}

double PacketParams::lambda() const { return a * std::sqrt(a) / h; }
double PacketParams::m_a() const { return 1.0 / std::sqrt(a); }

void PacketParams::validate() const {
  if (!(h > 0.0 && h < 1.0)) throw ValidationError("h must lie in (0, 1)");
  if (!(a > std::pow(h, 2.0 / 3.0))) throw ValidationError("need a > h^(2/3)");
  const double lam = lambda();
  if (!(lam > 1.0)) throw ValidationError("need lambda = a^(3/2)/h > 1");
  if (!(M > 1.0 && M < lam)) throw ValidationError("need 1 < M < lambda");
}

std::vector<std::string> PacketParams::desk_scale_issues(bool profile) const {
  std::vector<std::string> out;
  if (a < 2.0 * std::pow(h, 2.0 / 3.0)) out.push_back("a < 2 h^(2/3)");
  if (M > lambda() / 4.0) out.push_back("M > lambda/4");
  if (profile && M < 4.0 * std::cbrt(lambda()) / airy_lower_bound_constant())
    out.push_back("M < 4 lambda^(1/3)/c");
  return out;
}

PacketParams make_params(double h, double a, double M) {
  PacketParams p{h, a, M};
  p.validate();
  return p;
}

PacketParams derive_params(double h, const ParamRules& rules, double a, double M) {
  PacketParams p{h, a, M};
  switch (rules.a_rule) {
    case ARule::cube_root: p.a = std::cbrt(h); break;
    case ARule::half_minus_eps: p.a = std::pow(h, 0.5 - rules.eps); break;
    case ARule::given: break;
  }
  switch (rules.m_rule) {
    case MRule::lambda_cube_root: p.M = std::cbrt(p.lambda()); break;
    case MRule::m_a: p.M = p.m_a(); break;
    case MRule::given: break;
  }
  p.validate();
  return p;
}

PacketParams params_for_lambda(double lambda, const ParamRules& rules) {
  // lambda = h^{3e/2 - 1} for a = h^e
  double e = 0.0;
  switch (rules.a_rule) {
    case ARule::cube_root: e = 1.0 / 3.0; break;
    case ARule::half_minus_eps: e = 0.5 - rules.eps; break;
    case ARule::given: throw ValidationError("params_for_lambda needs an a-rule");
  }
  const double h = std::pow(lambda, 1.0 / (1.5 * e - 1.0));
  return derive_params(h, rules);
}

PacketParams params_from_config(const std::map<std::string, std::string>& kv) {
  ParamRules rules;
  rules.a_rule = kv.count("a_rule") ? parse_a_rule(kv.at("a_rule")) : ARule::given;
  rules.m_rule = kv.count("M_rule") ? parse_m_rule(kv.at("M_rule")) : MRule::given;
  rules.eps = kv.count("eps") ? to_double(kv, "eps") : 0.0;
  const double a = rules.a_rule == ARule::given ? to_double(kv, "a") : 0.0;
  const double M = rules.m_rule == MRule::given ? to_double(kv, "M") : 0.0;
  if (kv.count("h")) return derive_params(to_double(kv, "h"), rules, a, M);
  if (kv.count("lambda") && rules.a_rule != ARule::given && rules.m_rule != MRule::given)
    return params_for_lambda(to_double(kv, "lambda"), rules);
  throw ValidationError("need 'h' (or 'lambda' with both rules)");
}

PacketPoint FrameMap::lab_to_packet(const LabPoint& l) const {
  const double sa = std::sqrt(p_.a);
  return {l.t / sa, l.x / p_.a, (l.y + l.t * std::sqrt(1.0 + p_.a)) / (p_.a * sa)};
}

LabPoint FrameMap::packet_to_lab(const PacketPoint& q) const {
  const double sa = std::sqrt(p_.a);
  const double t = sa * q.T;
  return {t, p_.a * q.X, -t * std::sqrt(1.0 + p_.a) + p_.a * sa * q.Y};
}

Complex v0_oscillatory(double Z, double lam_eta, double M) {
  if (!(lam_eta > 1.0) || !(M > 0.0)) throw DomainError("v0_oscillatory: need lam_eta > 1 and M > 0");
  // Gaussian factor exp(-lam_eta s^2 / 2M) is below e^-60 beyond s_max.
  const double s_max = std::sqrt(120.0 * M / lam_eta);
  const double rate = lam_eta * (std::abs(Z - 1.0) + s_max * s_max);
  auto f = [&](double s) {
    const double ph = lam_eta * ((Z - 1.0) * s + s * s * s / 3.0);
    return std::polar(std::exp(-0.5 * lam_eta * s * s / M), ph);
  };
  AdaptiveOptions o;
  o.abs_tol = 1e-14;
  o.initial_panels = std::max(8, static_cast<int>(std::ceil(2.0 * rate * s_max / 2.0)));
  return integrate_adaptive<Complex>(f, -s_max, s_max, o).value;
}

V0Closed v0_closed_scaled(double Z, double lam_eta, double M) {
  if (!(lam_eta > 1.0) || !(M > 0.0)) throw DomainError("v0_closed: need lam_eta > 1 and M > 0");
  const double expo = lam_eta / (2.0 * M) * (Z - 1.0 + 1.0 / (6.0 * M * M));
  const double x = std::cbrt(lam_eta * lam_eta) * (Z - 1.0 + 1.0 / (4.0 * M * M));
  const double pre = std::log(2.0 * pi) - std::log(lam_eta) / 3.0 + expo;
  V0Closed out;
  double log_ai = 0.0;
  if (x >= 0.0) {
    log_ai = log_ai_positive(x);
    out.sign = 1;
  } else {
    const double v = airy_real(x).ai;
    if (v == 0.0) return out;
    out.sign = v > 0.0 ? 1 : -1;
    log_ai = std::log(std::abs(v));
  }
  out.log_abs = pre + log_ai;
  out.overflow = out.log_abs > 700.0;
  if (!out.overflow) out.value = out.sign * std::exp(out.log_abs);
  return out;
}

Complex v0_closed(double Z, double lam_eta, double M) {
  const V0Closed v = v0_closed_scaled(Z, lam_eta, M);
  if (v.overflow) throw DomainError("v0_closed: magnitude exceeds exp(700); use v0_closed_scaled");
  return {v.value, 0.0};
}

Complex v0_hat(double xi, double lam_eta, double M) {
  const double ph = lam_eta * (xi * xi * xi / 3.0 - xi);
  return std::polar(std::exp(-0.5 * lam_eta * xi * xi / M) / lam_eta, ph);
}

DataNorm data_l2_norm(const PacketParams& p, const CutoffSpec& c) {
  p.validate();
  const double lam = p.lambda();
  DataNorm out;
  auto gauss = [&](double eta) {
    const double k = lam * eta / p.M;
    const double xmax = std::sqrt(80.0 / k);
    AdaptiveOptions o;
    o.abs_tol = 1e-16 * xmax;
    const double v = integrate_adaptive<double>([&](double xi) { return std::exp(-k * xi * xi); }, -xmax, xmax, o).value;
    const double exact = std::sqrt(pi / k);
    out.gaussian_mismatch = std::max(out.gaussian_mismatch, std::abs(v - exact) / exact);
    return v;
  };
  AdaptiveOptions o;
  o.abs_tol = 1e-14;
  const double inner = integrate_adaptive<double>(
      [&](double eta) {
        const double s = c.psi(eta);
        return s == 0.0 ? 0.0 : s * s / eta * gauss(eta);
      },
      c.psi.lo(), c.psi.hi(), o).value;
  out.norm = std::sqrt(inner) / (p.h * lam);
  out.ratio = out.norm / (std::pow(lam, -1.25) * std::pow(p.M, 0.25) / p.h);
  return out;
}

NormFactors norm_scaling(double r, double q, const PacketParams& p) {
  if (!(r >= 1.0) || !(q >= 1.0)) throw DomainError("norm_scaling: exponents must be >= 1");
  NormFactors f;
  f.spatial = std::pow(p.a, -2.5 * recip(r));
  f.spacetime = std::pow(p.a, -0.5 * recip(q) - 2.5 * recip(r));
  return f;
}

double reduced_strichartz_rhs(double q, double r, const PacketParams& p) {
  if (!(r >= 1.0) || !(q >= 1.0)) throw DomainError("reduced_strichartz_rhs: exponents must be >= 1");
  const double iq = recip(q), ir = recip(r);
  return std::pow(p.lambda(), 1.0 - iq - 2.0 * ir) * std::pow(p.m_a(), 0.5 - ir - 2.0 * iq);
}

}  // namespace glide
