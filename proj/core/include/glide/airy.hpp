#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "glide/cutoff.hpp"
#include "glide/quadrature.hpp"

namespace glide {

// |z| bound of the certified evaluator.
inline constexpr double kAiryEnvelope = 50.0;
inline constexpr int kMaxZeroIndex = 1'000'000;

Complex ai(Complex z);
Complex ai_prime(Complex z);
double ai(double x);
double ai_prime(double x);

struct AiryPair {
  double ai = 0.0;
  double aip = 0.0;
};
struct AiryPairC {
  Complex ai;
  Complex aip;
};

// Unbounded evaluators.  The real one is valid on the whole line (it
// underflows to zero far on the decaying side); the complex one overflows in
// the growing sectors once |z|^{3/2} is large.
AiryPair airy_real(double x);
AiryPairC airy_complex(Complex z);

// log Ai(x) for x >= 0 without underflow.
double log_ai_positive(double x);

// A_{+}(w) for sign = +1, A_{-}(w) for sign = -1.
Complex a_pm(int sign, double w);

// L(w) = pi + 2 arg A_+(w), continuous, L(0) = pi/3, L -> 0 at -infinity.
double big_l(double w);
// L'(w) = 1 / (2 pi |A_+(w)|^2).
double big_l_prime(double w);
// Truncated large-w expansion, w >= 1; n_terms in {0, 1}.
double big_l_asymptotic(double w, int n_terms);

// k-th zero of Ai(-w), k >= 1.
double airy_zero(int k);

struct PhaseRow {
  int k = 0;
  double omega = 0.0;
  double l_prime = 0.0;      // L'(omega_k) from the phase derivative
  double ai_prime_sq = 0.0;  // Ai'(-omega_k)^2
};

class PhaseTable {
public:
  explicit PhaseTable(int k_max);
  static PhaseTable from_csv(std::istream& in);

  int size() const { return static_cast<int>(rows_.size()); }
  const PhaseRow& row(int k) const { return rows_.at(static_cast<std::size_t>(k - 1)); }
  double omega(int k) const { return row(k).omega; }
  double l_prime(int k) const { return row(k).l_prime; }
  const std::vector<PhaseRow>& rows() const { return rows_; }

  void write_csv(std::ostream& out) const;
  std::vector<std::string> invariant_violations(double tol = 1e-8) const;

private:
  PhaseTable() = default;
  std::vector<PhaseRow> rows_;
};

// Process-wide table holding at least k_min zeros.
std::shared_ptr<const PhaseTable> shared_phase_table(int k_min);

struct PoissonSum {
  Complex value;
  double error = 0.0;
  int nodes = 0;
};

// sum_{|N| <= n_max} integral exp(-i N L(w)) phi(w) dw
PoissonSum poisson_lhs(const SmoothWindow& phi, int n_max, int order = 16, double tol = 1e-9);
// 2 pi sum_k phi(omega_k) / L'(omega_k)
double poisson_rhs(const SmoothWindow& phi, const PhaseTable& table);

}  // namespace glide
