#include "glide/field.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace glide {

namespace {
void check_axis(const std::vector<double>& a, const char* name) {
  if (a.empty()) throw ValidationError(fmt::format("{} axis is empty", name));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i])) throw ValidationError(fmt::format("{} axis has a non-finite entry", name));
    if (i > 0 && !(a[i] > a[i - 1])) throw ValidationError(fmt::format("{} axis is not strictly increasing", name));
  }
}

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ValidationError("truncated field file");
  return v;
}
}  // namespace

ComplexField::ComplexField(std::vector<double> t, std::vector<double> x, std::vector<double> y)
    : t_(std::move(t)), x_(std::move(x)), y_(std::move(y)) {
  check_axis(t_, "T");
  check_axis(x_, "X");
  check_axis(y_, "Y");
  v_.assign(t_.size() * x_.size() * y_.size(), Complex{});
}

void ComplexField::validate() const {
  check_axis(t_, "T");
  check_axis(x_, "X");
  check_axis(y_, "Y");
  if (v_.size() != t_.size() * x_.size() * y_.size()) throw ValidationError("field shape does not match its axes");
  for (const Complex& z : v_)
    if (std::isnan(z.real()) || std::isnan(z.imag())) throw ValidationError("field contains NaN");
}

void ComplexField::write_binary(std::ostream& out) const {
  for (const auto* a : {&t_, &x_, &y_}) put<std::uint64_t>(out, a->size());
  for (const auto* a : {&t_, &x_, &y_})
    for (double v : *a) put(out, v);
  for (const Complex& z : v_) {
    put(out, z.real());
    put(out, z.imag());
  }
}

ComplexField ComplexField::read_binary(std::istream& in) {
  std::uint64_t n[3];
  for (auto& k : n) {
    k = get<std::uint64_t>(in);
    if (k == 0 || k > (1u << 28)) throw ValidationError("implausible axis length in field file");
  }
  std::vector<double> axes[3];
  for (int i = 0; i < 3; ++i)
    for (std::uint64_t j = 0; j < n[i]; ++j) axes[i].push_back(get<double>(in));
  ComplexField f(std::move(axes[0]), std::move(axes[1]), std::move(axes[2]));
  for (Complex& z : f.v_) {
    const double re = get<double>(in);
    z = {re, get<double>(in)};
  }
  f.validate();
  return f;
}

void ComplexField::write_csv(std::ostream& out) const {
  out << "T,X,Y,re,im,abs\n";
  for (std::size_t i = 0; i < t_.size(); ++i)
    for (std::size_t j = 0; j < x_.size(); ++j)
      for (std::size_t k = 0; k < y_.size(); ++k) {
        const Complex z = at(i, j, k);
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", t_[i], x_[j], y_[k], z.real(),
                           z.imag(), std::abs(z));
      }
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ValidationError("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

}  // namespace glide
