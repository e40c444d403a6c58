#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "spaceform/errors.hpp"

namespace spaceform {

// Regular rectangular chart, i along u, j along v.
struct Grid {
  double u0 = 0.0, v0 = 0.0;
  double du = 1.0, dv = 1.0;
  std::size_t nu = 3, nv = 3;

  static Grid square(double lo, double hi, std::size_t n) {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    return {lo, lo, h, h, n, n};
  }

  void validate() const;
  std::size_t size() const { return nu * nv; }
  // Row-major, v fastest.
  std::size_t index(std::size_t i, std::size_t j) const { return i * nv + j; }
  double u(std::size_t i) const { return u0 + static_cast<double>(i) * du; }
  double v(std::size_t j) const { return v0 + static_cast<double>(j) * dv; }
  double h() const { return std::max(du, dv); }
  GridLocation location(std::size_t k) const {
    const std::size_t i = k / nv, j = k % nv;
    return {i, j, u(i), v(j)};
  }
  bool same_shape(const Grid& o) const;
  bool operator==(const Grid& o) const;
};

template <class T>
class GridField {
 public:
  GridField() = default;
  GridField(std::size_t nu, std::size_t nv, T fill = T{}) : nu_(nu), nv_(nv), data_(nu * nv, fill) {}
  explicit GridField(const Grid& g, T fill = T{}) : GridField(g.nu, g.nv, fill) {}

  template <class F>
  static GridField sample(const Grid& g, F&& f) {
    GridField out(g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) out(i, j) = f(g.u(i), g.v(j));
    return out;
  }

  std::size_t nu() const { return nu_; }
  std::size_t nv() const { return nv_; }
  std::size_t size() const { return data_.size(); }
  bool matches(const Grid& g) const { return nu_ == g.nu && nv_ == g.nv; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * nv_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * nv_ + j]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, static_cast<double>(std::abs(x)));
    return m;
  }
  std::size_t argmax_abs() const {
    std::size_t best = 0;
    double m = -1.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (const double a = std::abs(data_[k]); a > m) m = a, best = k;
    return best;
  }

  template <class F>
  auto map(F&& f) const {
    using R = decltype(f(data_[0]));
    GridField<R> out(nu_, nv_);
    for (std::size_t k = 0; k < data_.size(); ++k) out[k] = f(data_[k]);
    return out;
  }

  GridField& operator+=(const GridField& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  GridField& operator-=(const GridField& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  GridField& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(T s, GridField a) { return a *= s; }

 private:
  std::size_t nu_ = 0, nv_ = 0;
  std::vector<T> data_;
};

using Field = GridField<double>;
using ComplexField = GridField<std::complex<double>>;

inline ComplexField to_complex(const Field& f) {
  return f.map([](double x) { return std::complex<double>(x, 0.0); });
}
inline Field real_part(const ComplexField& f) {
  return f.map([](std::complex<double> z) { return z.real(); });
}
inline Field imag_part(const ComplexField& f) {
  return f.map([](std::complex<double> z) { return z.imag(); });
}

}  // namespace spaceform
