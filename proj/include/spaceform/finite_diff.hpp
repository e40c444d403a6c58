#pragma once

#include "spaceform/grid.hpp"

namespace spaceform {

// Second order: 3-point central, 3-point one-sided first derivatives and
// 4-point one-sided second derivatives at the boundary.
// Fourth order: 5-point stencils (biased near the boundary); needs 5 points.
enum class DiffOrder { Second = 2, Fourth = 4 };

template <class T>
GridField<T> diff_u(const GridField<T>& f, const Grid& g, DiffOrder order = DiffOrder::Second);
template <class T>
GridField<T> diff_v(const GridField<T>& f, const Grid& g, DiffOrder order = DiffOrder::Second);
template <class T>
GridField<T> diff_uu(const GridField<T>& f, const Grid& g);
template <class T>
GridField<T> diff_vv(const GridField<T>& f, const Grid& g);
template <class T>
GridField<T> diff_uv(const GridField<T>& f, const Grid& g, DiffOrder order = DiffOrder::Second);

// Pointwise second-order first derivatives.
double diff_u_at(const Field& f, const Grid& g, std::size_t i, std::size_t j);
double diff_v_at(const Field& f, const Grid& g, std::size_t i, std::size_t j);

// Cubic Lagrange value at the midpoint between samples k and k+1 of a 1-D
// sequence accessed through get(index), n samples.
template <class T, class Get>
T midpoint_cubic(Get&& get, std::size_t k, std::size_t n) {
  if (n < 4) return 0.5 * (get(k) + get(k + 1));
  std::size_t s = k == 0 ? 0 : k - 1;
  if (s + 3 >= n) s = n - 4;
  // Lagrange weights at x = k + 1/2 relative to nodes s..s+3.
  const double x = static_cast<double>(k) + 0.5 - static_cast<double>(s);
  T out = get(s) * 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (x - b) / static_cast<double>(a - b);
    out = out + get(s + a) * w;
  }
  return out;
}

}  // namespace spaceform
