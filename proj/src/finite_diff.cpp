#include "spaceform/finite_diff.hpp"

#include <complex>

namespace spaceform {

namespace {

// f(k) for k in [0,n), spacing h.
template <class T, class Get>
T first_2(Get&& f, std::size_t k, std::size_t n, double h) {
  if (k == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  if (k == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  return (f(k + 1) - f(k - 1)) / (2.0 * h);
}

template <class T, class Get>
T first_4(Get&& f, std::size_t k, std::size_t n, double h) {
  if (n < 5) return first_2<T>(f, k, n, h);
  const double d = 12.0 * h;
  if (k == 0) return (-25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) / d;
  if (k == 1) return (-3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4)) / d;
  if (k == n - 1)
    return (25.0 * f(n - 1) - 48.0 * f(n - 2) + 36.0 * f(n - 3) - 16.0 * f(n - 4) +
            3.0 * f(n - 5)) / d;
  if (k == n - 2)
    return (3.0 * f(n - 1) + 10.0 * f(n - 2) - 18.0 * f(n - 3) + 6.0 * f(n - 4) - f(n - 5)) / d;
  return (f(k - 2) - 8.0 * f(k - 1) + 8.0 * f(k + 1) - f(k + 2)) / d;
}

template <class T, class Get>
T second_2(Get&& f, std::size_t k, std::size_t n, double h) {
  const double h2 = h * h;
  if (n < 4) {
    const std::size_t c = 1;  // only one interior node
    return (f(c - 1) - 2.0 * f(c) + f(c + 1)) / h2;
  }
  if (n >= 5) {
    // 5-point one-sided; its error is O(h³) with a small constant, so the
    // boundary no longer dominates the interior O(h²) error.
    if (k == 0)
      return (35.0 * f(0) - 104.0 * f(1) + 114.0 * f(2) - 56.0 * f(3) + 11.0 * f(4)) / (12.0 * h2);
    if (k == n - 1)
      return (35.0 * f(n - 1) - 104.0 * f(n - 2) + 114.0 * f(n - 3) - 56.0 * f(n - 4) +
              11.0 * f(n - 5)) / (12.0 * h2);
  }
  if (k == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / h2;
  if (k == n - 1) return (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / h2;
  return (f(k - 1) - 2.0 * f(k) + f(k + 1)) / h2;
}

enum class Axis { U, V };

template <class T, class Stencil>
GridField<T> apply(const GridField<T>& f, const Grid& g, Axis axis, Stencil&& st) {
  g.validate();
  if (!f.matches(g)) throw DimensionMismatch("field shape does not match grid");
  GridField<T> out(g);
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j < g.nv; ++j) {
      if (axis == Axis::U) {
        auto get = [&](std::size_t k) { return f(k, j); };
        out(i, j) = st(get, i, g.nu, g.du);
      } else {
        auto get = [&](std::size_t k) { return f(i, k); };
        out(i, j) = st(get, j, g.nv, g.dv);
      }
    }
  return out;
}

template <class T>
GridField<T> first(const GridField<T>& f, const Grid& g, Axis axis, DiffOrder order) {
  if (order == DiffOrder::Fourth)
    return apply(f, g, axis, [](auto& get, std::size_t k, std::size_t n, double h) {
      return first_4<T>(get, k, n, h);
    });
  return apply(f, g, axis, [](auto& get, std::size_t k, std::size_t n, double h) {
    return first_2<T>(get, k, n, h);
  });
}

}  // namespace

void Grid::validate() const {
  if (!(du > 0.0) || !(dv > 0.0) || !std::isfinite(du) || !std::isfinite(dv))
    throw InvalidGrid("grid spacings must be positive and finite");
  if (nu < 3 || nv < 3) throw InvalidGrid("grid needs at least 3 points per axis");
  if (!std::isfinite(u0) || !std::isfinite(v0)) throw InvalidGrid("grid origin must be finite");
}

bool Grid::same_shape(const Grid& o) const { return nu == o.nu && nv == o.nv; }

bool Grid::operator==(const Grid& o) const {
  return same_shape(o) && u0 == o.u0 && v0 == o.v0 && du == o.du && dv == o.dv;
}

template <class T>
GridField<T> diff_u(const GridField<T>& f, const Grid& g, DiffOrder order) {
  return first(f, g, Axis::U, order);
}
template <class T>
GridField<T> diff_v(const GridField<T>& f, const Grid& g, DiffOrder order) {
  return first(f, g, Axis::V, order);
}
template <class T>
GridField<T> diff_uu(const GridField<T>& f, const Grid& g) {
  return apply(f, g, Axis::U, [](auto& get, std::size_t k, std::size_t n, double h) {
    return second_2<T>(get, k, n, h);
  });
}
template <class T>
GridField<T> diff_vv(const GridField<T>& f, const Grid& g) {
  return apply(f, g, Axis::V, [](auto& get, std::size_t k, std::size_t n, double h) {
    return second_2<T>(get, k, n, h);
  });
}
template <class T>
GridField<T> diff_uv(const GridField<T>& f, const Grid& g, DiffOrder order) {
  return diff_u(diff_v(f, g, order), g, order);
}

double diff_u_at(const Field& f, const Grid& g, std::size_t i, std::size_t j) {
  return first_2<double>([&](std::size_t k) { return f(k, j); }, i, g.nu, g.du);
}
double diff_v_at(const Field& f, const Grid& g, std::size_t i, std::size_t j) {
  return first_2<double>([&](std::size_t k) { return f(i, k); }, j, g.nv, g.dv);
}

#define SPACEFORM_INSTANTIATE(T)                                                   \
  template GridField<T> diff_u<T>(const GridField<T>&, const Grid&, DiffOrder);   \
  template GridField<T> diff_v<T>(const GridField<T>&, const Grid&, DiffOrder);   \
  template GridField<T> diff_uu<T>(const GridField<T>&, const Grid&);             \
  template GridField<T> diff_vv<T>(const GridField<T>&, const Grid&);             \
  template GridField<T> diff_uv<T>(const GridField<T>&, const Grid&, DiffOrder);

SPACEFORM_INSTANTIATE(double)
SPACEFORM_INSTANTIATE(std::complex<double>)
#undef SPACEFORM_INSTANTIATE

}  // namespace spaceform
