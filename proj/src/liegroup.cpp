#include "spaceform/liegroup.hpp"

#include <cmath>
#include <array>
#include <complex>
#include <string>

#include "spaceform/errors.hpp"
#include "spaceform/geomcore.hpp"

namespace spaceform::lie {

namespace {

void check_spec(const GeneratorSpec& g) {
  if (g.k < 1 || g.k > 3 || g.l < 1 || g.l > 2)
    throw IndexOutOfRange("generator P_{" + std::to_string(g.k) + "," + std::to_string(g.l) +
                          "} does not exist");
  if (!std::isfinite(g.param)) throw Error("generator parameter must be finite");
}

Eigen::Matrix4d minkowski() { return Eigen::Vector4d(1, 1, 1, -1).asDiagonal(); }

template <class R>
using Mat4 = Eigen::Matrix<R, 4, 4>;
template <class R>
using CMat3 = Eigen::Matrix<std::complex<R>, 3, 3>;

template <class R>
Mat4<R> generator(const GeneratorSpec& g) {
  check_spec(g);
  Mat4<R> P = Mat4<R>::Identity();
  const R x = static_cast<R>(g.param);
  if (g.l == 1) {
    const R c = std::cos(x), s = std::sin(x);
    // rotation planes: (1,2), (1,3), (2,3)
    const int a = g.k == 3 ? 1 : 0;
    const int b = g.k == 1 ? 1 : 2;
    P(a, a) = c, P(a, b) = -s;
    P(b, a) = s, P(b, b) = c;
  } else {
    const R ch = std::cosh(x), sh = std::sinh(x);
    // boost planes: (3,4), (2,4), (1,4)
    const int a = 3 - g.k;
    P(a, a) = ch, P(a, 3) = sh;
    P(3, a) = sh, P(3, 3) = ch;
  }
  return P;
}

// Coordinates of T̃_P(Θ1..Θ3) in (Θ1,Θ2,Θ3, conj Θ1..conj Θ3). The basis is
// orthogonal for the complex-bilinear metric of E⁴₁ (pair weights η_iη_j);
// projecting with the unnormalized vectors √2·Θ keeps integer inputs exact.
template <class R>
Eigen::Matrix<std::complex<R>, 6, 3> full_action(const Mat4<R>& P) {
  using C = std::complex<R>;
  using Mat4c = Eigen::Matrix<C, 4, 4>;
  const C one(1, 0), i(0, 1), zero(0, 0);
  // √2·Θ1 = e12 + i e34, √2·Θ2 = e13 − i e24, √2·Θ3 = i e14 + e23
  const std::array<std::array<C, 6>, 3> b = {{{one, zero, zero, zero, zero, i},
                                              {zero, one, zero, zero, -i, zero},
                                              {zero, zero, i, one, zero, zero}}};
  const std::array<R, 6> weight = {1, 1, -1, 1, -1, -1};
  const Mat4c Pc = P.template cast<C>();
  Eigen::Matrix<C, 6, 3> out;
  for (int k = 0; k < 3; ++k) {
    Mat4c m = Mat4c::Zero();
    for (int p = 0; p < 6; ++p) {
      const int r = Bivector::kPairs[p][0] - 1, c = Bivector::kPairs[p][1] - 1;
      m(r, c) += b[k][p];
      m(c, r) -= b[k][p];
    }
    const Mat4c img = Pc * m * Pc.transpose();
    for (int j = 0; j < 3; ++j) {
      C same = zero, conj = zero;
      for (int p = 0; p < 6; ++p) {
        const C x = img(Bivector::kPairs[p][0] - 1, Bivector::kPairs[p][1] - 1);
        same += weight[p] * x * b[j][p];
        conj += weight[p] * x * std::conj(b[j][p]);
      }
      out(j, k) = same / R(2);
      out(3 + j, k) = conj / R(2);
    }
  }
  return out;
}

}  // namespace

Eigen::Matrix4d lorentz_generator(const GeneratorSpec& g) { return generator<double>(g); }

Eigen::Matrix3cd generator_image(const GeneratorSpec& g) {
  check_spec(g);
  Eigen::Matrix3cd Q = Eigen::Matrix3cd::Identity();
  const double x = g.param;
  if (g.l == 1) {
    const double c = std::cos(x), s = std::sin(x);
    switch (g.k) {
      case 1: Q(1, 1) = c, Q(1, 2) = -s, Q(2, 1) = s, Q(2, 2) = c; break;
      case 2: Q(0, 0) = c, Q(0, 2) = s, Q(2, 0) = -s, Q(2, 2) = c; break;
      case 3: Q(0, 0) = c, Q(0, 1) = -s, Q(1, 0) = s, Q(1, 1) = c; break;
    }
  } else {
    const double ch = std::cosh(x), sh = std::sinh(x);
    const Complex ish = kI * sh;
    switch (g.k) {
      case 1: Q(1, 1) = ch, Q(1, 2) = ish, Q(2, 1) = -ish, Q(2, 2) = ch; break;
      case 2: Q(0, 0) = ch, Q(0, 2) = ish, Q(2, 0) = -ish, Q(2, 2) = ch; break;
      case 3: Q(0, 0) = ch, Q(0, 1) = ish, Q(1, 0) = -ish, Q(1, 1) = ch; break;
    }
  }
  return Q;
}

Eigen::Matrix4d word_product(const Word& w) {
  Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
  for (const auto& g : w) P = P * lorentz_generator(g);
  return P;
}

Eigen::Matrix3cd induced_action(const Eigen::Matrix4d& P, double tol) {
  const Eigen::Matrix4d eta = minkowski();
  const double err = (P.transpose() * eta * P - eta).cwiseAbs().maxCoeff();
  if (!(err <= tol * std::max(1.0, P.cwiseAbs().maxCoeff() * P.cwiseAbs().maxCoeff())))
    throw NonLorentz("matrix does not preserve the Minkowski form (residual " +
                     std::to_string(err) + ")");
  return full_action<double>(P).topRows<3>();
}

double induced_leakage(const Eigen::Matrix4d& P) {
  return full_action<double>(P).bottomRows<3>().cwiseAbs().maxCoeff();
}

double WordCheck::max() const { return std::max({homomorphism, orthogonality, determinant}); }

// Words are re-evaluated in extended precision: QᵀQ − I of a double-valued Q
// cannot resolve below about |Q|²·ε, which exceeds 1e−12 for long boost words.
PhiReport phi_check(const std::vector<Word>& words) {
  using R = long double;
  PhiReport r;
  for (const auto& w : words) {
    Mat4<R> P = Mat4<R>::Identity();
    CMat3<R> prod = CMat3<R>::Identity();
    for (const auto& g : w) {
      const Mat4<R> G = generator<R>(g);
      P = P * G;
      prod = prod * full_action<R>(G).template topRows<3>();
    }
    const CMat3<R> Q = full_action<R>(P).template topRows<3>();
    WordCheck c;
    c.homomorphism = static_cast<double>((Q - prod).cwiseAbs().maxCoeff());
    c.orthogonality = static_cast<double>((Q.transpose() * Q - CMat3<R>::Identity()).cwiseAbs().maxCoeff());
    c.determinant = static_cast<double>(std::abs(Q.determinant() - std::complex<R>(1, 0)));
    r.max_residual = std::max(r.max_residual, c.max());
    r.words.push_back(c);
  }
  return r;
}

}  // namespace spaceform::lie
