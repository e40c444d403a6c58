#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/space_form.hpp"

using namespace spaceform;

namespace {

FrameCoefficients random_coefficients(std::mt19937_64& rng, double L0) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  FrameCoefficients k;
  k.lu = d(rng), k.lv = d(rng);
  k.a1 = d(rng), k.a2 = d(rng), k.a3 = d(rng);
  k.b1 = d(rng), k.b2 = d(rng), k.b3 = d(rng);
  k.m1 = d(rng), k.m2 = d(rng);
  k.curv = L0 * std::exp(2.0 * d(rng));
  return k;
}

// Gram matrix of (T1,T2,N1,N2) divided by e^{2λ}.
Eigen::Matrix4d unit_gram(SurfaceCase c) {
  const auto s = tangent_normal_signs(c);
  return Eigen::Vector4d(s[0], s[1], s[2], s[3]).asDiagonal();
}

}  // namespace

TEST_CASE("connection matrices are metric compatible and torsion free") {
  // With h(X_a, X_b) = e^{2λ}G and frame_u = frame·S, differentiating the Gram
  // matrix gives SᵀG + GS = 2λ_u G on the tangent-normal block; T1_v = T2_u
  // gives S col 1 = T col 0; F_u = T1 and F_v = T2.
  std::mt19937_64 rng(21);
  for (SurfaceCase c : kAllCases) {
    const Eigen::Matrix4d G = unit_gram(c);
    for (double L0 : {-1.0, 0.0, 0.7}) {
      for (int n = 0; n < 50; ++n) {
        const FrameCoefficients k = random_coefficients(rng, L0);
        const ConnectionPair p = connection_matrices(c, k);
        const Eigen::Matrix4d S4 = p.S.topLeftCorner<4, 4>(), T4 = p.T.topLeftCorner<4, 4>();
        CHECK((S4.transpose() * G + G * S4 - 2.0 * k.lu * G).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((T4.transpose() * G + G * T4 - 2.0 * k.lv * G).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((p.S.col(1) - p.T.col(0)).cwiseAbs().maxCoeff() < 1e-13);
        Matrix5d e = Matrix5d::Identity();
        CHECK((p.S.col(4) - e.col(0)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((p.T.col(4) - e.col(1)).cwiseAbs().maxCoeff() == 0.0);
        // h(X_a, F) = 0 with h(F,F) = 1/L0 forces the F row to −L0 e^{2λ} h(X_a, T_i).
        CHECK(std::abs(p.S(4, 0) + k.curv) < 1e-13);
        CHECK(std::abs(p.T(4, 1) + k.curv * G(1, 1)) < 1e-13);
        CHECK(p.S.row(4).segment(1, 3).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("connection matrices of zero data") {
  FrameCoefficients k;
  for (SurfaceCase c : kAllCases) {
    const ConnectionPair p = connection_matrices(c, k);
    CHECK(p.S(0, 4) == 1.0);
    CHECK(p.T(1, 4) == 1.0);
    CHECK(p.S.cwiseAbs().sum() == 1.0);
    CHECK(p.T.cwiseAbs().sum() == 1.0);
  }
  k.curv = 1.0;  // L0 = 1, λ = 0
  const ConnectionPair p = connection_matrices(SurfaceCase::Riemannian, k);
  CHECK(p.S(4, 0) == -1.0);
  CHECK(p.T(4, 1) == -1.0);
}

TEST_CASE("connection matrices are affine in the coefficients") {
  std::mt19937_64 rng(22);
  const FrameCoefficients zero;
  for (SurfaceCase c : kAllCases) {
    const FrameCoefficients a = random_coefficients(rng, 1.0), b = random_coefficients(rng, -1.0);
    const ConnectionPair p0 = connection_matrices(c, zero);
    const ConnectionPair pa = connection_matrices(c, a), pb = connection_matrices(c, b);
    const ConnectionPair pab = connection_matrices(c, a + 2.0 * b);
    CHECK((pab.S - p0.S - (pa.S - p0.S) - 2.0 * (pb.S - p0.S)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((pab.T - p0.T - (pa.T - p0.T) - 2.0 * (pb.T - p0.T)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("sphere connection matrices carry the shape operator") {
  const Grid g = Grid::square(-0.5, 0.5, 41);
  const FundamentalData d = oracle::unit_sphere(g);
  const std::size_t i = 30, j = 12;
  const ConnectionPair p = build_connection_matrices(d, i, j);
  const double el = std::exp(d.lambda()(i, j));
  // Second fundamental form of the unit sphere is −h along N1; N1_u = T1, N1_v = T2 up to scale.
  CHECK(std::abs(p.S(2, 0) + el) < 1e-14);
  CHECK(std::abs(p.T(2, 1) + el) < 1e-14);
  CHECK(std::abs(p.S(3, 0)) < 1e-14);
  CHECK(std::abs(p.S(0, 2) - el) < 1e-14);
  const double lu = -2.0 * g.u(i) / (1.0 + g.u(i) * g.u(i) + g.v(j) * g.v(j));
  CHECK(std::abs(p.S(0, 0) - lu) < 1e-3);
}

TEST_CASE("validate_frame on canonical frames") {
  for (SurfaceCase c : kAllCases)
    for (double L0 : {-2.0, 0.0, 0.5}) {
      const SpaceFormModel m = ambient_model(c, L0);
      const Eigen::MatrixXd f = canonical_initial_frame(m, 0.3);
      const FrameResiduals r = validate_frame(f, 0.3, m);
      CHECK(r.max_abs() < 1e-14);
      CHECK(r.quadric.has_value() == !m.flat());
    }
}

TEST_CASE("validate_frame reports expected minus actual") {
  const SpaceFormModel m = ambient_model(SurfaceCase::NeutralTime, 0.0);
  Eigen::MatrixXd f = canonical_initial_frame(m, 0.0);
  f.col(3) = f.col(0);  // h(N2,N2) = +1 where −1 is expected
  const FrameResiduals r = validate_frame(f, 0.0, m);
  CHECK(r.pairwise[9] == -2.0);
  CHECK(r.pairwise[2] == 0.0);
  CHECK(r.pairwise[0] == 0.0);
  CHECK_THROWS_AS(validate_frame(Eigen::MatrixXd::Zero(3, 5), 0.0, m), DimensionMismatch);
  const SpaceFormModel curved = ambient_model(SurfaceCase::NeutralTime, 1.0);
  CHECK_THROWS_AS(validate_frame(Eigen::MatrixXd::Zero(5, 4), 0.0, curved), DimensionMismatch);
}

TEST_CASE("ambient models") {
  CHECK(ambient_model(SurfaceCase::Riemannian, 0.0).ambient.dim() == 4);
  const SpaceFormModel h = ambient_model(SurfaceCase::LorentzSpace, -0.25);
  CHECK(h.ambient.dim() == 5);
  CHECK(*h.quadric_const == -4.0);
  int neg = 0;
  for (std::size_t k = 0; k < h.ambient.dim(); ++k) neg += h.ambient[k] < 0;
  CHECK(neg == 2);
}

TEST_CASE("fundamental data validation") {
  const Grid g = Grid::square(0.0, 1.0, 5);
  FundamentalData d = FundamentalData::zeros(ambient_model(SurfaceCase::Riemannian, 0.0), g);
  CHECK_NOTHROW(d.validate());
  d.alpha(2)(1, 1) = std::nan("");
  CHECK_THROWS_AS(d.validate(), NonFiniteValue);
  d.alpha(2) = Field(4, 5);
  CHECK_THROWS_AS(d.validate(), DimensionMismatch);
  Grid bad = g;
  bad.du = 0.0;
  CHECK_THROWS_AS(FundamentalData::zeros(ambient_model(SurfaceCase::Riemannian, 0.0), bad),
                  InvalidGrid);
}
