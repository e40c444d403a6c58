#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/finite_diff.hpp"
#include "spaceform/twistor.hpp"

using namespace spaceform;

namespace {

FrameCoefficients random_coefficients(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  FrameCoefficients k;
  k.lu = d(rng), k.lv = d(rng);
  k.a1 = d(rng), k.a2 = d(rng), k.a3 = d(rng);
  k.b1 = d(rng), k.b2 = d(rng), k.b3 = d(rng);
  k.m1 = d(rng), k.m2 = d(rng);
  return k;
}

Eigen::Matrix4cd as_matrix(const Bivector& b) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (i != j) m(i - 1, j - 1) = b.component(i, j);
  return m;
}

Eigen::Matrix<Complex, 6, 1> upper(const Eigen::Matrix4cd& m) {
  Eigen::Matrix<Complex, 6, 1> v;
  for (int p = 0; p < 6; ++p)
    v(p) = m(Bivector::kPairs[p][0] - 1, Bivector::kPairs[p][1] - 1);
  return v;
}

// Unit-frame matrix of an endomorphism given on (T1,T2,N1,N2): e = X·e^{-λ} reordered.
Eigen::Matrix4d to_unit_frame(SurfaceCase c, const Eigen::Matrix4d& m) {
  const auto order = frame_order(c);
  Eigen::Matrix4d P = Eigen::Matrix4d::Zero();
  for (int n = 0; n < 4; ++n) P(order[n], n) = 1.0;
  return P * m * P.transpose();
}

// Matrix of B ↦ ωB + Bωᵀ on the branch basis, expanded in the full six-element
// basis; rows 3..5 hold the part that leaves the branch.
Eigen::Matrix<Complex, 6, 3> induced_on_basis(SurfaceCase c, int branch,
                                              const Eigen::Matrix4d& w) {
  const auto same = hat_basis(c, branch), other = hat_basis(c, 1 - branch);
  Eigen::Matrix<Complex, 6, 6> F;
  for (int a = 0; a < 3; ++a) {
    F.col(a) = upper(as_matrix(same[a]));
    F.col(3 + a) = upper(as_matrix(other[a]));
  }
  const auto lu = F.fullPivLu();
  Eigen::Matrix<Complex, 6, 3> out;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix4cd B = as_matrix(same[a]);
    out.col(a) = lu.solve(upper(w.cast<Complex>() * B + B * w.transpose().cast<Complex>()));
  }
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

FundamentalData lorentz_space_constant(double a1, double a2, double a3, double b1, double b2,
                                       double b3) {
  FundamentalData d = FundamentalData::zeros(ambient_model(SurfaceCase::LorentzSpace, 0.0),
                                             Grid::square(0.0, 1.0, 4));
  d.alpha(1) = Field(d.grid, a1), d.alpha(2) = Field(d.grid, a2), d.alpha(3) = Field(d.grid, a3);
  d.beta(1) = Field(d.grid, b1), d.beta(2) = Field(d.grid, b2), d.beta(3) = Field(d.grid, b3);
  return d;
}

}  // namespace

TEST_CASE("hat matrices agree with the connection induced on bivectors") {
  std::mt19937_64 rng(31);
  for (SurfaceCase c : kAllCases)
    for (int b = 0; b < 2; ++b) {
      INFO(case_name(c), " branch ", b);
      for (int n = 0; n < 20; ++n) {
        const FrameCoefficients k = random_coefficients(rng);
        const ConnectionPair st = connection_matrices(c, k);
        const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
        const Eigen::Matrix4d wu = to_unit_frame(c, st.S.topLeftCorner<4, 4>()) - k.lu * I;
        const Eigen::Matrix4d wv = to_unit_frame(c, st.T.topLeftCorner<4, 4>()) - k.lv * I;
        const auto Mu = induced_on_basis(c, b, wu), Mv = induced_on_basis(c, b, wv);
        const HatPair h = hat_matrices(c, b, point_invariants(c, k));
        CHECK(max_abs(Mu.bottomRows<3>()) < 1e-12);
        CHECK(max_abs(Mv.bottomRows<3>()) < 1e-12);
        CHECK(max_abs(Mu.topRows<3>() - h.along_u) < 1e-12);
        CHECK(max_abs(Mv.topRows<3>() - h.along_v) < 1e-12);
      }
    }
}

TEST_CASE("curvature right-hand side is the ambient curvature on bivectors") {
  // R(T1,T2)Z = L0(h(T2,Z)T1 − h(T1,Z)T2), written in the unit frame.
  for (SurfaceCase c : kAllCases)
    for (int b = 0; b < 2; ++b) {
      INFO(case_name(c), " branch ", b);
      const double curv = 0.37;
      const auto signs = tangent_normal_signs(c);
      Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
      rho(0, 1) = curv * signs[1];
      rho(1, 0) = -curv * signs[0];
      const auto M = induced_on_basis(c, b, to_unit_frame(c, rho));
      CHECK(max_abs(M.bottomRows<3>()) < 1e-14);
      CHECK(max_abs(M.topRows<3>() - curvature_rhs(c, b, curv)) < 1e-14);
    }
}

TEST_CASE("hat matrices are skew-adjoint for the basis Gram matrix") {
  std::mt19937_64 rng(32);
  for (SurfaceCase c : kAllCases)
    for (int b = 0; b < 2; ++b) {
      const auto basis = hat_basis(c, b);
      Eigen::Matrix3cd G;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G(i, j) = bivector_inner(basis[i], basis[j], c);
      const HatPair h = hat_matrices(c, b, point_invariants(c, random_coefficients(rng)));
      CHECK(max_abs(G * h.along_u + h.along_u.transpose() * G) < 1e-13);
      CHECK(max_abs(G * h.along_v + h.along_v.transpose() * G) < 1e-13);
      if (c == SurfaceCase::Riemannian || is_lorentzian(c))
        CHECK(max_abs(h.along_u + h.along_u.transpose()) < 1e-13);
    }
}

TEST_CASE("twistor invariants of simple data") {
  const Grid g = Grid::square(-0.5, 0.5, 9);
  for (SurfaceCase c : kAllCases) {
    const TwistorInvariants t = twistor_invariants(FundamentalData::zeros(ambient_model(c, 0.0), g));
    for (int b = 0; b < 2; ++b)
      for (const ComplexField* f : {&t.W[b], &t.X[b], &t.Y[b], &t.Z[b], &t.phi[b], &t.psi[b]})
        CHECK(f->max_abs() == 0.0);
  }
  const FundamentalData s = oracle::unit_sphere(g);
  const TwistorInvariants t = twistor_invariants(s);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double el = std::exp(s.lambda()[k]);
    CHECK(std::abs(t.W[0][k]) + std::abs(t.X[1][k]) == 0.0);
    CHECK(std::abs(t.Y[0][k] + el) < 1e-15);
    CHECK(std::abs(t.Y[1][k] - el) < 1e-15);
    CHECK(std::abs(t.Z[0][k] + el) < 1e-15);
    CHECK(std::abs(t.delta[0][k] + el * el) < 1e-14);
    CHECK(std::abs(t.delta[1][k] + el * el) < 1e-14);
    const HatPair h = hat_matrices(SurfaceCase::Riemannian, 0, point_invariants(
        SurfaceCase::Riemannian, FrameCoefficients{0, 0, -el, 0, -el, 0, 0, 0, 0, 0, 0}));
    CHECK(std::abs(h.along_u(0, 2) + el) < 1e-15);
  }
  FrameCoefficients k;
  k.a2 = 1.0, k.b1 = 2.0;
  CHECK(std::abs(point_invariants(SurfaceCase::LorentzSpace, k).W[0] - Complex(1.0, -2.0)) == 0.0);
}

TEST_CASE("curvature residual") {
  const Grid g1 = Grid::square(-1, 1, 41), g2 = Grid::square(-1, 1, 81);
  for (SurfaceCase c : kAllCases)
    CHECK(curvature_residual(FundamentalData::zeros(ambient_model(c, 0.0), g1)).max_abs() == 0.0);
  const double r1 = curvature_residual(oracle::unit_sphere(g1)).max_abs();
  const double r2 = curvature_residual(oracle::unit_sphere(g2)).max_abs();
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
  // ∇̂ itself is not flat on the sphere.
  const auto hc = hat_connection_matrices(oracle::unit_sphere(g1));
  CHECK(max_abs(hc.points[200][0].along_u) > 0.5);
  const Eigen::Matrix3cd rhs = curvature_rhs(SurfaceCase::Riemannian, 0, 2.5);
  CHECK(rhs(1, 2) == Complex(2.5));
  CHECK(rhs(2, 1) == Complex(-2.5));
}

TEST_CASE("degeneracy report") {
  const Grid g = Grid::square(-0.5, 0.5, 11);
  const DegeneracyReport z =
      degeneracy_report(FundamentalData::zeros(ambient_model(SurfaceCase::Riemannian, 0.0), g));
  CHECK(z.degenerate);
  CHECK_FALSE(z.nondegenerate);
  CHECK(z.max_curvature_defect == 0.0);
  CHECK(z.max_normal_curvature == 0.0);
  const DegeneracyReport s = degeneracy_report(oracle::unit_sphere(g));
  CHECK(s.nondegenerate);
  CHECK(s.min_abs_delta > 0.5);
  CHECK(s.max_curvature_defect == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("A and B functions") {
  const Grid g = Grid::square(-0.5, 0.5, 81);
  const FundamentalData s = oracle::unit_sphere(g);
  const ABFunctions ab = ab_functions(twistor_invariants(s));
  double err = 0.0;
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j < g.nv; ++j) {
      const double u = g.u(i), v = g.v(j), q = 1.0 + u * u + v * v;
      const double lu = -2.0 * u / q, lv = -2.0 * v / q;
      for (int b = 0; b < 2; ++b) {
        err = std::max(err, std::abs(ab.A[b](i, j) - lu));
        err = std::max(err, std::abs(ab.B[b](i, j) - lv));
      }
    }
  CHECK(err < 10 * g.h() * g.h());

  TwistorInvariants c = twistor_invariants(s);
  for (int b = 0; b < 2; ++b) {
    c.W[b] = ComplexField(g, 0.3), c.X[b] = ComplexField(g, -1.0);
    c.Y[b] = ComplexField(g, 2.0), c.Z[b] = ComplexField(g, 0.5);
  }
  c.refresh_delta();
  const ABFunctions cab = ab_functions(c);
  for (int b = 0; b < 2; ++b) CHECK(cab.A[b].max_abs() + cab.B[b].max_abs() < 1e-13);

  const TwistorInvariants zero =
      twistor_invariants(FundamentalData::zeros(ambient_model(SurfaceCase::Riemannian, 0.0), g));
  CHECK_THROWS_AS(ab_functions(zero), DegenerateDelta);
}

TEST_CASE("delbar residual") {
  const DelbarResidual z = delbar_residual(lorentz_space_constant(0, 0, 0, 0, 0, 0));
  CHECK(z.max_abs == 0.0);
  // α2 = 1 gives W = X = 1, Y = Z = 0.
  const DelbarResidual w = delbar_residual(lorentz_space_constant(0, 1, 0, 0, 0, 0));
  CHECK(std::abs(w.theta2[0] - 0.5) < 1e-15);
  CHECK(std::abs(w.theta3[0] + 0.5 * kI) < 1e-15);
  // α1 = β3, α2 = −β2, α3 = β1
  CHECK(delbar_residual(lorentz_space_constant(0.3, -1.2, 2.0, 2.0, 1.2, 0.3)).max_abs < 1e-15);
  CHECK_THROWS_AS(delbar_residual(oracle::unit_sphere(Grid::square(0, 1, 4))), WrongCase);
}

TEST_CASE("delbar residual is the ∂̄ derivative of Θ1") {
  // ∇̂_{∂̄} = (∇̂_{T1} + i∇̂_{T2})/2; the Θ2, Θ3 components of its image of Θ1.
  std::mt19937_64 rng(33);
  for (int n = 0; n < 20; ++n) {
    FrameCoefficients k = random_coefficients(rng);
    k.lu = k.lv = k.m1 = k.m2 = 0.0;
    const HatPair h = hat_matrices(SurfaceCase::LorentzSpace, 0,
                                   point_invariants(SurfaceCase::LorentzSpace, k));
    const Eigen::Matrix3cd D = 0.5 * (h.along_u + kI * h.along_v);
    const DelbarResidual r =
        delbar_residual(lorentz_space_constant(k.a1, k.a2, k.a3, k.b1, k.b2, k.b3));
    CHECK(std::abs(D(1, 0) - r.theta2[0]) < 1e-14);
    CHECK(std::abs(D(2, 0) - r.theta3[0]) < 1e-14);
  }
}

TEST_CASE("linear dependence of the shape operators") {
  LinearDependence d = linear_dependence_check(lorentz_space_constant(1, 2, 3, 0, 0, 0));
  CHECK(d.all_dependent);
  d = linear_dependence_check(lorentz_space_constant(1, 0, 0, 0, 1, 0));
  CHECK_FALSE(d.all_dependent);
  CHECK(d.dependent[0] == 0);
  d = linear_dependence_check(lorentz_space_constant(1, 0, -1, -1, 0, 1));
  CHECK(d.all_dependent);
  CHECK(d.classification[0] == DependenceClass::ZeroMeanCurvature);
  d = linear_dependence_check(lorentz_space_constant(0, 0, 0, 0, 0, 0));
  CHECK(d.classification[0] == DependenceClass::TotallyGeodesic);
}

TEST_CASE("so(3,C) connection form") {
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  CHECK(max_abs(so3c_connection_form(w)) == 0.0);
  w(2, 1) = 1.0, w(1, 2) = -1.0;
  const Eigen::Matrix3cd a = so3c_connection_form(w);
  CHECK(a(0, 1) == Complex(-1.0));
  CHECK(max_abs(a + a.transpose()) == 0.0);
  w.setZero();
  w(3, 0) = w(0, 3) = 1.0;
  CHECK(so3c_connection_form(w)(0, 1) == kI);
  w(0, 3) = -1.0;
  CHECK_THROWS_AS(so3c_connection_form(w), AsymmetricConnection);
}
