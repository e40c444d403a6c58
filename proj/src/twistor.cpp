#include "spaceform/twistor.hpp"

#include <cmath>
#include <limits>

#include "spaceform/errors.hpp"
#include "spaceform/parallel.hpp"

namespace spaceform {

PointInvariants point_invariants(SurfaceCase c, const FrameCoefficients& k) {
  PointInvariants p;
  if (!is_lorentzian(c)) {
    for (int b = 0; b < 2; ++b) {
      const double s = b == 0 ? 1.0 : -1.0;
      p.W[b] = k.a2 + s * k.b1;
      p.X[b] = k.a2 + s * k.b3;
      p.Y[b] = k.b2 + s * k.a1;
      p.Z[b] = k.b2 + s * k.a3;
      p.phi[b] = k.lu - s * k.m2;
      p.psi[b] = k.lv - s * k.m1;
    }
    return p;
  }
  if (c == SurfaceCase::LorentzSpace) {
    p.W[0] = Complex(k.a2, -k.b1);
    p.X[0] = Complex(k.a2, k.b3);
    p.Y[0] = Complex(k.b2, -k.a1);
    p.Z[0] = Complex(k.b2, k.a3);
    p.phi[0] = Complex(k.lu, -k.m2);
    p.psi[0] = Complex(k.lv, k.m1);
  } else {
    p.W[0] = Complex(k.a2, k.b1);
    p.X[0] = Complex(k.a2, k.b3);
    p.Y[0] = Complex(k.b2, -k.a1);
    p.Z[0] = Complex(k.b2, -k.a3);
    p.phi[0] = Complex(k.lu, -k.m2);
    p.psi[0] = Complex(k.lv, -k.m1);
  }
  p.W[1] = std::conj(p.W[0]);
  p.X[1] = std::conj(p.X[0]);
  p.Y[1] = std::conj(p.Y[0]);
  p.Z[1] = std::conj(p.Z[0]);
  p.phi[1] = std::conj(p.phi[0]);
  p.psi[1] = std::conj(p.psi[0]);
  return p;
}

std::array<Complex, 2> point_delta(SurfaceCase c, const PointInvariants& p) {
  std::array<Complex, 2> d{};
  switch (c) {
    case SurfaceCase::Riemannian:
    case SurfaceCase::NeutralSpace:
      for (int s = 0; s < 2; ++s) d[s] = p.W[1 - s] * p.X[s] + p.Y[s] * p.Z[1 - s];
      break;
    case SurfaceCase::NeutralTime:
      for (int s = 0; s < 2; ++s) d[s] = p.W[s] * p.X[s] - p.Y[s] * p.Z[s];
      break;
    case SurfaceCase::LorentzSpace:
      for (int s = 0; s < 2; ++s) d[s] = p.W[s] * p.X[s] - p.Y[s] * p.Z[s];
      break;
    case SurfaceCase::LorentzTime:
      for (int s = 0; s < 2; ++s) d[s] = p.W[s] * p.X[s] + p.Y[s] * p.Z[s];
      break;
  }
  return d;
}

void TwistorInvariants::refresh_delta() {
  for (int b = 0; b < 2; ++b) delta[b] = ComplexField(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    PointInvariants p;
    for (int b = 0; b < 2; ++b) {
      p.W[b] = W[b][k], p.X[b] = X[b][k], p.Y[b] = Y[b][k], p.Z[b] = Z[b][k];
    }
    const auto d = point_delta(surface_case, p);
    delta[0][k] = d[0];
    delta[1][k] = d[1];
  }
}

TwistorInvariants twistor_invariants(const FundamentalData& data) {
  const DataJets jets(data);
  TwistorInvariants t;
  t.surface_case = data.surface_case();
  t.grid = data.grid;
  t.lambda = data.lambda();
  for (auto* f : {&t.W, &t.X, &t.Y, &t.Z, &t.phi, &t.psi, &t.delta})
    for (auto& b : *f) b = ComplexField(data.grid);
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const PointInvariants p = point_invariants(t.surface_case, jets.value(k));
    const auto d = point_delta(t.surface_case, p);
    for (int b = 0; b < 2; ++b) {
      t.W[b][k] = p.W[b], t.X[b][k] = p.X[b], t.Y[b][k] = p.Y[b], t.Z[b][k] = p.Z[b];
      t.phi[b][k] = p.phi[b], t.psi[b][k] = p.psi[b];
      t.delta[b][k] = d[b];
    }
  }
  return t;
}

double degeneracy_threshold(std::optional<double> lambda, double scale) {
  if (!lambda) return scale;
  return scale * std::max(1.0, std::exp(2.0 * *lambda));
}

std::array<Bivector, 3> hat_basis(SurfaceCase c, int branch) {
  const ThetaBasis t = theta_basis(c);
  const auto& same = branch == 0 ? t.plus : t.minus;
  const auto& other = branch == 0 ? t.minus : t.plus;
  switch (c) {
    case SurfaceCase::Riemannian:
    case SurfaceCase::LorentzSpace:
      return same;
    case SurfaceCase::NeutralSpace:
    case SurfaceCase::NeutralTime:
      return {other[0], same[1], same[2]};
    case SurfaceCase::LorentzTime:
      return other;
  }
  return same;
}

HatPair hat_matrices(SurfaceCase c, int branch, const PointInvariants& p) {
  const int s = branch == 0 ? 0 : 1, o = 1 - s;
  const double sg = branch == 0 ? 1.0 : -1.0;
  HatPair h;
  Eigen::Matrix3cd& M1 = h.along_u;
  Eigen::Matrix3cd& M2 = h.along_v;
  const Complex zero = 0.0;
  switch (c) {
    case SurfaceCase::Riemannian:
      M1 << zero, -p.W[s], -p.Y[o],
            p.W[s], zero, sg * p.psi[s],
            p.Y[o], -sg * p.psi[s], zero;
      M2 << zero, -sg * p.Z[s], sg * p.X[o],
            sg * p.Z[s], zero, -sg * p.phi[o],
            -sg * p.X[o], sg * p.phi[o], zero;
      break;
    case SurfaceCase::NeutralSpace:
      M1 << zero, p.W[s], p.Y[o],
            p.W[s], zero, sg * p.psi[s],
            p.Y[o], -sg * p.psi[s], zero;
      M2 << zero, sg * p.Z[s], -sg * p.X[o],
            sg * p.Z[s], zero, -sg * p.phi[o],
            -sg * p.X[o], sg * p.phi[o], zero;
      break;
    case SurfaceCase::NeutralTime:
      M1 << zero, p.W[s], -sg * p.psi[s],
            p.W[s], zero, -p.Y[s],
            -sg * p.psi[s], p.Y[s], zero;
      M2 << zero, sg * p.Z[s], -sg * p.phi[s],
            sg * p.Z[s], zero, -sg * p.X[s],
            -sg * p.phi[s], sg * p.X[s], zero;
      break;
    case SurfaceCase::LorentzSpace: {
      // branch 1 is the conjugate system: conjugate the unit too
      const Complex i = branch == 0 ? kI : -kI;
      M1 << zero, -p.W[s], i * p.Y[s],
            p.W[s], zero, p.psi[s],
            -i * p.Y[s], -p.psi[s], zero;
      M2 << zero, i * p.Z[s], p.X[s],
            -i * p.Z[s], zero, -p.phi[s],
            -p.X[s], p.phi[s], zero;
      break;
    }
    case SurfaceCase::LorentzTime: {
      const Complex i = branch == 0 ? kI : -kI;
      M1 << zero, -i * p.W[s], -i * p.Y[s],
            i * p.W[s], zero, -i * p.psi[s],
            i * p.Y[s], i * p.psi[s], zero;
      M2 << zero, p.Z[s], -p.X[s],
            -p.Z[s], zero, -i * p.phi[s],
            p.X[s], i * p.phi[s], zero;
      break;
    }
  }
  return h;
}

Eigen::Matrix3cd curvature_rhs(SurfaceCase c, int branch, double curv) {
  const double sg = branch == 0 ? 1.0 : -1.0;
  Eigen::Matrix3cd r = Eigen::Matrix3cd::Zero();
  switch (c) {
    case SurfaceCase::Riemannian:
    case SurfaceCase::NeutralSpace:
      r(1, 2) = sg * curv;
      r(2, 1) = -sg * curv;
      break;
    case SurfaceCase::NeutralTime:
      r(0, 2) = sg * curv;
      r(2, 0) = sg * curv;
      break;
    case SurfaceCase::LorentzSpace:
      r(1, 2) = curv;
      r(2, 1) = -curv;
      break;
    case SurfaceCase::LorentzTime: {
      const Complex i = branch == 0 ? kI : -kI;
      r(1, 2) = i * curv;
      r(2, 1) = -i * curv;
      break;
    }
  }
  return r;
}

Eigen::Matrix3cd curvature_residual_point(SurfaceCase c, int branch, const PointJet& jet) {
  const HatPair m = hat_matrices(c, branch, point_invariants(c, jet.value));
  const HatPair mu = hat_matrices(c, branch, point_invariants(c, jet.du));
  const HatPair mv = hat_matrices(c, branch, point_invariants(c, jet.dv));
  return mu.along_v - mv.along_u + m.along_u * m.along_v - m.along_v * m.along_u -
         curvature_rhs(c, branch, jet.value.curv);
}

HatConnection hat_connection_matrices(const FundamentalData& data) {
  const DataJets jets(data);
  HatConnection h;
  h.grid = data.grid;
  h.points.resize(jets.size());
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const PointInvariants p = point_invariants(data.surface_case(), jets.value(k));
    for (int b = 0; b < 2; ++b) h.points[k][b] = hat_matrices(data.surface_case(), b, p);
  }
  return h;
}

double CurvatureResidual::max_abs() const {
  return std::max(max_entry[0].max_abs(), max_entry[1].max_abs());
}

CurvatureResidual curvature_residual(const FundamentalData& data, int threads) {
  const DataJets jets(data);
  CurvatureResidual r;
  r.grid = data.grid;
  r.residual.resize(jets.size());
  for (auto& f : r.max_entry) f = Field(data.grid);
  parallel_for(jets.size(), threads, [&](std::size_t k) {
    const PointJet jet = jets.at(k);
    for (int b = 0; b < 2; ++b) {
      r.residual[k][b] = curvature_residual_point(data.surface_case(), b, jet);
      r.max_entry[b][k] = r.residual[k][b].cwiseAbs().maxCoeff();
    }
  });
  return r;
}

DegeneracyReport degeneracy_report(const FundamentalData& data, double threshold_scale) {
  const DataJets jets(data);
  const SurfaceCase c = data.surface_case();
  DegeneracyReport r;
  for (auto& d : r.delta) d = ComplexField(data.grid);
  r.threshold = Field(data.grid);
  r.curvature_defect = Field(data.grid);
  r.normal_curvature = Field(data.grid);
  r.branch_nondegenerate = {true, true};
  r.branch_degenerate = {true, true};
  r.min_abs_delta = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const PointJet jet = jets.at(k);
    const auto d = point_delta(c, point_invariants(c, jet.value));
    const double thr = degeneracy_threshold(jet.lambda, threshold_scale);
    r.threshold[k] = thr;
    for (int b = 0; b < 2; ++b) {
      r.delta[b][k] = d[b];
      const double a = std::abs(d[b]);
      r.min_abs_delta = std::min(r.min_abs_delta, a);
      if (a > thr)
        r.branch_degenerate[b] = false;
      else
        r.branch_nondegenerate[b] = false;
    }
    const double lap = is_timelike(c) ? jet.du.lu - jet.dv.lv : jet.du.lu + jet.dv.lv;
    const double K = -std::exp(-2.0 * jet.lambda) * lap;
    r.curvature_defect[k] = K - data.model.L0;
    r.normal_curvature[k] = jet.dv.m1 - jet.du.m2;
  }
  r.nondegenerate = r.branch_nondegenerate[0] && r.branch_nondegenerate[1];
  r.degenerate = r.branch_degenerate[0] && r.branch_degenerate[1];
  r.max_curvature_defect = r.curvature_defect.max_abs();
  r.max_normal_curvature = r.normal_curvature.max_abs();
  return r;
}

ABFunctions ab_functions(const TwistorInvariants& inv, DiffOrder order,
                         double threshold_scale) {
  const Grid& g = inv.grid;
  g.validate();
  const SurfaceCase c = inv.surface_case;
  std::array<ComplexField, 2> Wu, Wv, Xu, Xv, Yu, Yv, Zu, Zv;
  for (int b = 0; b < 2; ++b) {
    Wu[b] = diff_u(inv.W[b], g, order), Wv[b] = diff_v(inv.W[b], g, order);
    Xu[b] = diff_u(inv.X[b], g, order), Xv[b] = diff_v(inv.X[b], g, order);
    Yu[b] = diff_u(inv.Y[b], g, order), Yv[b] = diff_v(inv.Y[b], g, order);
    Zu[b] = diff_u(inv.Z[b], g, order), Zv[b] = diff_v(inv.Z[b], g, order);
  }
  ABFunctions ab;
  for (int b = 0; b < 2; ++b) ab.A[b] = ComplexField(g), ab.B[b] = ComplexField(g);
  const int nb = is_lorentzian(c) ? 1 : 2;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::optional<double> lam =
        inv.lambda ? std::optional<double>((*inv.lambda)[k]) : std::nullopt;
    const double thr = degeneracy_threshold(lam, threshold_scale);
    for (int s = 0; s < nb; ++s) {
      const Complex d = inv.delta[s][k];
      if (!(std::abs(d) > thr))
        throw DegenerateDelta("|Δ| = " + std::to_string(std::abs(d)) + " below threshold",
                              g.location(k));
      const int o = 1 - s;
      const double sg = s == 0 ? 1.0 : -1.0;
      switch (c) {
        case SurfaceCase::Riemannian:
        case SurfaceCase::NeutralSpace: {
          const Complex c0 = Yv[s][k] - sg * Xu[s][k];
          const Complex c1 = Wv[o][k] + sg * Zu[o][k];
          const Complex f = -sg / d;
          ab.A[s][k] = f * (-inv.X[s][k] * c0 + inv.Z[o][k] * c1);
          ab.B[o][k] = f * (sg * inv.Y[s][k] * c0 + sg * inv.W[o][k] * c1);
          break;
        }
        case SurfaceCase::NeutralTime: {
          const Complex c0 = Yv[s][k] - sg * Xu[s][k];
          const Complex c1 = Wv[s][k] - sg * Zu[s][k];
          const Complex f = -sg / d;
          ab.A[s][k] = f * (-inv.X[s][k] * c0 + inv.Z[s][k] * c1);
          ab.B[s][k] = f * (-sg * inv.Y[s][k] * c0 + sg * inv.W[s][k] * c1);
          break;
        }
        case SurfaceCase::LorentzSpace: {
          const Complex c0 = Yv[0][k] + kI * Xu[0][k];
          const Complex c1 = Wv[0][k] + kI * Zu[0][k];
          ab.A[0][k] = (kI * inv.X[0][k] * c0 - kI * inv.Z[0][k] * c1) / d;
          ab.B[0][k] = (inv.Y[0][k] * c0 - inv.W[0][k] * c1) / d;
          break;
        }
        case SurfaceCase::LorentzTime: {
          const Complex c0 = Yv[0][k] + kI * Xu[0][k];
          const Complex c1 = Wv[0][k] - kI * Zu[0][k];
          ab.A[0][k] = (kI * inv.X[0][k] * c0 - kI * inv.Z[0][k] * c1) / d;
          ab.B[0][k] = (-inv.Y[0][k] * c0 - inv.W[0][k] * c1) / d;
          break;
        }
      }
    }
    if (nb == 1) {
      ab.A[1][k] = std::conj(ab.A[0][k]);
      ab.B[1][k] = std::conj(ab.B[0][k]);
    }
  }
  return ab;
}

DelbarResidual delbar_residual(const FundamentalData& data) {
  if (data.surface_case() != SurfaceCase::LorentzSpace)
    throw WrongCase("delbar_residual requires LOR_SPACE data");
  data.validate();
  DelbarResidual r;
  r.theta2 = ComplexField(data.grid);
  r.theta3 = ComplexField(data.grid);
  for (std::size_t k = 0; k < data.grid.size(); ++k) {
    FrameCoefficients c;
    c.a1 = data.alpha(1)[k], c.a2 = data.alpha(2)[k], c.a3 = data.alpha(3)[k];
    c.b1 = data.beta(1)[k], c.b2 = data.beta(2)[k], c.b3 = data.beta(3)[k];
    const PointInvariants p = point_invariants(SurfaceCase::LorentzSpace, c);
    r.theta2[k] = 0.5 * (p.W[0] + p.Z[0]);
    r.theta3[k] = -0.5 * kI * (p.X[0] + p.Y[0]);
  }
  r.max_abs = std::max(r.theta2.max_abs(), r.theta3.max_abs());
  return r;
}

LinearDependence linear_dependence_check(const FundamentalData& data, double tol) {
  data.validate();
  LinearDependence r;
  r.dependent = GridField<std::uint8_t>(data.grid, 0);
  r.classification = GridField<DependenceClass>(data.grid, DependenceClass::Independent);
  r.all_dependent = true;
  const bool lorentz_space = data.surface_case() == SurfaceCase::LorentzSpace;
  for (std::size_t k = 0; k < data.grid.size(); ++k) {
    const double a1 = data.alpha(1)[k], a2 = data.alpha(2)[k], a3 = data.alpha(3)[k];
    const double b1 = data.beta(1)[k], b2 = data.beta(2)[k], b3 = data.beta(3)[k];
    const double el = std::exp(data.lambda()[k]);
    // α, β scale like e^λ, the minors like e^{2λ}
    const double tol1 = tol * std::max(1.0, el), tol2 = tol * std::max(1.0, el * el);
    const double minor = std::max({std::abs(a1 * b2 - a2 * b1), std::abs(a1 * b3 - a3 * b1),
                                   std::abs(a2 * b3 - a3 * b2)});
    if (minor > tol2) {
      r.all_dependent = false;
      continue;
    }
    r.dependent[k] = 1;
    DependenceClass cls = DependenceClass::Dependent;
    const bool delbar = lorentz_space && std::abs(a1 - b3) <= tol1 && std::abs(a2 + b2) <= tol1 &&
                        std::abs(a3 - b1) <= tol1;
    if (delbar) {
      const bool zero_h = std::abs(a1 + a3) <= tol1;
      const bool p_zero = std::abs(a1 - a3) <= tol1 && std::abs(a2) <= tol1;
      if (zero_h && p_zero)
        cls = DependenceClass::TotallyGeodesic;
      else if (zero_h)
        cls = DependenceClass::ZeroMeanCurvature;
      else if (p_zero)
        cls = DependenceClass::PVanishes;
    }
    r.classification[k] = cls;
  }
  return r;
}

Eigen::Matrix3cd so3c_connection_form(const Eigen::Matrix4d& w, double tol) {
  auto bad = [&](double x) { return std::abs(x) > tol; };
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      if (bad(w(k, l) + w(l, k)))
        throw AsymmetricConnection("ω^k_l = −ω^l_k fails for k,l = " + std::to_string(k + 1) +
                                   "," + std::to_string(l + 1));
  for (int k = 0; k < 3; ++k)
    if (bad(w(k, 3) - w(3, k)))
      throw AsymmetricConnection("ω^k_4 = ω^4_k fails for k = " + std::to_string(k + 1));
  if (bad(w(3, 3))) throw AsymmetricConnection("ω^4_4 must vanish");
  // w(k-1, l-1) = ω^k_l
  auto om = [&](int k, int l) { return w(k - 1, l - 1); };
  Eigen::Matrix3cd h;
  h << 0.0, -om(3, 2) + kI * om(4, 1), om(3, 1) + kI * om(4, 2),
      om(3, 2) - kI * om(4, 1), 0.0, -om(2, 1) + kI * om(4, 3),
      -om(3, 1) - kI * om(4, 2), om(2, 1) - kI * om(4, 3), 0.0;
  return h;
}

}  // namespace spaceform
