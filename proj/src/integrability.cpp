#include "spaceform/integrability.hpp"

#include <cmath>

#include "spaceform/parallel.hpp"
#include "spaceform/twistor.hpp"

namespace spaceform {

GcrPoint gcr_point(SurfaceCase c, const PointJet& jet) {
  const FrameCoefficients& k = jet.value;
  const FrameCoefficients& du = jet.du;
  const FrameCoefficients& dv = jet.dv;
  const double lu = k.lu, lv = k.lv, luu = du.lu, lvv = dv.lv, C = k.curv;
  const double a1 = k.a1, a2 = k.a2, a3 = k.a3, b1 = k.b1, b2 = k.b2, b3 = k.b3;
  const double m1 = k.m1, m2 = k.m2;
  // Left-hand sides shared by all cases.
  const double c1 = dv.a1 - du.a2, c2 = dv.a2 - du.a3;
  const double c3 = dv.b1 - du.b2, c4 = dv.b2 - du.b3;
  const double ric = dv.m1 - du.m2;
  GcrPoint r;
  switch (c) {
    case SurfaceCase::Riemannian:
      r.gauss = luu + lvv + C - (-a1 * a3 - b1 * b3 + a2 * a2 + b2 * b2);
      r.codazzi = {c1 - (a2 * lu + a3 * lv - b2 * m1 + b1 * m2),
                   c2 - (-a1 * lu - a2 * lv - b3 * m1 + b2 * m2),
                   c3 - (b2 * lu + b3 * lv + a2 * m1 - a1 * m2),
                   c4 - (-b1 * lu - b2 * lv + a3 * m1 - a2 * m2)};
      r.ricci = ric - (a1 * b2 - a2 * b1 + a2 * b3 - a3 * b2);
      break;
    case SurfaceCase::NeutralSpace:
      r.gauss = luu + lvv + C - (a1 * a3 + b1 * b3 - a2 * a2 - b2 * b2);
      r.codazzi = {c1 - (a2 * lu + a3 * lv - b2 * m1 + b1 * m2),
                   c2 - (-a1 * lu - a2 * lv - b3 * m1 + b2 * m2),
                   c3 - (b2 * lu + b3 * lv + a2 * m1 - a1 * m2),
                   c4 - (-b1 * lu - b2 * lv + a3 * m1 - a2 * m2)};
      r.ricci = ric - (-a1 * b2 + a2 * b1 - a2 * b3 + a3 * b2);
      break;
    case SurfaceCase::NeutralTime:
      r.gauss = luu - lvv + C - (a1 * a3 - b1 * b3 - a2 * a2 + b2 * b2);
      r.codazzi = {c1 - (a2 * lu - a3 * lv + b2 * m1 - b1 * m2),
                   c2 - (a1 * lu - a2 * lv + b3 * m1 - b2 * m2),
                   c3 - (b2 * lu - b3 * lv + a2 * m1 - a1 * m2),
                   c4 - (b1 * lu - b2 * lv + a3 * m1 - a2 * m2)};
      r.ricci = ric - (a1 * b2 - a2 * b1 - a2 * b3 + a3 * b2);
      break;
    case SurfaceCase::LorentzSpace:
      r.gauss = luu + lvv + C - (-a1 * a3 + b1 * b3 + a2 * a2 - b2 * b2);
      r.codazzi = {c1 - (a2 * lu + a3 * lv + b2 * m1 - b1 * m2),
                   c2 - (-a1 * lu - a2 * lv + b3 * m1 - b2 * m2),
                   c3 - (b2 * lu + b3 * lv + a2 * m1 - a1 * m2),
                   c4 - (-b1 * lu - b2 * lv + a3 * m1 - a2 * m2)};
      r.ricci = ric - (a1 * b2 - a2 * b1 + a2 * b3 - a3 * b2);
      break;
    case SurfaceCase::LorentzTime:
      r.gauss = luu - lvv + C - (a1 * a3 + b1 * b3 - a2 * a2 - b2 * b2);
      r.codazzi = {c1 - (a2 * lu - a3 * lv - b2 * m1 + b1 * m2),
                   c2 - (a1 * lu - a2 * lv - b3 * m1 + b2 * m2),
                   c3 - (b2 * lu - b3 * lv + a2 * m1 - a1 * m2),
                   c4 - (b1 * lu - b2 * lv + a3 * m1 - a2 * m2)};
      r.ricci = ric - (a1 * b2 - a2 * b1 - a2 * b3 + a3 * b2);
      break;
  }
  return r;
}

double GcrResiduals::max_abs() const { return pointwise_max().max_abs(); }

Field GcrResiduals::pointwise_max() const {
  Field m(grid);
  for (std::size_t k = 0; k < m.size(); ++k) {
    double x = std::abs(gauss[k]);
    for (const auto& c : codazzi) x = std::max(x, std::abs(c[k]));
    m[k] = std::max(x, std::abs(ricci[k]));
  }
  return m;
}

GcrResiduals gcr_residuals(const FundamentalData& data, int threads) {
  const DataJets jets(data);
  GcrResiduals r;
  r.grid = data.grid;
  r.gauss = Field(data.grid);
  r.ricci = Field(data.grid);
  for (auto& c : r.codazzi) c = Field(data.grid);
  parallel_for(jets.size(), threads, [&](std::size_t k) {
    const GcrPoint p = gcr_point(data.surface_case(), jets.at(k));
    r.gauss[k] = p.gauss;
    for (int m = 0; m < 4; ++m) r.codazzi[m][k] = p.codazzi[m];
    r.ricci[k] = p.ricci;
  });
  return r;
}

Field lax_residual(const FundamentalData& data, int threads) {
  const DataJets jets(data);
  Field out(data.grid);
  parallel_for(jets.size(), threads, [&](std::size_t k) {
    out[k] = lax_matrix(data.surface_case(), jets.at(k)).cwiseAbs().maxCoeff();
  });
  return out;
}

int wxyz_branches(SurfaceCase c) { return is_lorentzian(c) ? 1 : 2; }

WxyzForms wxyz_forms(SurfaceCase c, int branch, const PointJet& jet) {
  const PointInvariants p = point_invariants(c, jet.value);
  const PointInvariants pu = point_invariants(c, jet.du);
  const PointInvariants pv = point_invariants(c, jet.dv);
  const double C = jet.value.curv;
  const int s = branch == 0 ? 0 : 1;  // index of s
  const int o = 1 - s;                // index of −s
  const double sg = branch == 0 ? 1.0 : -1.0;
  WxyzForms f;
  switch (c) {
    case SurfaceCase::Riemannian:
    case SurfaceCase::NeutralSpace: {
      const Complex prod = p.W[o] * p.X[s] + p.Y[s] * p.Z[o];
      const Complex der = pu.phi[s] + pv.psi[o];
      f.gauss_ricci = c == SurfaceCase::Riemannian ? prod - C - der : prod + C + der;
      f.codazzi0 = pv.Y[s] - sg * pu.X[s] - (sg * p.W[o] * p.phi[s] - p.Z[o] * p.psi[o]);
      f.codazzi1 = pv.W[o] + sg * pu.Z[o] - (-sg * p.Y[s] * p.phi[s] - p.X[s] * p.psi[o]);
      break;
    }
    case SurfaceCase::NeutralTime:
      f.gauss_ricci = p.W[s] * p.X[s] - p.Y[s] * p.Z[s] + C + pu.phi[s] - pv.psi[s];
      f.codazzi0 = pv.Y[s] - sg * pu.X[s] - (sg * p.W[s] * p.phi[s] - p.Z[s] * p.psi[s]);
      f.codazzi1 = pv.W[s] - sg * pu.Z[s] - (sg * p.Y[s] * p.phi[s] - p.X[s] * p.psi[s]);
      break;
    case SurfaceCase::LorentzSpace:
      f.gauss_ricci = p.W[s] * p.X[s] - p.Y[s] * p.Z[s] - C - pu.phi[s] - pv.psi[s];
      f.codazzi0 = pv.Y[s] + kI * pu.X[s] - (-kI * p.W[s] * p.phi[s] - p.Z[s] * p.psi[s]);
      f.codazzi1 = pv.W[s] + kI * pu.Z[s] - (-kI * p.Y[s] * p.phi[s] - p.X[s] * p.psi[s]);
      break;
    case SurfaceCase::LorentzTime:
      f.gauss_ricci = p.W[s] * p.X[s] + p.Y[s] * p.Z[s] + C + pu.phi[s] - pv.psi[s];
      f.codazzi0 = pv.Y[s] + kI * pu.X[s] - (-kI * p.W[s] * p.phi[s] - p.Z[s] * p.psi[s]);
      f.codazzi1 = pv.W[s] - kI * pu.Z[s] - (kI * p.Y[s] * p.phi[s] - p.X[s] * p.psi[s]);
      break;
  }
  return f;
}

EquivalenceCoefficients equivalence_coefficients(SurfaceCase c, int branch) {
  const double s = branch == 0 ? 1.0 : -1.0;
  EquivalenceCoefficients e;
  switch (c) {
    case SurfaceCase::Riemannian:
      e.gauss = -1.0, e.ricci = -s;
      e.codazzi0 = {s, 0.0, 0.0, 1.0};
      e.codazzi1 = {0.0, 1.0, -s, 0.0};
      break;
    case SurfaceCase::NeutralSpace:
      e.gauss = 1.0, e.ricci = s;
      e.codazzi0 = {s, 0.0, 0.0, 1.0};
      e.codazzi1 = {0.0, 1.0, -s, 0.0};
      break;
    case SurfaceCase::NeutralTime:
      e.gauss = 1.0, e.ricci = s;
      e.codazzi0 = {s, 0.0, 0.0, 1.0};
      e.codazzi1 = {0.0, 1.0, s, 0.0};
      break;
    case SurfaceCase::LorentzSpace:
      e.gauss = -1.0, e.ricci = -kI;
      e.codazzi0 = {-kI, 0.0, 0.0, 1.0};
      e.codazzi1 = {0.0, 1.0, -kI, 0.0};
      break;
    case SurfaceCase::LorentzTime:
      e.gauss = 1.0, e.ricci = kI;
      e.codazzi0 = {-kI, 0.0, 0.0, 1.0};
      e.codazzi1 = {0.0, 1.0, kI, 0.0};
      break;
  }
  return e;
}

EquivalenceReport equivalence_check(const FundamentalData& data, int threads) {
  const DataJets jets(data);
  const SurfaceCase c = data.surface_case();
  const int nb = wxyz_branches(c);
  EquivalenceReport r;
  r.grid = data.grid;
  for (int b = 0; b < 2; ++b) {
    r.gauss_ricci[b] = ComplexField(data.grid);
    r.codazzi0[b] = ComplexField(data.grid);
    r.codazzi1[b] = ComplexField(data.grid);
  }
  r.combination = Field(data.grid);
  std::array<EquivalenceCoefficients, 2> coef{equivalence_coefficients(c, 0),
                                              equivalence_coefficients(c, 1)};
  parallel_for(jets.size(), threads, [&](std::size_t k) {
    const PointJet jet = jets.at(k);
    const GcrPoint g = gcr_point(c, jet);
    double worst = 0.0;
    for (int b = 0; b < nb; ++b) {
      const WxyzForms f = wxyz_forms(c, b, jet);
      const auto& e = coef[b];
      Complex cz0 = 0.0, cz1 = 0.0;
      for (int m = 0; m < 4; ++m) cz0 += e.codazzi0[m] * g.codazzi[m], cz1 += e.codazzi1[m] * g.codazzi[m];
      worst = std::max({worst, std::abs(f.gauss_ricci - (e.gauss * g.gauss + e.ricci * g.ricci)),
                        std::abs(f.codazzi0 - cz0), std::abs(f.codazzi1 - cz1)});
      r.gauss_ricci[b][k] = f.gauss_ricci;
      r.codazzi0[b][k] = f.codazzi0;
      r.codazzi1[b][k] = f.codazzi1;
    }
    r.combination[k] = worst;
  });
  r.max_combination = r.combination.max_abs();
  return r;
}

}  // namespace spaceform
