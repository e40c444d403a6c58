#include "spaceform/jets.hpp"

#include <cmath>

namespace spaceform {

DataJets::DataJets(const FundamentalData& data, DiffOrder order)
    : L0_(data.model.L0), lambda_(data.lambda()) {
  data.validate();
  const Grid& g = data.grid;
  lu_ = diff_u(lambda_, g, order);
  lv_ = diff_v(lambda_, g, order);
  if (order == DiffOrder::Second) {
    luu_ = diff_uu(lambda_, g);
    lvv_ = diff_vv(lambda_, g);
  } else {
    luu_ = diff_u(lu_, g, order);
    lvv_ = diff_v(lv_, g, order);
  }
  luv_ = diff_uv(lambda_, g, order);
  for (int n = 0; n < 8; ++n) {
    raw_[n] = &data.fields[static_cast<std::size_t>(n + 1)];
    du_[n] = diff_u(*raw_[n], g, order);
    dv_[n] = diff_v(*raw_[n], g, order);
  }
}

namespace {

void fill(FrameCoefficients& c, const std::array<double, 8>& x) {
  c.a1 = x[0], c.a2 = x[1], c.a3 = x[2];
  c.b1 = x[3], c.b2 = x[4], c.b3 = x[5];
  c.m1 = x[6], c.m2 = x[7];
}

}  // namespace

FrameCoefficients DataJets::value(std::size_t k) const {
  FrameCoefficients c;
  std::array<double, 8> x{};
  for (int n = 0; n < 8; ++n) x[n] = (*raw_[n])[k];
  fill(c, x);
  c.lu = lu_[k];
  c.lv = lv_[k];
  c.curv = L0_ * std::exp(2.0 * lambda_[k]);
  return c;
}

PointJet DataJets::at(std::size_t k) const {
  PointJet p;
  p.lambda = lambda_[k];
  p.value = value(k);
  std::array<double, 8> xu{}, xv{};
  for (int n = 0; n < 8; ++n) xu[n] = du_[n][k], xv[n] = dv_[n][k];
  fill(p.du, xu);
  fill(p.dv, xv);
  p.du.lu = luu_[k];
  p.du.lv = luv_[k];
  p.dv.lu = luv_[k];
  p.dv.lv = lvv_[k];
  p.du.curv = 2.0 * p.value.curv * lu_[k];
  p.dv.curv = 2.0 * p.value.curv * lv_[k];
  return p;
}

Matrix5d lax_matrix(SurfaceCase c, const PointJet& jet) {
  const ConnectionPair at = connection_matrices(c, jet.value);
  // The unit entries of column 5 are constant, drop them from the derivatives.
  ConnectionPair dv = connection_matrices(c, jet.dv);
  ConnectionPair du = connection_matrices(c, jet.du);
  dv.S.col(4).setZero();
  du.T.col(4).setZero();
  return dv.S - du.T - (at.S * at.T - at.T * at.S);
}

}  // namespace spaceform
