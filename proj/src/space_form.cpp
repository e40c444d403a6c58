#include "spaceform/space_form.hpp"

#include <cmath>

#include "spaceform/errors.hpp"
#include "spaceform/finite_diff.hpp"

namespace spaceform {

SpaceFormModel ambient_model(SurfaceCase c, double L0) {
  SpaceFormModel m;
  m.surface_case = c;
  m.L0 = L0;
  // Negative entries of the tangent-normal block, plus one more for F when L0 < 0.
  std::size_t negatives = 0;
  switch (c) {
    case SurfaceCase::Riemannian: negatives = 0; break;
    case SurfaceCase::NeutralSpace:
    case SurfaceCase::NeutralTime: negatives = 2; break;
    case SurfaceCase::LorentzSpace:
    case SurfaceCase::LorentzTime: negatives = 1; break;
  }
  if (L0 == 0.0) {
    m.ambient = AmbientSignature::pseudo_euclidean(4, negatives);
  } else {
    m.ambient = AmbientSignature::pseudo_euclidean(5, negatives + (L0 < 0.0 ? 1 : 0));
    m.quadric_const = 1.0 / L0;
  }
  return m;
}

FundamentalData FundamentalData::zeros(const SpaceFormModel& model, const Grid& grid) {
  grid.validate();
  FundamentalData d;
  d.model = model;
  d.grid = grid;
  for (auto& f : d.fields) f = Field(grid, 0.0);
  return d;
}

void FundamentalData::validate() const {
  grid.validate();
  for (std::size_t n = 0; n < fields.size(); ++n) {
    const Field& f = fields[n];
    if (!f.matches(grid))
      throw DimensionMismatch("field '" + std::string(kFieldNames[n]) +
                              "' does not match the grid shape");
    for (std::size_t k = 0; k < f.size(); ++k)
      if (!std::isfinite(f[k]))
        throw NonFiniteValue("field '" + std::string(kFieldNames[n]) + "' is not finite",
                             grid.location(k));
  }
}

FrameCoefficients& FrameCoefficients::operator+=(const FrameCoefficients& o) {
  lu += o.lu, lv += o.lv;
  a1 += o.a1, a2 += o.a2, a3 += o.a3;
  b1 += o.b1, b2 += o.b2, b3 += o.b3;
  m1 += o.m1, m2 += o.m2;
  curv += o.curv;
  return *this;
}

FrameCoefficients& FrameCoefficients::operator*=(double s) {
  lu *= s, lv *= s;
  a1 *= s, a2 *= s, a3 *= s;
  b1 *= s, b2 *= s, b3 *= s;
  m1 *= s, m2 *= s;
  curv *= s;
  return *this;
}

ConnectionPair connection_matrices(SurfaceCase c, const FrameCoefficients& k) {
  const double lu = k.lu, lv = k.lv, C = k.curv;
  const double a1 = k.a1, a2 = k.a2, a3 = k.a3, b1 = k.b1, b2 = k.b2, b3 = k.b3;
  const double m1 = k.m1, m2 = k.m2;
  ConnectionPair p;
  Matrix5d& S = p.S;
  Matrix5d& T = p.T;
  switch (c) {
    case SurfaceCase::Riemannian:
      S << lu, lv, -a1, -b1, 1,
          -lv, lu, -a2, -b2, 0,
           a1, a2,  lu, -m1, 0,
           b1, b2,  m1,  lu, 0,
           -C,  0,   0,   0, 0;
      T << lv, -lu, -a2, -b2, 0,
           lu,  lv, -a3, -b3, 1,
           a2,  a3,  lv, -m2, 0,
           b2,  b3,  m2,  lv, 0,
            0,  -C,   0,   0, 0;
      break;
    case SurfaceCase::NeutralSpace:
      S << lu, lv, a1, b1, 1,
          -lv, lu, a2, b2, 0,
           a1, a2, lu, -m1, 0,
           b1, b2, m1, lu, 0,
           -C,  0,  0,  0, 0;
      T << lv, -lu, a2, b2, 0,
           lu,  lv, a3, b3, 1,
           a2,  a3, lv, -m2, 0,
           b2,  b3, m2, lv, 0,
            0,  -C,  0,  0, 0;
      break;
    case SurfaceCase::NeutralTime:
      S << lu, lv, -a1,  b1, 1,
           lv, lu,  a2, -b2, 0,
           a1, a2,  lu,  m1, 0,
           b1, b2,  m1,  lu, 0,
           -C,  0,   0,   0, 0;
      T << lv, lu, -a2,  b2, 0,
           lu, lv,  a3, -b3, 1,
           a2, a3,  lv,  m2, 0,
           b2, b3,  m2,  lv, 0,
            0,  C,   0,   0, 0;
      break;
    case SurfaceCase::LorentzSpace:
      S << lu, lv, -a1, b1, 1,
          -lv, lu, -a2, b2, 0,
           a1, a2,  lu, m1, 0,
           b1, b2,  m1, lu, 0,
           -C,  0,   0,  0, 0;
      T << lv, -lu, -a2, b2, 0,
           lu,  lv, -a3, b3, 1,
           a2,  a3,  lv, m2, 0,
           b2,  b3,  m2, lv, 0,
            0,  -C,   0,  0, 0;
      break;
    case SurfaceCase::LorentzTime:
      S << lu, lv, -a1, -b1, 1,
           lv, lu,  a2,  b2, 0,
           a1, a2,  lu, -m1, 0,
           b1, b2,  m1,  lu, 0,
           -C,  0,   0,   0, 0;
      T << lv, lu, -a2, -b2, 0,
           lu, lv,  a3,  b3, 1,
           a2, a3,  lv, -m2, 0,
           b2, b3,  m2,  lv, 0,
            0,  C,   0,   0, 0;
      break;
  }
  return p;
}

ConnectionPair build_connection_matrices(const FundamentalData& data, std::size_t i,
                                         std::size_t j) {
  const Grid& g = data.grid;
  if (i >= g.nu || j >= g.nv)
    throw IndexOutOfRange("build_connection_matrices: index (" + std::to_string(i) + "," +
                          std::to_string(j) + ") outside grid");
  FrameCoefficients k;
  const Field& lam = data.lambda();
  k.lu = diff_u_at(lam, g, i, j);
  k.lv = diff_v_at(lam, g, i, j);
  k.a1 = data.alpha(1)(i, j), k.a2 = data.alpha(2)(i, j), k.a3 = data.alpha(3)(i, j);
  k.b1 = data.beta(1)(i, j), k.b2 = data.beta(2)(i, j), k.b3 = data.beta(3)(i, j);
  k.m1 = data.mu(1)(i, j), k.m2 = data.mu(2)(i, j);
  k.curv = data.model.L0 * std::exp(2.0 * lam(i, j));
  return connection_matrices(data.surface_case(), k);
}

std::array<int, 4> tangent_normal_signs(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::Riemannian: return {1, 1, 1, 1};
    case SurfaceCase::NeutralSpace: return {1, 1, -1, -1};
    case SurfaceCase::NeutralTime: return {1, -1, 1, -1};
    case SurfaceCase::LorentzSpace: return {1, 1, 1, -1};
    case SurfaceCase::LorentzTime: return {1, -1, 1, 1};
  }
  return {1, 1, 1, 1};
}

std::array<int, 4> frame_order(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::NeutralTime: return {0, 2, 1, 3};  // (T1,N1,T2,N2)
    case SurfaceCase::LorentzTime: return {2, 3, 0, 1};  // (N1,N2,T1,T2)
    default: return {0, 1, 2, 3};
  }
}

double FrameResiduals::max_abs() const {
  double m = 0.0;
  for (double r : pairwise) m = std::max(m, std::abs(r));
  if (quadric) m = std::max(m, std::abs(*quadric));
  if (position)
    for (double r : *position) m = std::max(m, std::abs(r));
  return m;
}

FrameResiduals validate_frame(const Eigen::MatrixXd& frame, double lambda,
                              const SpaceFormModel& model) {
  const auto& sig = model.ambient;
  const auto n = static_cast<Eigen::Index>(sig.dim());
  if (frame.rows() != n || frame.cols() < 4 || frame.cols() > 5)
    throw DimensionMismatch("validate_frame: frame must be " + std::to_string(n) +
                            " x 5 (columns T1,T2,N1,N2,F)");
  const auto signs = tangent_normal_signs(model.surface_case);
  const double e2l = std::exp(2.0 * lambda);
  FrameResiduals r;
  std::size_t p = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      const double want = a == b ? signs[a] * e2l : 0.0;
      r.pairwise[p++] = want - pseudo_inner(frame.col(a), frame.col(b), sig);
    }
  if (!model.flat()) {
    if (frame.cols() != 5) throw DimensionMismatch("validate_frame: F column required");
    const Eigen::VectorXd F = frame.col(4);
    r.quadric = *model.quadric_const - pseudo_inner(F, F, sig);
    std::array<double, 4> pos{};
    for (int a = 0; a < 4; ++a) pos[a] = -pseudo_inner(frame.col(a), F, sig);
    r.position = pos;
  }
  return r;
}

Eigen::MatrixXd ordered_unit_frame(const Eigen::MatrixXd& frame, double lambda, SurfaceCase c) {
  const auto order = frame_order(c);
  Eigen::MatrixXd e(frame.rows(), 4);
  const double s = std::exp(-lambda);
  for (int a = 0; a < 4; ++a) e.col(order[a]) = s * frame.col(a);
  return e;
}

Eigen::MatrixXd canonical_initial_frame(const SpaceFormModel& model, double lambda0) {
  const auto& sig = model.ambient;
  const std::size_t n = sig.dim();
  const auto signs = tangent_normal_signs(model.surface_case);
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 5);
  std::vector<bool> used(n, false);
  auto take = [&](int sign) -> std::size_t {
    for (std::size_t k = 0; k < n; ++k)
      if (!used[k] && sig[k] == sign) {
        used[k] = true;
        return k;
      }
    throw InvalidInitialFrame("ambient " + sig.name() + " has no free direction of sign " +
                              std::to_string(sign));
  };
  const double el = std::exp(lambda0);
  for (int a = 0; a < 4; ++a) frame(static_cast<Eigen::Index>(take(signs[a])), a) = el;
  if (!model.flat()) {
    const std::size_t k = take(model.L0 > 0.0 ? 1 : -1);
    frame(static_cast<Eigen::Index>(k), 4) = 1.0 / std::sqrt(std::abs(model.L0));
  }
  return frame;
}

}  // namespace spaceform
