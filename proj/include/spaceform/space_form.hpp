#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string_view>

#include "spaceform/geomcore.hpp"
#include "spaceform/grid.hpp"
#include "spaceform/surface_case.hpp"

namespace spaceform {

struct SpaceFormModel {
  SurfaceCase surface_case = SurfaceCase::Riemannian;
  double L0 = 0.0;
  AmbientSignature ambient;
  std::optional<double> quadric_const;  // 1/L0 when L0 != 0

  bool flat() const { return L0 == 0.0; }
};

SpaceFormModel ambient_model(SurfaceCase c, double L0);

enum class FieldId { Lambda, Alpha1, Alpha2, Alpha3, Beta1, Beta2, Beta3, Mu1, Mu2 };
inline constexpr std::array<std::string_view, 9> kFieldNames = {
    "lambda", "alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "mu1", "mu2"};

struct FundamentalData {
  SpaceFormModel model;
  Grid grid;
  std::array<Field, 9> fields;

  static FundamentalData zeros(const SpaceFormModel& model, const Grid& grid);

  SurfaceCase surface_case() const { return model.surface_case; }
  Field& operator[](FieldId id) { return fields[static_cast<std::size_t>(id)]; }
  const Field& operator[](FieldId id) const { return fields[static_cast<std::size_t>(id)]; }
  Field& lambda() { return (*this)[FieldId::Lambda]; }
  const Field& lambda() const { return (*this)[FieldId::Lambda]; }
  // k = 1..3 / 1..2 as in the formulas
  Field& alpha(int k) { return fields[static_cast<std::size_t>(k)]; }
  const Field& alpha(int k) const { return fields[static_cast<std::size_t>(k)]; }
  Field& beta(int k) { return fields[static_cast<std::size_t>(3 + k)]; }
  const Field& beta(int k) const { return fields[static_cast<std::size_t>(3 + k)]; }
  Field& mu(int k) { return fields[static_cast<std::size_t>(6 + k)]; }
  const Field& mu(int k) const { return fields[static_cast<std::size_t>(6 + k)]; }

  // Shapes and finiteness; throws InvalidGrid / DimensionMismatch / NonFiniteValue.
  void validate() const;
};

// Pointwise coefficients entering S and T. curv is L0·e^{2λ}.
struct FrameCoefficients {
  double lu = 0, lv = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  double m1 = 0, m2 = 0;
  double curv = 0;

  FrameCoefficients& operator+=(const FrameCoefficients& o);
  FrameCoefficients& operator*=(double s);
  friend FrameCoefficients operator+(FrameCoefficients a, const FrameCoefficients& b) {
    return a += b;
  }
  friend FrameCoefficients operator*(FrameCoefficients a, double s) { return a *= s; }
  friend FrameCoefficients operator*(double s, FrameCoefficients a) { return a *= s; }
};

using Matrix5d = Eigen::Matrix<double, 5, 5>;

struct ConnectionPair {
  Matrix5d S;
  Matrix5d T;
};

// S and T for the frame (T1,T2,N1,N2,F): frame_u = frame·S, frame_v = frame·T.
ConnectionPair connection_matrices(SurfaceCase c, const FrameCoefficients& k);

// λ_u, λ_v by second-order differences at (i,j).
ConnectionPair build_connection_matrices(const FundamentalData& data, std::size_t i,
                                         std::size_t j);

// h(X,X)/e^{2λ} for X = T1,T2,N1,N2.
std::array<int, 4> tangent_normal_signs(SurfaceCase c);

// Positions of T1,T2,N1,N2 in the case's oriented unit frame e1..e4.
std::array<int, 4> frame_order(SurfaceCase c);

struct FrameResiduals {
  // Upper triangle of the 4x4 Gram matrix of (T1,T2,N1,N2), row major:
  // (T1T1, T1T2, T1N1, T1N2, T2T2, T2N1, T2N2, N1N1, N1N2, N2N2).
  std::array<double, 10> pairwise{};
  std::optional<double> quadric;                     // 1/L0 − ⟨F,F⟩
  std::optional<std::array<double, 4>> position;     // −⟨X,F⟩ for X = T1..N2
  double max_abs() const;
};

// frame: ambient_dim x 5 with columns (T1,T2,N1,N2,F). Residual = expected − actual.
FrameResiduals validate_frame(const Eigen::MatrixXd& frame, double lambda,
                              const SpaceFormModel& model);

// Unit frame e1..e4 in the case's order from (T1,T2,N1,N2) scaled by e^{-λ}.
Eigen::MatrixXd ordered_unit_frame(const Eigen::MatrixXd& frame, double lambda, SurfaceCase c);

// Coordinate-aligned frame satisfying validate_frame exactly.
Eigen::MatrixXd canonical_initial_frame(const SpaceFormModel& model, double lambda0);

}  // namespace spaceform
