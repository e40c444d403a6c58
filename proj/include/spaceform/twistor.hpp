#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>

#include "spaceform/finite_diff.hpp"
#include "spaceform/jets.hpp"
#include "spaceform/space_form.hpp"

namespace spaceform {

// Branch index: 0 is the '+' lift (Θ_{+,1}, or Θ1 / its case analogue in the
// Lorentzian cases), 1 is the '−' lift (or the complex conjugate).
struct PointInvariants {
  std::array<Complex, 2> W{}, X{}, Y{}, Z{}, phi{}, psi{};
};

// Linear in the coefficients (curv is not used), so it also maps derivative jets
// to derivatives of the invariants.
PointInvariants point_invariants(SurfaceCase c, const FrameCoefficients& k);
std::array<Complex, 2> point_delta(SurfaceCase c, const PointInvariants& p);

struct TwistorInvariants {
  SurfaceCase surface_case = SurfaceCase::Riemannian;
  Grid grid;
  std::array<ComplexField, 2> W, X, Y, Z, phi, psi, delta;
  std::optional<Field> lambda;  // enables the scale-aware degeneracy threshold

  // Δ recomputed from W,X,Y,Z (construction inputs need not carry it).
  void refresh_delta();
};

TwistorInvariants twistor_invariants(const FundamentalData& data);

// Scale-aware degeneracy threshold on |Δ|.
double degeneracy_threshold(std::optional<double> lambda, double scale = 1e-10);

// Bivectors spanning the twistor bundle that the ∇̂ matrices act on.
std::array<Bivector, 3> hat_basis(SurfaceCase c, int branch);

struct HatPair {
  Eigen::Matrix3cd along_u;  // ∇̂_{T1}
  Eigen::Matrix3cd along_v;  // ∇̂_{T2}
};

HatPair hat_matrices(SurfaceCase c, int branch, const PointInvariants& p);

// Right-hand side of R̂(T1,T2) for a space form of curvature L0; curv = L0 e^{2λ}.
Eigen::Matrix3cd curvature_rhs(SurfaceCase c, int branch, double curv);

// ∂_u(∇̂_{T2}) − ∂_v(∇̂_{T1}) + [∇̂_{T1}, ∇̂_{T2}] − RHS from a jet.
Eigen::Matrix3cd curvature_residual_point(SurfaceCase c, int branch, const PointJet& jet);

struct HatConnection {
  Grid grid;
  std::vector<std::array<HatPair, 2>> points;  // row-major, per branch
};
HatConnection hat_connection_matrices(const FundamentalData& data);

struct CurvatureResidual {
  Grid grid;
  std::vector<std::array<Eigen::Matrix3cd, 2>> residual;
  std::array<Field, 2> max_entry;
  double max_abs() const;
};
CurvatureResidual curvature_residual(const FundamentalData& data, int threads = 1);

struct DegeneracyReport {
  std::array<ComplexField, 2> delta;
  Field threshold;
  std::array<bool, 2> branch_nondegenerate{};  // |Δ| above threshold everywhere
  std::array<bool, 2> branch_degenerate{};     // |Δ| below threshold everywhere
  bool nondegenerate = false;
  bool degenerate = false;
  Field curvature_defect;  // K − L0
  Field normal_curvature;  // (μ1)_v − (μ2)_u
  double min_abs_delta = 0.0;
  double max_curvature_defect = 0.0;
  double max_normal_curvature = 0.0;
};
DegeneracyReport degeneracy_report(const FundamentalData& data, double threshold_scale = 1e-10);

struct ABFunctions {
  std::array<ComplexField, 2> A, B;
};
ABFunctions ab_functions(const TwistorInvariants& inv, DiffOrder order = DiffOrder::Second,
                         double threshold_scale = 1e-10);

struct DelbarResidual {
  ComplexField theta2, theta3;
  double max_abs = 0.0;
};
DelbarResidual delbar_residual(const FundamentalData& data);

enum class DependenceClass : std::uint8_t {
  Independent,
  Dependent,          // dependent, no ∂̄-branch classification applies
  ZeroMeanCurvature,  // α1 + α3 = 0
  PVanishes,          // α1 = α3 and α2 = 0
  TotallyGeodesic,    // both of the above
};

struct LinearDependence {
  GridField<std::uint8_t> dependent;
  GridField<DependenceClass> classification;
  bool all_dependent = false;
};
LinearDependence linear_dependence_check(const FundamentalData& data, double tol = 1e-10);

// ω: 4x4 with entry (k,l) = ω^k_l, in a Lorentzian frame (T1,T2,N1,N2).
Eigen::Matrix3cd so3c_connection_form(const Eigen::Matrix4d& omega, double tol = 1e-10);

}  // namespace spaceform
