#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spaceform/finite_diff.hpp"
#include "spaceform/space_form.hpp"
#include "spaceform/twistor.hpp"

namespace spaceform {

// Per-node ambient frame (T1,T2,N1,N2,F), each ambient_dim x 5.
struct FrameField {
  Grid grid;
  SpaceFormModel model;
  std::vector<Eigen::MatrixXd> frames;

  const Eigen::MatrixXd& at(std::size_t i, std::size_t j) const { return frames[grid.index(i, j)]; }
  Eigen::MatrixXd& at(std::size_t i, std::size_t j) { return frames[grid.index(i, j)]; }
  Eigen::VectorXd position(std::size_t k) const { return frames[k].col(4); }
};

struct IntegrationOptions {
  bool transposed_path = true;   // also integrate v-first and report the discrepancy
  int threads = 1;
  double init_tolerance = 1e-9;  // on validate_frame of the initial frame, relative to e^{2λ0}
  std::size_t project_every = 0; // 0 = never re-project onto the frame constraints
  std::optional<double> gcr_tolerance;  // default max(1e-8, 10 h²)
};

struct IntegrationReport {
  double cross_consistency = 0.0;  // last row re-integrated along u vs stored frames
  double path_discrepancy = 0.0;   // u-first vs v-first (when computed)
  double max_drift = 0.0;          // max validate_frame residual / e^{2λ}
  double gcr_max = 0.0;
  bool gcr_warning = false;        // GCR residuals above tolerance on input
  double flag_threshold = 0.0;     // 100 h²
  bool integrable = true;
};

struct FrameIntegration {
  FrameField frames;
  IntegrationReport report;
};

FrameIntegration integrate_frame(const FundamentalData& data, const Eigen::MatrixXd& init,
                                 const IntegrationOptions& options = {});

FundamentalData extract_fundamental(const FrameField& frames, const SpaceFormModel& model,
                                    double min_conformal = 1e-12);

// λ with λ_u = P, λ_v = Q, λ(u0,v0) = 0. tol defaults to max(1e-8, 10 h²) on
// the max of |P_v − Q_u|.
Field integrate_potential(const Field& P, const Field& Q, const Grid& grid,
                          std::optional<double> tol = std::nullopt);

struct ConstructionOptions {
  DiffOrder order = DiffOrder::Fourth;
  std::optional<double> tolerance;  // hypothesis residual tolerance, default max(1e-8, 10 h²)
  std::size_t margin = 3;           // boundary rings skipped by derivative hypotheses
  double identity_tolerance = 1e-12;
  double threshold_scale = 1e-10;
};

struct ConstructionDiagnostics {
  double identity_residual = 0.0;
  double gauss_ricci_residual = 0.0;  // A_u + B_v − Δ (flat) or f branch mismatch (curved)
  double compatibility_residual = 0.0;
  double min_abs_delta = 0.0;
  double min_f_over_L0 = 0.0;
};

FundamentalData construct_from_wxyz_flat(const TwistorInvariants& inv,
                                         const ConstructionOptions& options = {},
                                         ConstructionDiagnostics* diag = nullptr);

FundamentalData construct_from_wxyz_curved(const TwistorInvariants& inv, double L0,
                                           const ConstructionOptions& options = {},
                                           ConstructionDiagnostics* diag = nullptr);

// Polynomial p(w) = Σ c_k w^k.
struct HolomorphicSpec {
  std::vector<std::complex<double>> coefficients;

  static HolomorphicSpec constant(std::complex<double> c) { return {{c}}; }
  static HolomorphicSpec identity() { return {{0.0, 1.0}}; }
  static HolomorphicSpec exp_truncated(int terms);
  // "w", "0", "1+2w^3", "exp:8", "-0.5w^2+w"; throws std::invalid_argument.
  static HolomorphicSpec parse(const std::string& text);

  std::complex<double> operator()(std::complex<double> w) const;
  bool is_zero() const;
};

struct DelbarInput {
  Grid grid;
  double L0 = 0.0;
  std::optional<Field> lambda;  // default: liouville_profile
  std::optional<Field> gamma;   // default: 0
  HolomorphicSpec p;
  double r = 0.0;
  std::optional<double> liouville_tolerance;  // default 100 h² max(1, e^{2λ})
};

FundamentalData construct_delbar(const DelbarInput& in);

Field liouville_profile(double L0, const Grid& grid);

// λ_uu + λ_vv + L0 e^{2λ} by second-order differences.
Field liouville_residual(const Field& lambda, double L0, const Grid& grid);

struct EpsilonRelation {
  int eps = 1;
  double max_residual = 0.0;  // max |σ'(T1,T2) − ε σ'(T1,T1)| over nodes and normal components
};

struct MeanCurvatureReport {
  Field H1, H2;  // (α1+α3)/(2e^λ), (β1+β3)/(2e^λ)
  GridField<std::uint8_t> sigma_lightlike;
  bool all_lightlike = false;
  double max_abs_H = 0.0;
  bool eps_checked = false;
  std::array<EpsilonRelation, 2> eps{};
};

// p: the holomorphic datum if known; otherwise 2(α2 + iα1) is used.
MeanCurvatureReport mean_curvature_and_isotropy(const FundamentalData& data,
                                                std::optional<HolomorphicSpec> p = std::nullopt,
                                                double tol = 1e-10);

// Plain-text mesh of F under a 3 x ambient_dim projection: "v x y z" and quad faces.
void write_mesh(std::ostream& out, const FrameField& frames, const Eigen::MatrixXd& projection);

}  // namespace spaceform
