#pragma once

#include <array>
#include <complex>

#include "spaceform/jets.hpp"
#include "spaceform/space_form.hpp"

namespace spaceform {

struct GcrPoint {
  double gauss = 0;
  std::array<double, 4> codazzi{};
  double ricci = 0;
};

// LHS − RHS of the Gauss, Codazzi and Ricci equations of the case.
GcrPoint gcr_point(SurfaceCase c, const PointJet& jet);

struct GcrResiduals {
  Grid grid;
  Field gauss;
  std::array<Field, 4> codazzi;
  Field ricci;
  double max_abs() const;
  Field pointwise_max() const;
};

GcrResiduals gcr_residuals(const FundamentalData& data, int threads = 1);

// Max-entry norm of S_v − T_u − (ST − TS) per node.
Field lax_residual(const FundamentalData& data, int threads = 1);

// The Gauss-Ricci and Codazzi equations rewritten in W,X,Y,Z,φ,ψ.
struct WxyzForms {
  Complex gauss_ricci, codazzi0, codazzi1;
};
WxyzForms wxyz_forms(SurfaceCase c, int branch, const PointJet& jet);

// gauss_ricci = g·G + r·R, codazzi_k = Σ c_k[m]·C_m.
struct EquivalenceCoefficients {
  Complex gauss, ricci;
  std::array<Complex, 4> codazzi0, codazzi1;
};
EquivalenceCoefficients equivalence_coefficients(SurfaceCase c, int branch);

// Number of independent branches of the W,X,Y,Z system (2 real, 1 Lorentzian).
int wxyz_branches(SurfaceCase c);

struct EquivalenceReport {
  Grid grid;
  std::array<ComplexField, 2> gauss_ricci, codazzi0, codazzi1;  // raw rewritten residuals
  Field combination;  // max |rewritten − combination of GCR residuals| per node
  double max_combination = 0.0;
};

EquivalenceReport equivalence_check(const FundamentalData& data, int threads = 1);

}  // namespace spaceform
