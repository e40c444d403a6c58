#pragma once

#include "spaceform/finite_diff.hpp"
#include "spaceform/space_form.hpp"

namespace spaceform {

// Coefficients of S,T at a node together with their u- and v-derivatives.
// Since S and T are linear in the coefficients, S_v = S(dv) up to the constant
// unit-insertion column.
struct PointJet {
  double lambda = 0;
  FrameCoefficients value, du, dv;
};

class DataJets {
 public:
  DataJets(const FundamentalData& data, DiffOrder order = DiffOrder::Second);
  // Keeps pointers into data, which must outlive the jets.
  DataJets(FundamentalData&&, DiffOrder = DiffOrder::Second) = delete;

  std::size_t size() const { return lambda_.size(); }
  PointJet at(std::size_t k) const;
  FrameCoefficients value(std::size_t k) const;

 private:
  double L0_;
  Field lambda_, lu_, lv_, luu_, luv_, lvv_;
  std::array<const Field*, 8> raw_{};  // a1,a2,a3,b1,b2,b3,m1,m2
  std::array<Field, 8> du_, dv_;
};

// S_v − T_u − (ST − TS) from a jet.
Matrix5d lax_matrix(SurfaceCase c, const PointJet& jet);

}  // namespace spaceform
