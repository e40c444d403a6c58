#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace spaceform {

// Signature case of a surface in a 4-dimensional space form.
enum class SurfaceCase {
  Riemannian,     // RIEM
  NeutralSpace,   // NEUT_SPACE
  NeutralTime,    // NEUT_TIME
  LorentzSpace,   // LOR_SPACE
  LorentzTime,    // LOR_TIME
};

inline constexpr std::array<SurfaceCase, 5> kAllCases = {
    SurfaceCase::Riemannian, SurfaceCase::NeutralSpace, SurfaceCase::NeutralTime,
    SurfaceCase::LorentzSpace, SurfaceCase::LorentzTime};

std::string_view case_name(SurfaceCase c);
std::optional<SurfaceCase> parse_case(std::string_view name);

constexpr bool is_lorentzian(SurfaceCase c) {
  return c == SurfaceCase::LorentzSpace || c == SurfaceCase::LorentzTime;
}

// T2 is time-like (h(T2,T2) = -e^{2λ}).
constexpr bool is_timelike(SurfaceCase c) {
  return c == SurfaceCase::NeutralTime || c == SurfaceCase::LorentzTime;
}

// Number of independent twistor branches stored (real cases: ±, Lorentzian: the
// lift and its conjugate are both kept so that the same code can index them).
constexpr int kBranches = 2;

}  // namespace spaceform
