#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spaceform/space_form.hpp"

namespace spaceform {

// Analytic fundamental data used by tests, the CLI and the acceptance suite.
//   zero              all fields 0 (any case, any L0)
//   sphere            round sphere of radius `radius` in a flat 3-space (RIEM, LOR_SPACE; L0 = 0)
//   totally_geodesic  Liouville λ, everything else 0 (RIEM, NEUT_SPACE, LOR_SPACE)
//   small_sphere      umbilic sphere of chart radius `radius` (RIEM with L0 > 0, LOR_SPACE with L0 < 0)
//   hyperbolic_plane  umbilic hyperbolic plane with time-like normal (NEUT_SPACE; L0 = 0)
//   de_sitter         umbilic de Sitter 2-space, λ = −log cos v (NEUT_TIME, LOR_TIME; L0 = 0)
//   random            seeded smooth trigonometric fields, not a solution of the GCR system
struct DatasetSpec {
  std::string family = "sphere";
  SurfaceCase surface_case = SurfaceCase::Riemannian;
  double L0 = 0.0;
  Grid grid;
  double radius = 1.0;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& dataset_families();

// Throws WrongCase for an unsupported (family, case, L0) combination,
// DomainViolation when the grid leaves the chart.
FundamentalData make_dataset(const DatasetSpec& spec);

}  // namespace spaceform
