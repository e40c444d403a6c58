#include "spaceform/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spaceform/errors.hpp"
#include "spaceform/reconstruct.hpp"

namespace spaceform {

namespace {

[[noreturn]] void unsupported(const DatasetSpec& s) {
  throw WrongCase("dataset '" + s.family + "' is not available for " +
                  std::string(case_name(s.surface_case)) + " with L0 = " + std::to_string(s.L0));
}

void require(bool ok, const DatasetSpec& s) {
  if (!ok) unsupported(s);
}

double r2(const Grid& g, std::size_t i, std::size_t j) { return g.u(i) * g.u(i) + g.v(j) * g.v(j); }

// Umbilic surface: λ given, α1 = α3 = c e^λ.
FundamentalData umbilic(const DatasetSpec& s, const Field& lam, double c) {
  FundamentalData d = FundamentalData::zeros(ambient_model(s.surface_case, s.L0), s.grid);
  d.lambda() = lam;
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    d.alpha(1)[k] = c * std::exp(lam[k]);
    d.alpha(3)[k] = c * std::exp(lam[k]);
  }
  return d;
}

FundamentalData random_data(const DatasetSpec& s) {
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), freq(-2.0, 2.0), phase(0.0, 6.283185307179586);
  FundamentalData d = FundamentalData::zeros(ambient_model(s.surface_case, s.L0), s.grid);
  for (std::size_t f = 0; f < d.fields.size(); ++f) {
    const double scale = f == 0 ? 0.3 : 1.0;
    double a[3], b[3], c[3], p[3];
    for (int m = 0; m < 3; ++m) a[m] = scale * amp(rng), b[m] = freq(rng), c[m] = freq(rng), p[m] = phase(rng);
    for (std::size_t i = 0; i < s.grid.nu; ++i)
      for (std::size_t j = 0; j < s.grid.nv; ++j) {
        double x = 0.0;
        for (int m = 0; m < 3; ++m) x += a[m] * std::sin(b[m] * s.grid.u(i) + c[m] * s.grid.v(j) + p[m]);
        d.fields[f](i, j) = x;
      }
  }
  return d;
}

}  // namespace

const std::vector<std::string>& dataset_families() {
  static const std::vector<std::string> f = {"zero",         "sphere",           "totally_geodesic",
                                             "small_sphere", "hyperbolic_plane", "de_sitter",
                                             "random"};
  return f;
}

FundamentalData make_dataset(const DatasetSpec& s) {
  s.grid.validate();
  const Grid& g = s.grid;
  const SurfaceCase c = s.surface_case;
  if (s.family == "zero")
    return FundamentalData::zeros(ambient_model(c, s.L0), g);
  if (s.family == "random") return random_data(s);
  if (s.family == "totally_geodesic") {
    require(c == SurfaceCase::Riemannian || c == SurfaceCase::NeutralSpace ||
                c == SurfaceCase::LorentzSpace,
            s);
    FundamentalData d = FundamentalData::zeros(ambient_model(c, s.L0), g);
    d.lambda() = liouville_profile(s.L0, g);
    return d;
  }
  if (!(s.radius > 0.0)) throw Error("dataset radius must be positive");
  const double rho = s.radius;
  if (s.family == "sphere") {
    require((c == SurfaceCase::Riemannian || c == SurfaceCase::LorentzSpace) && s.L0 == 0.0, s);
    Field lam(g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) lam(i, j) = std::log(2.0 * rho / (1.0 + r2(g, i, j)));
    return umbilic(s, lam, -1.0 / rho);
  }
  if (s.family == "small_sphere") {
    // Chart radius ρ: λ = log(2ρ/(1+r²)); curvature 1/ρ² = L0 + c².
    double cc;
    if (c == SurfaceCase::Riemannian && s.L0 > 0.0) {
      cc = 1.0 / (rho * rho) - s.L0;
      if (cc < 0.0) throw WrongCase("small_sphere needs radius ≤ 1/√L0");
    } else if (c == SurfaceCase::LorentzSpace && s.L0 < 0.0) {
      cc = 1.0 / (rho * rho) - s.L0;
    } else {
      unsupported(s);
    }
    Field lam(g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) lam(i, j) = std::log(2.0 * rho / (1.0 + r2(g, i, j)));
    return umbilic(s, lam, -std::sqrt(cc));
  }
  if (s.family == "hyperbolic_plane") {
    require(c == SurfaceCase::NeutralSpace && s.L0 == 0.0, s);
    Field lam(g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) {
        const double q = r2(g, i, j);
        if (q >= 1.0)
          throw DomainViolation("grid leaves the unit disk", {i, j, g.u(i), g.v(j)});
        lam(i, j) = std::log(2.0 / (1.0 - q));
      }
    return umbilic(s, lam, 1.0);
  }
  if (s.family == "de_sitter") {
    require((c == SurfaceCase::NeutralTime || c == SurfaceCase::LorentzTime) && s.L0 == 0.0, s);
    FundamentalData d = FundamentalData::zeros(ambient_model(c, s.L0), g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) {
        const double cv = std::cos(g.v(j));
        if (!(cv > 0.0))
          throw DomainViolation("de Sitter chart needs |v| < π/2", {i, j, g.u(i), g.v(j)});
        const double lam = -std::log(cv);
        d.lambda()(i, j) = lam;
        d.alpha(1)(i, j) = -std::exp(lam);
        d.alpha(3)(i, j) = std::exp(lam);
      }
    return d;
  }
  throw Error("unknown dataset family '" + s.family + "'");
}

}  // namespace spaceform
