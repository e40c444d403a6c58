// Acceptance suite: one PASS/FAIL line per criterion with the measured values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "spaceform/liegroup.hpp"
#include "spaceform/twistor.hpp"

using namespace spaceform;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0 || dt < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %d %s: %s; %.2fs%s\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt,
              budget_s > 0 ? fmt(" (budget %.0fs)", budget_s).c_str() : "");
  std::fflush(stdout);
}

double max_field_diff(const Field& a, const Field& b) { return (a - b).max_abs(); }

FundamentalData delbar_data(const Grid& g, const char* p, double r) {
  DelbarInput in;
  in.grid = g;
  in.L0 = -1.0;
  in.p = HolomorphicSpec::parse(p);
  in.r = r;
  return construct_delbar(in);
}

// Largest square grid inside the disk |w| ≤ 0.5, 100 nodes per side (h ≈ 0.007).
// An even node count keeps w = 0 off the grid, so p = w vanishes nowhere.
const Grid kDisk = Grid::square(-0.5 / std::sqrt(2.0), 0.5 / std::sqrt(2.0), 100);

}  // namespace

int main() {
  run(1, "sphere golden test", 10.0, [] {
    double gauss[2], lax[2];
    const double hs[2] = {0.02, 0.01};
    bool ok = true;
    for (int s = 0; s < 2; ++s) {
      const Grid g = Grid::square(-1.0, 1.0, s == 0 ? 101 : 201);
      const FundamentalData d = oracle::unit_sphere(g);
      gauss[s] = gcr_residuals(d).gauss.max_abs();
      lax[s] = lax_residual(d).max_abs();
      ok = ok && gauss[s] < 10 * hs[s] * hs[s] && lax[s] < 10 * hs[s] * hs[s];
    }
    const double rg = gauss[0] / gauss[1], rl = lax[0] / lax[1];
    ok = ok && rg >= 3.2 && rg <= 4.8 && rl >= 3.2 && rl <= 4.8;
    return Outcome{ok, fmt("gauss %.3e/%.3e, lax %.3e/%.3e (limits 4e-3/1e-3)", gauss[0], gauss[1], lax[0], lax[1]) +
                           fmt(", ratios gauss %.3f lax %.3f (window [3.2,4.8])", rg, rl)};
  });

  run(2, "reconstruction round trip", 30.0, [] {
    const Grid g = Grid::square(-1.0, 1.0, 201);
    const FundamentalData d = oracle::unit_sphere(g);
    IntegrationOptions opt;
    opt.transposed_path = false;
    const auto fi = integrate_frame(d, canonical_initial_frame(d.model, d.lambda()[0]), opt);
    std::vector<Eigen::VectorXd> pts;
    for (std::size_t k = 0; k < g.size(); ++k) pts.push_back(fi.frames.position(k));
    const auto fit = oracle::fit_sphere(pts);
    const FundamentalData back = extract_fundamental(fi.frames, d.model);
    double worst = 0.0;
    for (std::size_t f = 0; f < d.fields.size(); ++f) worst = std::max(worst, max_field_diff(d.fields[f], back.fields[f]));
    return Outcome{fit.max_unit_defect < 1e-6 && worst < 1e-5,
                   fmt("max |<F-c,F-c>-1| = %.3e (limit 1e-6), extraction error %.3e (limit 1e-5)",
                       fit.max_unit_defect, worst)};
  });

  run(3, "twistor degeneracy dichotomy", 0.0, [] {
    const Grid g = Grid::square(-1.0, 1.0, 101);
    const double h = g.h();
    const auto sphere = degeneracy_report(oracle::unit_sphere(g));
    const auto zero = degeneracy_report(FundamentalData::zeros(ambient_model(SurfaceCase::Riemannian, 0.0), g));
    const double hd = kDisk.h();
    const auto delbar = degeneracy_report(delbar_data(kDisk, "w", 0.0));
    const bool s_ok = sphere.nondegenerate && !sphere.degenerate && sphere.max_curvature_defect > 0.1;
    const bool z_ok = zero.degenerate && zero.max_curvature_defect == 0.0 && zero.max_normal_curvature == 0.0;
    const bool d_ok = delbar.degenerate && delbar.max_curvature_defect < 10 * hd * hd &&
                      delbar.max_normal_curvature < 10 * hd * hd;
    (void)h;
    return Outcome{s_ok && z_ok && d_ok,
                   fmt("sphere nondegenerate=%g max|K-L0|=%.3f; zero degenerate=%g", sphere.nondegenerate,
                       sphere.max_curvature_defect, zero.degenerate) +
                       fmt("; delbar degenerate=%g |K-L0|=%.3e |Rn|=%.3e (limit %.3e)", delbar.degenerate,
                           delbar.max_curvature_defect, delbar.max_normal_curvature, 10 * hd * hd)};
  });

  run(4, "equivalence identities", 0.0, [] {
    const Grid g = Grid::square(-0.5, 0.5, 21);
    const double tol = 10 * g.h() * g.h();
    double worst = 0.0, coef_err = 0.0;
    std::uint64_t seed = 1;
    for (SurfaceCase c : kAllCases) {
      for (int b = 0; b < wxyz_branches(c); ++b) {
        const auto bf = oracle::brute_force_coefficients(c, b, 1000 + static_cast<std::uint64_t>(c) * 10 + b);
        const auto ec = equivalence_coefficients(c, b);
        coef_err = std::max({coef_err, std::abs(bf.gauss - ec.gauss), std::abs(bf.ricci - ec.ricci), bf.fit_residual});
        for (int m = 0; m < 4; ++m)
          coef_err = std::max({coef_err, std::abs(bf.codazzi0[m] - ec.codazzi0[m]), std::abs(bf.codazzi1[m] - ec.codazzi1[m])});
      }
      for (int n = 0; n < 100; ++n) {
        DatasetSpec spec;
        spec.family = "random";
        spec.surface_case = c;
        spec.L0 = (n % 3) - 1.0;
        spec.grid = g;
        spec.seed = seed++;
        worst = std::max(worst, equivalence_check(make_dataset(spec)).max_combination);
      }
    }
    return Outcome{worst < tol && coef_err < 1e-9,
                   fmt("max combination residual %.3e over 500 instances (limit %.3e), brute-force coefficient mismatch %.3e",
                       worst, tol, coef_err)};
  });

  run(5, "twistor curvature identity", 0.0, [] {
    const Grid g = Grid::square(-1.0, 1.0, 101);
    const double tol = 10 * g.h() * g.h();
    const double rs = curvature_residual(oracle::unit_sphere(g)).max_abs();
    DatasetSpec tg;
    tg.family = "totally_geodesic";
    tg.L0 = 1.0;
    tg.grid = g;
    const double rt = curvature_residual(make_dataset(tg)).max_abs();
    return Outcome{rs < tol && rt < tol,
                   fmt("sphere %.3e, totally geodesic S2 in S4 %.3e (limit %.3e)", rs, rt, tol)};
  });

  run(6, "Lie group suite", 5.0, [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> par(-2.0, 2.0);
    double table = 0.0, orth = 0.0, qmax = 0.0;
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= 2; ++l)
        for (int n = 0; n < 20; ++n) {
          const lie::GeneratorSpec s{k, l, par(rng)};
          const Eigen::Matrix3cd Q = lie::induced_action(lie::lorentz_generator(s));
          table = std::max(table, (Q - lie::generator_image(s)).cwiseAbs().maxCoeff());
          orth = std::max(orth, (Q.transpose() * Q - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
        }
    std::vector<lie::Word> words;
    std::uniform_int_distribution<int> kk(1, 3), ll(1, 2);
    for (int n = 0; n < 100; ++n) {
      lie::Word w;
      for (int m = 0; m < 5; ++m) w.push_back({kk(rng), ll(rng), par(rng)});
      qmax = std::max(qmax, lie::induced_action(lie::word_product(w)).cwiseAbs().maxCoeff());
      words.push_back(w);
    }
    const auto rep = lie::phi_check(words);
    double hom = 0.0;
    for (const auto& w : rep.words) hom = std::max(hom, w.homomorphism), orth = std::max(orth, w.orthogonality);
    const Eigen::Matrix3cd minus = lie::induced_action(-Eigen::Matrix4d::Identity());
    const bool exact = minus == Eigen::Matrix3cd::Identity();
    return Outcome{table < 1e-12 && hom < 1e-9 && orth < 1e-12 && exact,
                   fmt("table %.3e (1e-12), homomorphism %.3e (1e-9), orthogonality %.3e (1e-12), Phi(-I)=I exactly: %g",
                       table, hom, orth, exact) + fmt(", max|Q| %.1f", qmax)};
  });

  run(7, "delbar construction pipeline", 0.0, [] {
    const double h = kDisk.h(), tol = 10 * h * h;
    const FundamentalData d = delbar_data(kDisk, "w", 0.0);
    const double db = delbar_residual(d).max_abs;
    const double gcr = gcr_residuals(d).max_abs();
    const auto mc = mean_curvature_and_isotropy(d, HolomorphicSpec::identity());
    const double eps = std::max(mc.eps[0].max_residual, mc.eps[1].max_residual);
    const auto mc1 = mean_curvature_and_isotropy(delbar_data(kDisk, "0", 1.0));
    const bool ok = db < 1e-12 && gcr < tol && mc.max_abs_H == 0.0 && mc.eps_checked && eps < 1e-6 &&
                    mc1.max_abs_H > 0.1;
    return Outcome{ok, fmt("delbar %.3e (1e-12), GCR %.3e (limit %.3e), max|H| %.3e", db, gcr, tol, mc.max_abs_H) +
                           fmt(", eps relation %.3e (1e-6), r=1 max|H| %.3f (> 0.1)", eps, mc1.max_abs_H)};
  });

  run(8, "WXYZ flat round trip", 0.0, [] {
    const Grid g = Grid::square(-1.0, 1.0, 101);
    const double tol = 10 * g.h() * g.h();
    const FundamentalData d = oracle::unit_sphere(g);
    const FundamentalData back = construct_from_wxyz_flat(twistor_invariants(d));
    const Field gauge = d.lambda() - back.lambda();
    double spread = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) spread = std::max(spread, std::abs(gauge[k] - gauge[0]));
    double worst = 0.0;
    for (std::size_t f = 1; f < d.fields.size(); ++f) worst = std::max(worst, max_field_diff(d.fields[f], back.fields[f]));
    const double gcr = gcr_residuals(back).max_abs();
    return Outcome{spread < tol && worst < tol && gcr < tol,
                   fmt("lambda gauge spread %.3e, field error %.3e, GCR %.3e (limit %.3e)", spread, worst, gcr, tol)};
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
