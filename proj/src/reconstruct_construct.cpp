#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "spaceform/errors.hpp"
#include "spaceform/reconstruct.hpp"

namespace spaceform {

namespace {

double default_tolerance(const Grid& g, std::optional<double> t) {
  const double h = g.h();
  return t.value_or(std::max(1e-8, 10.0 * h * h));
}

bool inside(const Grid& g, std::size_t k, std::size_t margin) {
  const std::size_t i = k / g.nv, j = k % g.nv;
  return i >= margin && i + margin < g.nu && j >= margin && j + margin < g.nv;
}

// Lorentzian inputs only need the first branch; the second is its conjugate.
TwistorInvariants normalized(const TwistorInvariants& in) {
  TwistorInvariants t = in;
  t.grid.validate();
  for (auto* f : {&t.W, &t.X, &t.Y, &t.Z})
    for (auto& b : *f)
      if (!b.matches(t.grid)) throw DimensionMismatch("invariant field does not match grid");
  if (is_lorentzian(t.surface_case))
    for (auto* f : {&t.W, &t.X, &t.Y, &t.Z})
      (*f)[1] = (*f)[0].map([](Complex z) { return std::conj(z); });
  t.refresh_delta();
  return t;
}

// W+ + W- = X+ + X-, Y+ + Y- = Z+ + Z- (real parts in the Lorentzian cases).
double check_identities(const TwistorInvariants& t, double tol) {
  const Grid& g = t.grid;
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    double r1, r2, scale;
    if (is_lorentzian(t.surface_case)) {
      r1 = std::abs(t.W[0][k].real() - t.X[0][k].real());
      r2 = std::abs(t.Y[0][k].real() - t.Z[0][k].real());
      scale = std::max({1.0, std::abs(t.W[0][k]), std::abs(t.X[0][k]), std::abs(t.Y[0][k]),
                        std::abs(t.Z[0][k])});
    } else {
      for (auto* f : {&t.W, &t.X, &t.Y, &t.Z})
        for (const auto& b : *f)
          if (std::abs(b[k].imag()) > tol)
            throw HypothesisViolated("real-valued invariants", std::abs(b[k].imag()),
                                     g.location(k));
      r1 = std::abs(t.W[0][k] + t.W[1][k] - t.X[0][k] - t.X[1][k]);
      r2 = std::abs(t.Y[0][k] + t.Y[1][k] - t.Z[0][k] - t.Z[1][k]);
      scale = 1.0;
      for (auto* f : {&t.W, &t.X, &t.Y, &t.Z})
        for (const auto& b : *f) scale = std::max(scale, std::abs(b[k]));
    }
    if (r1 > tol * scale)
      throw HypothesisViolated(is_lorentzian(t.surface_case) ? "Re W = Re X" : "W+ + W- = X+ + X-",
                               r1, g.location(k));
    if (r2 > tol * scale)
      throw HypothesisViolated(is_lorentzian(t.surface_case) ? "Re Y = Re Z" : "Y+ + Y- = Z+ + Z-",
                               r2, g.location(k));
    worst = std::max({worst, r1, r2});
  }
  return worst;
}

// The Gauss-Ricci relation solved for L0 e^{2λ}, per branch.
std::array<ComplexField, 2> curvature_term(const TwistorInvariants& t, const ABFunctions& ab,
                                           DiffOrder order) {
  const Grid& g = t.grid;
  std::array<ComplexField, 2> f{ComplexField(g), ComplexField(g)};
  const int nb = is_lorentzian(t.surface_case) ? 1 : 2;
  for (int s = 0; s < nb; ++s) {
    const int o = 1 - s;
    const ComplexField Au = diff_u(ab.A[s], g, order);
    const ComplexField Bv_other = diff_v(ab.B[o], g, order);
    const ComplexField Bv_same = diff_v(ab.B[s], g, order);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Complex d = t.delta[s][k];
      switch (t.surface_case) {
        case SurfaceCase::Riemannian: f[s][k] = d - Au[k] - Bv_other[k]; break;
        case SurfaceCase::NeutralSpace: f[s][k] = -d - Au[k] - Bv_other[k]; break;
        case SurfaceCase::NeutralTime: f[s][k] = -d - Au[k] + Bv_same[k]; break;
        case SurfaceCase::LorentzSpace: f[s][k] = d - Au[k] - Bv_same[k]; break;
        case SurfaceCase::LorentzTime: f[s][k] = -d - Au[k] + Bv_same[k]; break;
      }
    }
  }
  if (nb == 1) f[1] = f[0].map([](Complex z) { return std::conj(z); });
  return f;
}

double check_compatibility(const TwistorInvariants& t, const ABFunctions& ab,
                           const ConstructionOptions& opt, double tol) {
  const Grid& g = t.grid;
  const ComplexField Asum = ab.A[0] + ab.A[1];
  const ComplexField Bsum = ab.B[0] + ab.B[1];
  const ComplexField r = diff_v(Asum, g, opt.order) - diff_u(Bsum, g, opt.order);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!inside(g, k, opt.margin)) continue;
    const double a = std::abs(r[k]);
    if (a > tol) throw HypothesisViolated("(A+ + A-)_v = (B+ + B-)_u", a, g.location(k));
    worst = std::max(worst, a);
  }
  return worst;
}

void fill_from_invariants(FundamentalData& d, const TwistorInvariants& t, const ABFunctions& ab) {
  const Grid& g = t.grid;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex W = t.W[0][k], X = t.X[0][k], Y = t.Y[0][k], Z = t.Z[0][k];
    const Complex A = ab.A[0][k], B = ab.B[0][k];
    double a1, a2, a3, b1, b2, b3, m1, m2;
    switch (t.surface_case) {
      case SurfaceCase::LorentzSpace:
        b1 = -W.imag(), a2 = X.real(), b3 = X.imag();
        b2 = Y.real(), a1 = -Y.imag(), a3 = Z.imag();
        m2 = -A.imag(), m1 = B.imag();
        break;
      case SurfaceCase::LorentzTime:
        b1 = W.imag(), a2 = X.real(), b3 = X.imag();
        b2 = Y.real(), a1 = -Y.imag(), a3 = -Z.imag();
        m2 = -A.imag(), m1 = -B.imag();
        break;
      default: {
        const double Wm = t.W[1][k].real(), Xm = t.X[1][k].real();
        const double Ym = t.Y[1][k].real(), Zm = t.Z[1][k].real();
        a1 = 0.5 * (Y.real() - Ym);
        a2 = 0.5 * (X.real() + Xm);
        a3 = 0.5 * (Z.real() - Zm);
        b1 = 0.5 * (W.real() - Wm);
        b2 = 0.5 * (Y.real() + Ym);
        b3 = 0.5 * (X.real() - Xm);
        m2 = 0.5 * (ab.A[1][k].real() - A.real());
        m1 = 0.5 * (ab.B[1][k].real() - B.real());
      }
    }
    d.alpha(1)[k] = a1, d.alpha(2)[k] = a2, d.alpha(3)[k] = a3;
    d.beta(1)[k] = b1, d.beta(2)[k] = b2, d.beta(3)[k] = b3;
    d.mu(1)[k] = m1, d.mu(2)[k] = m2;
  }
}

double min_abs_delta(const TwistorInvariants& t) {
  double m = std::numeric_limits<double>::infinity();
  const int nb = is_lorentzian(t.surface_case) ? 1 : 2;
  for (int s = 0; s < nb; ++s)
    for (std::size_t k = 0; k < t.grid.size(); ++k) m = std::min(m, std::abs(t.delta[s][k]));
  return m;
}

}  // namespace

Field integrate_potential(const Field& P, const Field& Q, const Grid& g, std::optional<double> tol) {
  g.validate();
  if (!P.matches(g) || !Q.matches(g)) throw DimensionMismatch("potential fields do not match grid");
  const Field r = diff_v(P, g) - diff_u(Q, g);
  const std::size_t worst = r.argmax_abs();
  if (std::abs(r[worst]) > default_tolerance(g, tol))
    throw IncompatiblePair("P_v − Q_u = " + std::to_string(r[worst]), g.location(worst));
  Field out(g, 0.0);
  for (std::size_t i = 0; i + 1 < g.nu; ++i)
    out(i + 1, 0) = out(i, 0) + 0.5 * g.du * (P(i, 0) + P(i + 1, 0));
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j + 1 < g.nv; ++j)
      out(i, j + 1) = out(i, j) + 0.5 * g.dv * (Q(i, j) + Q(i, j + 1));
  return out;
}

FundamentalData construct_from_wxyz_flat(const TwistorInvariants& in,
                                         const ConstructionOptions& opt,
                                         ConstructionDiagnostics* diag) {
  const TwistorInvariants t = normalized(in);
  const Grid& g = t.grid;
  const double tol = default_tolerance(g, opt.tolerance);
  ConstructionDiagnostics dg;
  dg.identity_residual = check_identities(t, opt.identity_tolerance);
  dg.min_abs_delta = min_abs_delta(t);
  const ABFunctions ab = ab_functions(t, opt.order, opt.threshold_scale);

  const auto f = curvature_term(t, ab, opt.order);
  const int nb = is_lorentzian(t.surface_case) ? 1 : 2;
  for (int s = 0; s < nb; ++s)
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!inside(g, k, opt.margin)) continue;
      const double a = std::abs(f[s][k]);
      if (a > tol * std::max(1.0, std::abs(t.delta[s][k])))
        throw HypothesisViolated("A_u + B_v = Δ (branch " + std::to_string(s) + ")", a,
                                 g.location(k));
      dg.gauss_ricci_residual = std::max(dg.gauss_ricci_residual, a);
    }
  dg.compatibility_residual = check_compatibility(t, ab, opt, tol);

  FundamentalData d = FundamentalData::zeros(ambient_model(t.surface_case, 0.0), g);
  const Field P = real_part(ab.A[0] + ab.A[1]).map([](double x) { return 0.5 * x; });
  const Field Q = real_part(ab.B[0] + ab.B[1]).map([](double x) { return 0.5 * x; });
  d.lambda() = integrate_potential(P, Q, g, std::numeric_limits<double>::infinity());
  fill_from_invariants(d, t, ab);
  if (diag) *diag = dg;
  return d;
}

FundamentalData construct_from_wxyz_curved(const TwistorInvariants& in, double L0,
                                           const ConstructionOptions& opt,
                                           ConstructionDiagnostics* diag) {
  if (L0 == 0.0) throw Error("construct_from_wxyz_curved needs L0 != 0");
  const TwistorInvariants t = normalized(in);
  const Grid& g = t.grid;
  const double tol = default_tolerance(g, opt.tolerance);
  ConstructionDiagnostics dg;
  dg.identity_residual = check_identities(t, opt.identity_tolerance);
  dg.min_abs_delta = min_abs_delta(t);
  // A and B need Δ ≠ 0, which is a hypothesis of the construction.
  ABFunctions ab;
  try {
    ab = ab_functions(t, opt.order, opt.threshold_scale);
  } catch (const DegenerateDelta& e) {
    throw HypothesisViolated("Delta nowhere zero", dg.min_abs_delta, e.location());
  }
  const auto fb = curvature_term(t, ab, opt.order);

  // f must be real and branch independent.
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!inside(g, k, opt.margin)) continue;
    const double mismatch = is_lorentzian(t.surface_case)
                                ? std::abs(fb[0][k].imag())
                                : std::abs(fb[0][k] - fb[1][k]);
    if (mismatch > tol * std::max(1.0, std::abs(fb[0][k])))
      throw HypothesisViolated(is_lorentzian(t.surface_case)
                                   ? "Δ − conj Δ = (A − conj A)_u + (B − conj B)_v"
                                   : "Δ+ − (A+)_u − (B-)_v = Δ- − (A-)_u − (B+)_v",
                               mismatch, g.location(k));
    dg.gauss_ricci_residual = std::max(dg.gauss_ricci_residual, mismatch);
  }
  const Field f = real_part(fb[0]);
  dg.min_f_over_L0 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double q = f[k] / L0;
    if (!(std::abs(f[k]) > opt.threshold_scale))
      throw HypothesisViolated("f nowhere zero", std::abs(f[k]), g.location(k));
    if (!(q > 0.0))
      throw SignMismatch("f/L0 = " + std::to_string(q) + " is not positive", g.location(k));
    dg.min_f_over_L0 = std::min(dg.min_f_over_L0, q);
  }
  // f_u = f (A+ + A-), f_v = f (B+ + B-)
  const Field fu = diff_u(f, g, opt.order), fv = diff_v(f, g, opt.order);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!inside(g, k, opt.margin)) continue;
    const double ru = std::abs(fu[k] - f[k] * (ab.A[0][k] + ab.A[1][k]).real());
    const double rv = std::abs(fv[k] - f[k] * (ab.B[0][k] + ab.B[1][k]).real());
    const double scale = tol * std::max(1.0, std::abs(f[k]));
    if (ru > scale) throw HypothesisViolated("f_u = f (A+ + A-)", ru, g.location(k));
    if (rv > scale) throw HypothesisViolated("f_v = f (B+ + B-)", rv, g.location(k));
    dg.compatibility_residual = std::max({dg.compatibility_residual, ru, rv});
  }
  check_compatibility(t, ab, opt, tol);

  // λ = ½ log(f/L0). Since (½ log f)_u = ½(A+ + A-) and likewise in v, λ is
  // integrated from A, B and only its constant is read from f (interior mean);
  // evaluating log f pointwise would carry iterated-difference noise into λ.
  FundamentalData d = FundamentalData::zeros(ambient_model(t.surface_case, L0), g);
  const Field P = real_part(ab.A[0] + ab.A[1]).map([](double x) { return 0.5 * x; });
  const Field Q = real_part(ab.B[0] + ab.B[1]).map([](double x) { return 0.5 * x; });
  d.lambda() = integrate_potential(P, Q, g, std::numeric_limits<double>::infinity());
  double offset = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (inside(g, k, opt.margin)) offset += 0.5 * std::log(f[k] / L0) - d.lambda()[k], ++count;
  if (count == 0)
    for (std::size_t k = 0; k < g.size(); ++k) offset += 0.5 * std::log(f[k] / L0) - d.lambda()[k], ++count;
  offset /= static_cast<double>(count);
  for (std::size_t k = 0; k < g.size(); ++k) d.lambda()[k] += offset;
  fill_from_invariants(d, t, ab);
  if (diag) *diag = dg;
  return d;
}

// ---- holomorphic data ----

HolomorphicSpec HolomorphicSpec::exp_truncated(int terms) {
  if (terms < 1) throw std::invalid_argument("exp truncation needs at least one term");
  HolomorphicSpec p;
  double c = 1.0;
  for (int k = 0; k < terms; ++k) {
    p.coefficients.emplace_back(c, 0.0);
    c /= static_cast<double>(k + 1);
  }
  return p;
}

HolomorphicSpec HolomorphicSpec::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  if (s.rfind("exp:", 0) == 0) return exp_truncated(std::stoi(s.substr(4)));

  HolomorphicSpec p;
  std::size_t pos = 0;
  auto add = [&](std::size_t deg, Complex c) {
    if (p.coefficients.size() <= deg) p.coefficients.resize(deg + 1, 0.0);
    p.coefficients[deg] += c;
  };
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') sign = s[pos++] == '-' ? -1.0 : 1.0;
    Complex c = 1.0;
    bool have_number = false;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      char* end = nullptr;
      const double x = std::strtod(s.c_str() + pos, &end);
      pos = static_cast<std::size_t>(end - s.c_str());
      c = x;
      have_number = true;
    }
    if (pos < s.size() && s[pos] == 'i') {
      c *= kI;
      ++pos;
      have_number = true;
    }
    if (pos < s.size() && s[pos] == '*') ++pos;
    std::size_t deg = 0;
    if (pos < s.size() && s[pos] == 'w') {
      ++pos;
      deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t used = 0;
        deg = static_cast<std::size_t>(std::stoul(s.substr(pos), &used));
        pos += used;
      }
    } else if (!have_number) {
      throw std::invalid_argument("cannot parse polynomial '" + text + "'");
    }
    add(deg, sign * c);
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
      throw std::invalid_argument("cannot parse polynomial '" + text + "'");
  }
  return p;
}

Complex HolomorphicSpec::operator()(Complex w) const {
  Complex acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * w + *it;
  return acc;
}

bool HolomorphicSpec::is_zero() const {
  for (const auto& c : coefficients)
    if (c != 0.0) return false;
  return true;
}

// ---- ∂̄-vanishing construction ----

Field liouville_profile(double L0, const Grid& g) {
  g.validate();
  Field lam(g, 0.0);
  if (L0 == 0.0) return lam;
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j < g.nv; ++j) {
      const double r2 = g.u(i) * g.u(i) + g.v(j) * g.v(j);
      if (L0 > 0.0) {
        lam(i, j) = std::log(2.0 / (std::sqrt(L0) * (1.0 + r2)));
      } else {
        if (r2 >= 1.0)
          throw DomainViolation("grid reaches the singular circle u²+v² = 1",
                                {i, j, g.u(i), g.v(j)});
        lam(i, j) = std::log(2.0 / (std::sqrt(-L0) * (1.0 - r2)));
      }
    }
  return lam;
}

Field liouville_residual(const Field& lambda, double L0, const Grid& g) {
  Field r = diff_uu(lambda, g) + diff_vv(lambda, g);
  for (std::size_t k = 0; k < g.size(); ++k) r[k] += L0 * std::exp(2.0 * lambda[k]);
  return r;
}

FundamentalData construct_delbar(const DelbarInput& in) {
  const Grid& g = in.grid;
  g.validate();
  const Field lam = in.lambda ? *in.lambda : liouville_profile(in.L0, g);
  const Field gam = in.gamma ? *in.gamma : Field(g, 0.0);
  if (!lam.matches(g) || !gam.matches(g)) throw DimensionMismatch("λ/γ do not match grid");

  const Field res = liouville_residual(lam, in.L0, g);
  const double h = g.h();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double tol =
        in.liouville_tolerance.value_or(100.0 * h * h) * std::max(1.0, std::exp(2.0 * lam[k]));
    if (!(std::abs(res[k]) <= tol))
      throw LiouvilleViolated("λ_uu + λ_vv + L0 e^{2λ} = " + std::to_string(res[k]),
                              g.location(k));
  }

  FundamentalData d = FundamentalData::zeros(ambient_model(SurfaceCase::LorentzSpace, in.L0), g);
  d.lambda() = lam;
  d.mu(1) = diff_u(gam, g, DiffOrder::Fourth);
  d.mu(2) = diff_v(gam, g, DiffOrder::Fourth);
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j < g.nv; ++j) {
      const std::size_t k = g.index(i, j);
      const Complex pw = in.p(Complex(g.u(i), g.v(j)));
      const double up = std::exp(gam[k] - lam[k]), down = std::exp(lam[k] - gam[k]);
      const Complex W = 0.5 * (pw * up + kI * in.r * down);
      const Complex X = 0.5 * (pw * up - kI * in.r * down);
      // Z = −W and Y = −X
      d.alpha(1)[k] = X.imag();
      d.beta(3)[k] = X.imag();
      d.alpha(2)[k] = W.real();
      d.beta(2)[k] = -W.real();
      d.alpha(3)[k] = -W.imag();
      d.beta(1)[k] = -W.imag();
    }
  return d;
}

MeanCurvatureReport mean_curvature_and_isotropy(const FundamentalData& data,
                                                std::optional<HolomorphicSpec> p, double tol) {
  if (data.surface_case() != SurfaceCase::LorentzSpace)
    throw WrongCase("mean_curvature_and_isotropy requires LOR_SPACE data");
  data.validate();
  const Grid& g = data.grid;
  MeanCurvatureReport r;
  r.H1 = Field(g);
  r.H2 = Field(g);
  r.sigma_lightlike = GridField<std::uint8_t>(g, 0);
  r.all_lightlike = true;
  bool delbar = true, minimal = true, p_zero_all = true, p_zero_some = false;
  std::size_t p_zero_at = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a1 = data.alpha(1)[k], a2 = data.alpha(2)[k], a3 = data.alpha(3)[k];
    const double b1 = data.beta(1)[k], b2 = data.beta(2)[k], b3 = data.beta(3)[k];
    const double el = std::exp(data.lambda()[k]);
    r.H1[k] = (a1 + a3) / (2.0 * el);
    r.H2[k] = (b1 + b3) / (2.0 * el);
    const bool null11 = std::abs(a1 * a1 - b1 * b1) <= tol * std::max(1.0, a1 * a1 + b1 * b1);
    const bool null12 = std::abs(a2 * a2 - b2 * b2) <= tol * std::max(1.0, a2 * a2 + b2 * b2);
    r.sigma_lightlike[k] = null11 && null12;
    r.all_lightlike = r.all_lightlike && null11 && null12;
    const double t1 = tol * std::max(1.0, el);
    delbar = delbar && std::abs(a1 - b3) <= t1 && std::abs(a2 + b2) <= t1 && std::abs(a3 - b1) <= t1;
    minimal = minimal && std::abs(a1 + a3) <= t1 && std::abs(b1 + b3) <= t1;
    const Complex q = p ? (*p)(Complex(g.u(k / g.nv), g.v(k % g.nv))) : 2.0 * Complex(a2, a1);
    if (std::abs(q) <= t1) {
      if (!p_zero_some) p_zero_at = k;
      p_zero_some = true;
    } else {
      p_zero_all = false;
    }
  }
  r.max_abs_H = std::max(r.H1.max_abs(), r.H2.max_abs());
  if (!delbar || !minimal || p_zero_all) return r;
  if (p_zero_some)
    throw TotallyGeodesicRegion("p vanishes; the ε-relation is untestable", g.location(p_zero_at));

  r.eps_checked = true;
  for (int e = 0; e < 2; ++e) {
    const int eps = e == 0 ? 1 : -1;
    EpsilonRelation rel{eps, 0.0};
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Complex q = p ? (*p)(Complex(g.u(k / g.nv), g.v(k % g.nv)))
                          : 2.0 * Complex(data.alpha(2)[k], data.alpha(1)[k]);
      // dw/dw' = a + ib with (dw'/dw)² = (1 − ε i) p / 2
      const Complex z = 1.0 / std::sqrt(0.5 * (1.0 - static_cast<double>(eps) * kI) * q);
      const double a = z.real(), b = z.imag();
      const std::array<double, 2> s11 = {data.alpha(1)[k], data.beta(1)[k]};
      const std::array<double, 2> s12 = {data.alpha(2)[k], data.beta(2)[k]};
      const std::array<double, 2> s22 = {data.alpha(3)[k], data.beta(3)[k]};
      for (int n = 0; n < 2; ++n) {
        const double p11 = a * a * s11[n] + 2.0 * a * b * s12[n] + b * b * s22[n];
        const double p12 = -a * b * s11[n] + (a * a - b * b) * s12[n] + a * b * s22[n];
        rel.max_residual = std::max(rel.max_residual, std::abs(p12 - eps * p11));
      }
    }
    r.eps[e] = rel;
  }
  return r;
}

void write_mesh(std::ostream& out, const FrameField& ff, const Eigen::MatrixXd& projection) {
  const auto n = static_cast<Eigen::Index>(ff.model.ambient.dim());
  if (projection.rows() != 3 || projection.cols() != n)
    throw InvalidProjection("projection must be 3 x " + std::to_string(n));
  if (Eigen::FullPivLU<Eigen::MatrixXd>(projection).rank() < 3)
    throw InvalidProjection("projection has rank < 3");
  const Grid& g = ff.grid;
  char buf[160];
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Eigen::Vector3d x = projection * ff.frames[k].col(4);
    std::snprintf(buf, sizeof buf, "v %.16e %.16e %.16e\n", x[0], x[1], x[2]);
    out << buf;
  }
  for (std::size_t i = 0; i + 1 < g.nu; ++i)
    for (std::size_t j = 0; j + 1 < g.nv; ++j) {
      std::snprintf(buf, sizeof buf, "f %zu %zu %zu %zu\n", g.index(i, j) + 1,
                    g.index(i + 1, j) + 1, g.index(i + 1, j + 1) + 1, g.index(i, j + 1) + 1);
      out << buf;
    }
}

}  // namespace spaceform
