#include "spaceform/geomcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spaceform/errors.hpp"

namespace spaceform {

std::string describe(const GridLocation& loc) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "node (%zu,%zu), (u,v)=(%.6g,%.6g)", loc.i, loc.j, loc.u,
                loc.v);
  return buf;
}

std::string_view case_name(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::Riemannian: return "RIEM";
    case SurfaceCase::NeutralSpace: return "NEUT_SPACE";
    case SurfaceCase::NeutralTime: return "NEUT_TIME";
    case SurfaceCase::LorentzSpace: return "LOR_SPACE";
    case SurfaceCase::LorentzTime: return "LOR_TIME";
  }
  return "?";
}

std::optional<SurfaceCase> parse_case(std::string_view name) {
  for (auto c : kAllCases)
    if (case_name(c) == name) return c;
  return std::nullopt;
}

// ---- AmbientSignature ----

AmbientSignature::AmbientSignature(std::initializer_list<int> diag)
    : AmbientSignature(std::vector<int>(diag)) {}

AmbientSignature::AmbientSignature(const std::vector<int>& diag) {
  if (diag.size() != 4 && diag.size() != 5)
    throw DimensionMismatch("ambient signature must have 4 or 5 entries");
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] != 1 && diag[i] != -1)
      throw DimensionMismatch("ambient signature entries must be +1 or -1");
    diag_[i] = diag[i];
  }
  dim_ = diag.size();
}

AmbientSignature AmbientSignature::pseudo_euclidean(std::size_t dim, std::size_t negatives) {
  if (negatives > dim) throw DimensionMismatch("more negative entries than dimensions");
  std::vector<int> d(dim, 1);
  for (std::size_t i = dim - negatives; i < dim; ++i) d[i] = -1;
  return AmbientSignature(d);
}

std::size_t AmbientSignature::negatives() const {
  return static_cast<std::size_t>(std::count(diag_.begin(), diag_.begin() + dim_, -1));
}

Eigen::MatrixXd AmbientSignature::metric() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) g(i, i) = diag_[i];
  return g;
}

std::string AmbientSignature::name() const {
  std::string s = "E^" + std::to_string(dim_);
  if (auto k = negatives(); k > 0) s += "_" + std::to_string(k);
  return s;
}

bool AmbientSignature::operator==(const AmbientSignature& o) const {
  return dim_ == o.dim_ && std::equal(diag_.begin(), diag_.begin() + dim_, o.diag_.begin());
}

double pseudo_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const AmbientSignature& sig) {
  const auto n = static_cast<Eigen::Index>(sig.dim());
  if (x.size() != n || y.size() != n)
    throw DimensionMismatch("pseudo_inner: vector length does not match signature " +
                            sig.name());
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += sig[static_cast<std::size_t>(i)] * x[i] * y[i];
  return s;
}

// ---- Bivector ----

namespace {

int pair_index(int i, int j) {
  for (int p = 0; p < 6; ++p)
    if (Bivector::kPairs[p][0] == i && Bivector::kPairs[p][1] == j) return p;
  return -1;
}

int permutation_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) sign = -sign;
  return sign;
}

}  // namespace

Bivector Bivector::wedge(int i, int j) {
  if (i < 1 || i > 4 || j < 1 || j > 4 || i == j)
    throw IndexOutOfRange("wedge indices must be distinct and in 1..4");
  Bivector b;
  if (i < j)
    b.c[pair_index(i, j)] = 1.0;
  else
    b.c[pair_index(j, i)] = -1.0;
  return b;
}

Complex Bivector::component(int i, int j) const {
  if (i == j) return 0.0;
  return i < j ? c[pair_index(i, j)] : -c[pair_index(j, i)];
}

Bivector Bivector::conj() const {
  Bivector b;
  for (int p = 0; p < 6; ++p) b.c[p] = std::conj(c[p]);
  return b;
}

double Bivector::max_abs() const {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

bool Bivector::is_real(double tol) const {
  return std::all_of(c.begin(), c.end(), [tol](Complex z) { return std::abs(z.imag()) <= tol; });
}

Bivector& Bivector::operator+=(const Bivector& o) {
  for (int p = 0; p < 6; ++p) c[p] += o.c[p];
  return *this;
}
Bivector& Bivector::operator-=(const Bivector& o) {
  for (int p = 0; p < 6; ++p) c[p] -= o.c[p];
  return *this;
}
Bivector& Bivector::operator*=(Complex s) {
  for (auto& z : c) z *= s;
  return *this;
}

// ---- Hodge star ----

std::array<int, 4> frame_signature(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::Riemannian: return {1, 1, 1, 1};
    case SurfaceCase::NeutralSpace:  // (T1,T2,N1,N2)
    case SurfaceCase::NeutralTime:   // (T1,N1,T2,N2)
      return {1, 1, -1, -1};
    case SurfaceCase::LorentzSpace:  // (T1,T2,N1,N2)
    case SurfaceCase::LorentzTime:   // (N1,N2,T1,T2)
      return {1, 1, 1, -1};
  }
  return {1, 1, 1, 1};
}

Eigen::Matrix<double, 6, 6> hodge_matrix(SurfaceCase c) {
  const auto eta = frame_signature(c);
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  for (int p = 0; p < 6; ++p) {
    const int i = Bivector::kPairs[p][0], j = Bivector::kPairs[p][1];
    std::array<int, 2> kl{};
    int n = 0;
    for (int a = 1; a <= 4; ++a)
      if (a != i && a != j) kl[n++] = a;
    // ∗(e_i∧e_j) = η_k η_l e_k∧e_l with (i,j,k,l) even
    const int sign = permutation_sign({i, j, kl[0], kl[1]});
    m(pair_index(kl[0], kl[1]), p) = sign * eta[kl[0] - 1] * eta[kl[1] - 1];
  }
  return m;
}

Bivector hodge_star(const Bivector& b, SurfaceCase c) {
  const auto m = hodge_matrix(c);
  Bivector out;
  for (int r = 0; r < 6; ++r)
    for (int p = 0; p < 6; ++p)
      if (m(r, p) != 0.0) out.c[r] += m(r, p) * b.c[p];
  return out;
}

Complex star_eigenvalue(SurfaceCase c) { return is_lorentzian(c) ? kI : Complex(1.0); }

SelfDualSplit selfdual_split(const Bivector& b, SurfaceCase c) {
  const Complex s = star_eigenvalue(c);
  const Bivector sb = hodge_star(b, c);
  // ∗plus = s·plus, ∗minus = −s·minus; s² = ±1 so s⁻¹ = s·(s²)
  const Complex sinv = 1.0 / s;
  return {0.5 * (b + sinv * sb), 0.5 * (b - sinv * sb)};
}

Complex bivector_inner(const Bivector& a, const Bivector& b, SurfaceCase c) {
  const auto eta = frame_signature(c);
  Complex s = 0.0;
  for (int p = 0; p < 6; ++p)
    s += static_cast<double>(eta[Bivector::kPairs[p][0] - 1] * eta[Bivector::kPairs[p][1] - 1]) *
         a.c[p] * b.c[p];
  return s;
}

// ---- Θ bases ----

ThetaBasis theta_basis(SurfaceCase c) {
  using B = Bivector;
  const double r = 1.0 / std::sqrt(2.0);
  ThetaBasis t;
  t.surface_case = c;
  if (is_lorentzian(c)) {
    t.plus[0] = r * (B::wedge(1, 2) + kI * B::wedge(3, 4));
    t.plus[1] = r * (B::wedge(1, 3) + kI * B::wedge(4, 2));
    t.plus[2] = r * (kI * B::wedge(1, 4) + B::wedge(2, 3));
    for (int k = 0; k < 3; ++k) t.minus[k] = t.plus[k].conj();
  } else {
    const std::array<B, 3> a = {B::wedge(1, 2), B::wedge(1, 3), B::wedge(1, 4)};
    const std::array<B, 3> b = {B::wedge(3, 4), B::wedge(4, 2), B::wedge(2, 3)};
    for (int k = 0; k < 3; ++k) {
      t.plus[k] = r * (a[k] + b[k]);
      t.minus[k] = r * (a[k] - b[k]);
    }
  }
  return t;
}

ThetaBasis theta_basis(const Eigen::MatrixXd& frame, const AmbientSignature& sig,
                       SurfaceCase c, double tol) {
  if (frame.cols() != 4 || frame.rows() != static_cast<Eigen::Index>(sig.dim()))
    throw DimensionMismatch("theta_basis: frame must be ambient_dim x 4");
  const auto eta = frame_signature(c);
  const Eigen::MatrixXd gram = frame.transpose() * sig.metric() * frame;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double want = a == b ? eta[a] : 0.0;
      if (std::abs(gram(a, b) - want) > tol)
        throw FrameNormalizationError("theta_basis: frame violates unit normalization of " +
                                      std::string(case_name(c)) + " at entry (" +
                                      std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }
  ThetaBasis t = theta_basis(c);
  t.frame = frame;
  return t;
}

Eigen::MatrixXcd ThetaBasis::ambient(const Bivector& b) const {
  if (frame.cols() != 4) throw DimensionMismatch("ThetaBasis::ambient needs a concrete frame");
  const Eigen::Index n = frame.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < 6; ++p) {
    if (b.c[p] == 0.0) continue;
    const auto ei = frame.col(Bivector::kPairs[p][0] - 1);
    const auto ej = frame.col(Bivector::kPairs[p][1] - 1);
    m += b.c[p] * (ei * ej.transpose() - ej * ei.transpose()).cast<Complex>();
  }
  return m;
}

}  // namespace spaceform
