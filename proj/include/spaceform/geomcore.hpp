#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "spaceform/surface_case.hpp"

namespace spaceform {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

class AmbientSignature {
 public:
  AmbientSignature() = default;
  AmbientSignature(std::initializer_list<int> diag);
  explicit AmbientSignature(const std::vector<int>& diag);

  // E^n_k with the k negative entries placed last.
  static AmbientSignature pseudo_euclidean(std::size_t dim, std::size_t negatives);

  std::size_t dim() const { return dim_; }
  int operator[](std::size_t i) const { return diag_[i]; }
  std::size_t negatives() const;
  Eigen::MatrixXd metric() const;
  std::string name() const;  // "E^5_2"
  bool operator==(const AmbientSignature& o) const;

 private:
  std::array<int, 5> diag_{};
  std::size_t dim_ = 0;
};

double pseudo_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const AmbientSignature& sig);

// 2-vector on a rank-4 frame, components in the order 12,13,14,23,24,34.
struct Bivector {
  std::array<Complex, 6> c{};

  static constexpr std::array<std::array<int, 2>, 6> kPairs = {
      {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

  // e_i ∧ e_j, 1-based, i != j (antisymmetry applied for i > j).
  static Bivector wedge(int i, int j);
  Complex component(int i, int j) const;

  Bivector conj() const;
  double max_abs() const;
  bool is_real(double tol = 0.0) const;

  Bivector& operator+=(const Bivector& o);
  Bivector& operator-=(const Bivector& o);
  Bivector& operator*=(Complex s);
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator*(Complex s, Bivector a) { return a *= s; }
  friend Bivector operator*(Bivector a, Complex s) { return a *= s; }
  friend Bivector operator-(Bivector a) { return a *= -1.0; }
};

// η_i = h(e_i, e_i) of the unit frame, in the case's frame order.
std::array<int, 4> frame_signature(SurfaceCase c);

// Matrix of the star on component vectors in the fixed pair order.
Eigen::Matrix<double, 6, 6> hodge_matrix(SurfaceCase c);
Bivector hodge_star(const Bivector& b, SurfaceCase c);

// Eigenvalue of ∗ on the plus family: 1 (real cases) or i (Lorentzian).
Complex star_eigenvalue(SurfaceCase c);

struct SelfDualSplit {
  Bivector plus;
  Bivector minus;
};
SelfDualSplit selfdual_split(const Bivector& b, SurfaceCase c);

// Complex-bilinear extension of the induced metric on 2-vectors.
Complex bivector_inner(const Bivector& a, const Bivector& b, SurfaceCase c);

struct ThetaBasis {
  SurfaceCase surface_case{};
  // Columns e1..e4 of the unit frame in the case's order (empty for the abstract basis).
  Eigen::MatrixXd frame;
  std::array<Bivector, 3> plus;   // Θ_{+,k} or Θ_k
  std::array<Bivector, 3> minus;  // Θ_{-,k} or conj(Θ_k)

  // Ambient antisymmetric tensor of a frame-relative bivector (requires frame).
  Eigen::MatrixXcd ambient(const Bivector& b) const;
};

// Coefficients only, relative to an abstract oriented frame of the case.
ThetaBasis theta_basis(SurfaceCase c);

// frame: ambient_dim x 4 matrix with columns e1..e4 in the case's frame order.
ThetaBasis theta_basis(const Eigen::MatrixXd& frame, const AmbientSignature& sig,
                       SurfaceCase c, double tol = 1e-9);

}  // namespace spaceform
