#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spaceform::lie {

// P_{k,l}: l = 1 rotation by θ, l = 2 boost by t, on the frame (+,+,+,−).
struct GeneratorSpec {
  int k = 1;
  int l = 1;
  double param = 0.0;
};

using Word = std::vector<GeneratorSpec>;

Eigen::Matrix4d lorentz_generator(const GeneratorSpec& g);

// Tabulated image Q_{k,l} of P_{k,l} in the basis Θ1, Θ2, Θ3.
Eigen::Matrix3cd generator_image(const GeneratorSpec& g);

// Product in word order (left to right); identity for the empty word.
Eigen::Matrix4d word_product(const Word& w);

// Matrix of e_i∧e_j ↦ Pe_i∧Pe_j on span(Θ1,Θ2,Θ3), obtained by expanding the
// image in the full basis (Θ, conj Θ). Throws NonLorentz if P does not preserve
// diag(1,1,1,−1) within tol.
Eigen::Matrix3cd induced_action(const Eigen::Matrix4d& P, double tol = 1e-10);

// Component of the image that leaks into span(conj Θ); zero for Lorentz P.
double induced_leakage(const Eigen::Matrix4d& P);

// Evaluated in extended precision (generators rebuilt from their parameters).
struct WordCheck {
  double homomorphism = 0.0;   // ‖Φ(P1⋯Pn) − Φ(P1)⋯Φ(Pn)‖max
  double orthogonality = 0.0;  // ‖QᵀQ − I‖max
  double determinant = 0.0;    // |det Q − 1|
  double max() const;
};

struct PhiReport {
  std::vector<WordCheck> words;
  double max_residual = 0.0;
};

PhiReport phi_check(const std::vector<Word>& words);

}  // namespace spaceform::lie
