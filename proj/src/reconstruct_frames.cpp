#include <cmath>

#include "spaceform/errors.hpp"
#include "spaceform/integrability.hpp"
#include "spaceform/jets.hpp"
#include "spaceform/parallel.hpp"
#include "spaceform/reconstruct.hpp"

namespace spaceform {

namespace {

using Frame = Eigen::MatrixXd;

struct CoefficientGrid {
  const Grid* grid;
  SurfaceCase surface_case;
  std::vector<FrameCoefficients> values;
  std::vector<double> lambda;

  const FrameCoefficients& at(std::size_t i, std::size_t j) const {
    return values[grid->index(i, j)];
  }
  Matrix5d S(const FrameCoefficients& c) const { return connection_matrices(surface_case, c).S; }
  Matrix5d T(const FrameCoefficients& c) const { return connection_matrices(surface_case, c).T; }

  // Coefficients at (u_i + du/2, v_j) and (u_i, v_j + dv/2).
  FrameCoefficients mid_u(std::size_t i, std::size_t j) const {
    return midpoint_cubic<FrameCoefficients>([&](std::size_t k) { return at(k, j); }, i,
                                             grid->nu);
  }
  FrameCoefficients mid_v(std::size_t i, std::size_t j) const {
    return midpoint_cubic<FrameCoefficients>([&](std::size_t k) { return at(i, k); }, j,
                                             grid->nv);
  }
};

CoefficientGrid coefficients(const FundamentalData& data) {
  const DataJets jets(data, DiffOrder::Fourth);
  CoefficientGrid cg{&data.grid, data.surface_case(), {}, data.lambda().values()};
  cg.values.reserve(jets.size());
  for (std::size_t k = 0; k < jets.size(); ++k) cg.values.push_back(jets.value(k));
  return cg;
}

Frame rk4(const Frame& X, const Matrix5d& A0, const Matrix5d& Am, const Matrix5d& A1, double h) {
  const Frame k1 = X * A0;
  const Frame k2 = (X + 0.5 * h * k1) * Am;
  const Frame k3 = (X + 0.5 * h * k2) * Am;
  const Frame k4 = (X + h * k3) * A1;
  return X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Frame step_u(const CoefficientGrid& cg, const Frame& X, std::size_t i, std::size_t j) {
  return rk4(X, cg.S(cg.at(i, j)), cg.S(cg.mid_u(i, j)), cg.S(cg.at(i + 1, j)), cg.grid->du);
}

Frame step_v(const CoefficientGrid& cg, const Frame& X, std::size_t i, std::size_t j) {
  return rk4(X, cg.T(cg.at(i, j)), cg.T(cg.mid_v(i, j)), cg.T(cg.at(i, j + 1)), cg.grid->dv);
}

// Expected Gram matrix of the constrained columns.
Eigen::MatrixXd expected_gram(const SpaceFormModel& model, double lambda) {
  const auto signs = tangent_normal_signs(model.surface_case);
  const int n = model.flat() ? 4 : 5;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < 4; ++a) A(a, a) = signs[a] * std::exp(2.0 * lambda);
  if (!model.flat()) A(4, 4) = *model.quadric_const;
  return A;
}

// One Newton step towards XᵀηX = A.
void project(Frame& X, const SpaceFormModel& model, double lambda) {
  const Eigen::MatrixXd A = expected_gram(model, lambda);
  const int n = static_cast<int>(A.rows());
  auto cols = X.leftCols(n);
  const Eigen::MatrixXd G = cols.transpose() * model.ambient.metric() * cols;
  const Eigen::MatrixXd corr = cols * A.inverse() * (G - A);
  cols -= 0.5 * corr;
}

void check_finite(const Frame& X, const Grid& g, std::size_t i, std::size_t j) {
  if (!X.allFinite()) throw NonFiniteState("frame integration diverged", {i, j, g.u(i), g.v(j)});
}

// u-sweep on row j0, then v-sweeps per column (or the transpose).
std::vector<Frame> sweep(const CoefficientGrid& cg, const SpaceFormModel& model,
                         const Frame& init, bool u_first, const IntegrationOptions& opt) {
  const Grid& g = *cg.grid;
  std::vector<Frame> out(g.size());
  out[g.index(0, 0)] = init;
  auto maybe_project = [&](Frame& X, std::size_t count, std::size_t i, std::size_t j) {
    if (opt.project_every > 0 && count % opt.project_every == 0)
      project(X, model, cg.lambda[g.index(i, j)]);
  };
  if (u_first) {
    for (std::size_t i = 0; i + 1 < g.nu; ++i) {
      Frame X = step_u(cg, out[g.index(i, 0)], i, 0);
      maybe_project(X, i + 1, i + 1, 0);
      check_finite(X, g, i + 1, 0);
      out[g.index(i + 1, 0)] = std::move(X);
    }
    parallel_for(g.nu, opt.threads, [&](std::size_t i) {
      for (std::size_t j = 0; j + 1 < g.nv; ++j) {
        Frame X = step_v(cg, out[g.index(i, j)], i, j);
        maybe_project(X, j + 1, i, j + 1);
        check_finite(X, g, i, j + 1);
        out[g.index(i, j + 1)] = std::move(X);
      }
    });
  } else {
    for (std::size_t j = 0; j + 1 < g.nv; ++j) {
      Frame X = step_v(cg, out[g.index(0, j)], 0, j);
      maybe_project(X, j + 1, 0, j + 1);
      check_finite(X, g, 0, j + 1);
      out[g.index(0, j + 1)] = std::move(X);
    }
    parallel_for(g.nv, opt.threads, [&](std::size_t j) {
      for (std::size_t i = 0; i + 1 < g.nu; ++i) {
        Frame X = step_u(cg, out[g.index(i, j)], i, j);
        maybe_project(X, i + 1, i + 1, j);
        check_finite(X, g, i + 1, j);
        out[g.index(i + 1, j)] = std::move(X);
      }
    });
  }
  return out;
}

double frame_scale(double lambda) { return std::max(1.0, std::exp(lambda)); }

}  // namespace

FrameIntegration integrate_frame(const FundamentalData& data, const Eigen::MatrixXd& init,
                                 const IntegrationOptions& opt) {
  data.validate();
  const Grid& g = data.grid;
  const SpaceFormModel& model = data.model;
  const auto n = static_cast<Eigen::Index>(model.ambient.dim());
  if (init.rows() != n || init.cols() != 5)
    throw InvalidInitialFrame("initial frame must be " + std::to_string(n) + " x 5");
  if (!init.allFinite()) throw InvalidInitialFrame("initial frame is not finite");
  const double lam0 = data.lambda()(0, 0);
  const double init_res = validate_frame(init, lam0, model).max_abs();
  if (init_res > opt.init_tolerance * std::max(1.0, std::exp(2.0 * lam0)))
    throw InvalidInitialFrame("initial frame violates the normalization of " +
                              std::string(case_name(model.surface_case)) + " (residual " +
                              std::to_string(init_res) + ")");

  FrameIntegration result;
  IntegrationReport& rep = result.report;
  const double h = g.h();
  rep.flag_threshold = 100.0 * h * h;
  rep.gcr_max = gcr_residuals(data, opt.threads).max_abs();
  rep.gcr_warning = rep.gcr_max > opt.gcr_tolerance.value_or(std::max(1e-8, 10.0 * h * h));

  const CoefficientGrid cg = coefficients(data);
  result.frames.grid = g;
  result.frames.model = model;
  result.frames.frames = sweep(cg, model, init, true, opt);
  const auto& frames = result.frames.frames;

  // Re-integrate the last row along u from its first node.
  const std::size_t jl = g.nv - 1;
  Frame X = frames[g.index(0, jl)];
  for (std::size_t i = 0; i + 1 < g.nu; ++i) {
    X = step_u(cg, X, i, jl);
    const double d = (X - frames[g.index(i + 1, jl)]).cwiseAbs().maxCoeff() /
                     frame_scale(cg.lambda[g.index(i + 1, jl)]);
    rep.cross_consistency = std::max(rep.cross_consistency, d);
  }
  if (opt.transposed_path) {
    const auto other = sweep(cg, model, init, false, opt);
    for (std::size_t k = 0; k < g.size(); ++k)
      rep.path_discrepancy =
          std::max(rep.path_discrepancy,
                   (other[k] - frames[k]).cwiseAbs().maxCoeff() / frame_scale(cg.lambda[k]));
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double lam = cg.lambda[k];
    rep.max_drift = std::max(rep.max_drift, validate_frame(frames[k], lam, model).max_abs() /
                                                std::max(1.0, std::exp(2.0 * lam)));
  }
  rep.integrable = rep.cross_consistency <= rep.flag_threshold &&
                   rep.path_discrepancy <= rep.flag_threshold;
  return result;
}

FundamentalData extract_fundamental(const FrameField& ff, const SpaceFormModel& model,
                                    double min_conformal) {
  const Grid& g = ff.grid;
  g.validate();
  if (ff.frames.size() != g.size()) throw DimensionMismatch("frame count does not match grid");
  const auto n = static_cast<Eigen::Index>(model.ambient.dim());
  for (const auto& X : ff.frames)
    if (X.rows() != n || X.cols() != 5)
      throw DimensionMismatch("frames must be " + std::to_string(n) + " x 5");

  // Differentiate every frame entry.
  std::vector<Frame> Xu(g.size(), Frame(n, 5)), Xv(g.size(), Frame(n, 5));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < 4; ++c) {
      Field f(g);
      for (std::size_t k = 0; k < g.size(); ++k) f[k] = ff.frames[k](r, c);
      const Field fu = diff_u(f, g, DiffOrder::Fourth);
      const Field fv = diff_v(f, g, DiffOrder::Fourth);
      for (std::size_t k = 0; k < g.size(); ++k) Xu[k](r, c) = fu[k], Xv[k](r, c) = fv[k];
    }

  FundamentalData d = FundamentalData::zeros(model, g);
  const auto& sig = model.ambient;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Frame& X = ff.frames[k];
    std::array<double, 4> norm{};
    for (int a = 0; a < 4; ++a) {
      norm[a] = pseudo_inner(X.col(a), X.col(a), sig);
      if (std::abs(norm[a]) < min_conformal)
        throw DegenerateFrame("frame column " + std::to_string(a + 1) + " is null",
                              g.location(k));
    }
    if (norm[0] < min_conformal)
      throw DegenerateFrame("h(T1,T1) is not positive", g.location(k));
    // coefficient of X_row in the derivative of X_col
    auto S = [&](int row, int col) {
      return pseudo_inner(Xu[k].col(col), X.col(row), sig) / norm[row];
    };
    auto T = [&](int row, int col) {
      return pseudo_inner(Xv[k].col(col), X.col(row), sig) / norm[row];
    };
    d.lambda()[k] = 0.5 * std::log(norm[0]);
    d.alpha(1)[k] = S(2, 0);
    d.beta(1)[k] = S(3, 0);
    d.alpha(2)[k] = S(2, 1);
    d.beta(2)[k] = S(3, 1);
    d.alpha(3)[k] = T(2, 1);
    d.beta(3)[k] = T(3, 1);
    d.mu(1)[k] = S(3, 2);
    d.mu(2)[k] = T(3, 2);
  }
  return d;
}

}  // namespace spaceform
