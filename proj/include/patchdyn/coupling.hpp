#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "patchdyn/config.hpp"
#include "patchdyn/grid.hpp"

namespace patchdyn {

/// Offsets i = -eta/2..eta/2 around node j, and where those nodes sit.
struct LagrangeStencil {
  int center_index = 0;
  std::vector<int> offsets;
  std::vector<double> node_positions;
};

LagrangeStencil make_stencil(const ValidatedConfig& cfg, int j);

/// Sparse linear functional over the coarse values: sum of weight * U[index].
struct NodeWeights {
  std::vector<std::pair<int, double>> terms;

  template <typename Scalar>
  Scalar apply(const Vector<Scalar>& values) const {
    Scalar acc = 0;
    for (const auto& [index, weight] : terms) acc += static_cast<Scalar>(weight) * values[index];
    return acc;
  }
};

namespace detail {

// Folds a symmetric stencil around node j onto real indices 0..N. Nodes past
// a domain end are odd reflections about the pinned boundary value,
// U_{-i} = 2 U_0 - U_i.
NodeWeights fold_onto_grid(const Eigen::VectorXd& weights, int j, int n_macro);

// Row r holds the tooth average (or point value) of z^p, z = (x - x_j)/dx,
// over the tooth at offset r - half.
Eigen::MatrixXd moment_matrix(int degree, double half_width_scaled, Interpolation mode);

// Weights w with sum_i w_i (i dx)^m / m! = [m == order], m = 0..2*half.
Eigen::VectorXd central_difference_weights(int order, int half, double dx);

}  // namespace detail

/// Precomputed macro-to-micro transfer for one configuration: patch edge
/// slopes from the inter-tooth polynomial, Taylor lifting, and Simpson
/// restriction.
template <typename Scalar>
class Coupling {
 public:
  explicit Coupling(const ValidatedConfig& cfg) : cfg_(cfg) {
    const int eta = cfg.poly_degree();
    const double dx = cfg.delta_x();
    const double half_scaled = 0.5 * cfg.patch_width() / dx;
    const Eigen::MatrixXd moments = detail::moment_matrix(eta, half_scaled, cfg.interpolation());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(moments);
    if (!lu.isInvertible()) throw std::runtime_error("SingularSystem: degenerate interpolation stencil");

    // d/dx of sum c_p z^p at z = -/+ half_scaled, pulled back onto the values.
    Eigen::VectorXd d_left = Eigen::VectorXd::Zero(eta + 1);
    Eigen::VectorXd d_right = Eigen::VectorXd::Zero(eta + 1);
    for (int p = 1; p <= eta; ++p) {
      d_left[p] = p * std::pow(-half_scaled, p - 1) / dx;
      d_right[p] = p * std::pow(half_scaled, p - 1) / dx;
    }
    const Eigen::VectorXd w_left = lu.transpose().solve(d_left);
    const Eigen::VectorXd w_right = lu.transpose().solve(d_right);

    const int order = cfg.macro_pde_order();
    const int fd_half = std::max(1, (order + 1) / 2);
    std::vector<Eigen::VectorXd> fd;
    for (int k = 1; k <= order; ++k) fd.push_back(detail::central_difference_weights(k, fd_half, dx));

    const int n = cfg.n_macro();
    slopes_left_.resize(n + 1);
    slopes_right_.resize(n + 1);
    derivatives_.resize(n + 1);
    for (int j = 1; j < n; ++j) {
      slopes_left_[j] = detail::fold_onto_grid(w_left, j, n);
      slopes_right_[j] = detail::fold_onto_grid(w_right, j, n);
      for (const auto& w : fd) derivatives_[j].push_back(detail::fold_onto_grid(w, j, n));
    }
  }

  const ValidatedConfig& config() const { return cfg_; }

  /// Derivatives (s-, s+) of the inter-tooth polynomial at x_j -/+ h/2.
  std::pair<Scalar, Scalar> boundary_slopes(const CoarseField<Scalar>& field, int j) const {
    check_interior(j);
    return {slopes_left_[j].apply(field.values), slopes_right_[j].apply(field.values)};
  }

  /// Finite-difference estimates D^1..D^d at x_j.
  std::vector<Scalar> derivatives(const CoarseField<Scalar>& field, int j) const {
    check_interior(j);
    std::vector<Scalar> out;
    for (const auto& w : derivatives_[j]) out.push_back(w.apply(field.values));
    return out;
  }

  /// Taylor polynomial of degree d inside tooth j whose tooth average is U_j,
  /// with the edge slopes already attached.
  PatchState<Scalar> lift(const CoarseField<Scalar>& field, int j) const {
    const std::vector<Scalar> d = derivatives(field, j);
    const Scalar h = static_cast<Scalar>(cfg_.patch_width());

    // Tooth average of (x - x_j)^k / k! is (h/2)^k / (k+1)! for even k, 0 for odd.
    Scalar constant = field.values[j];
    Scalar power = 1;
    Scalar factorial = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      power *= h / 2;
      factorial *= static_cast<Scalar>(k + 1);
      if (k % 2 == 0) constant -= d[k - 1] * power / factorial;
    }

    PatchState<Scalar> patch;
    patch.center_index = j;
    patch.time = field.time;
    patch.diverged = field.diverged;
    const int m = cfg_.micro_intervals();
    const Scalar dx = static_cast<Scalar>(cfg_.micro_dx());
    patch.micro_values.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
      const Scalar xi = -h / 2 + static_cast<Scalar>(i) * dx;
      // Horner on sum_k D^k xi^k / k!
      Scalar acc = 0;
      for (std::size_t k = d.size(); k >= 1; --k) acc = (acc + d[k - 1]) * xi / static_cast<Scalar>(k);
      patch.micro_values[i] = constant + acc;
    }
    std::tie(patch.slope_left, patch.slope_right) = boundary_slopes(field, j);
    return patch;
  }

 private:
  void check_interior(int j) const {
    if (j < 1 || j >= cfg_.n_macro()) throw std::out_of_range("patch index must be interior");
  }

  ValidatedConfig cfg_;
  std::vector<NodeWeights> slopes_left_;
  std::vector<NodeWeights> slopes_right_;
  std::vector<std::vector<NodeWeights>> derivatives_;
};

/// Composite Simpson 1/3 average over M+1 equally spaced samples (M even).
template <typename Scalar>
Scalar simpson_average(const Vector<Scalar>& samples) {
  const Eigen::Index m = samples.size() - 1;
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("Simpson needs an even interval count");
  Scalar odd = 0;
  Scalar even = 0;
  for (Eigen::Index i = 1; i < m; i += 2) odd += samples[i];
  for (Eigen::Index i = 2; i < m; i += 2) even += samples[i];
  return (samples[0] + samples[m] + 4 * odd + 2 * even) / (3 * static_cast<Scalar>(m));
}

/// Trapezoid average; diagnostics only.
template <typename Scalar>
Scalar trapezoid_average(const Vector<Scalar>& samples) {
  const Eigen::Index m = samples.size() - 1;
  if (m < 1) throw std::invalid_argument("trapezoid needs at least one interval");
  const Scalar inner = samples.segment(1, m - 1).sum();
  return (inner + (samples[0] + samples[m]) / 2) / static_cast<Scalar>(m);
}

/// (1/h) times the integral of the micro state over the tooth.
template <typename Scalar>
Scalar restrict_average(const PatchState<Scalar>& patch) {
  return simpson_average(patch.micro_values);
}

template <typename Scalar>
std::pair<Scalar, Scalar> boundary_slopes(const CoarseField<Scalar>& field, int j,
                                          const ValidatedConfig& cfg) {
  return Coupling<Scalar>(cfg).boundary_slopes(field, j);
}

template <typename Scalar>
PatchState<Scalar> lift(const CoarseField<Scalar>& field, int j, const ValidatedConfig& cfg) {
  return Coupling<Scalar>(cfg).lift(field, j);
}

}  // namespace patchdyn
