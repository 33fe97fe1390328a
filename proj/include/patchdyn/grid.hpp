#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "patchdyn/config.hpp"

namespace patchdyn {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = Vector<double>;

/// Macro nodes x_j = domain_lo + j*delta_x, j = 0..N.
template <typename Scalar = double>
Vector<Scalar> macro_nodes(const ValidatedConfig& cfg) {
  Vector<Scalar> x(cfg.n_macro() + 1);
  for (int j = 0; j <= cfg.n_macro(); ++j) x[j] = static_cast<Scalar>(cfg.node(j));
  return x;
}

/// Coarse state U_j(t) on the macro nodes. Entries 0 and N hold the pinned
/// Dirichlet values.
template <typename Scalar>
struct CoarseField {
  double time = 0.0;
  Vector<Scalar> values;
  bool diverged = false;

  Eigen::Index size() const { return values.size(); }
  Eigen::Index last() const { return values.size() - 1; }

  bool all_finite() const { return values.allFinite(); }
};

/// Micro samples inside one tooth [x_j - h/2, x_j + h/2] with their frozen
/// Neumann slopes.
template <typename Scalar>
struct PatchState {
  int center_index = 0;
  Vector<Scalar> micro_values;
  Scalar slope_left = 0;
  Scalar slope_right = 0;
  double time = 0.0;
  bool diverged = false;

  Eigen::Index intervals() const { return micro_values.size() - 1; }
};

template <typename Scalar>
void pin_boundaries(CoarseField<Scalar>& field, const ValidatedConfig& cfg) {
  field.values[0] = static_cast<Scalar>(cfg.boundary_left());
  field.values[field.last()] = static_cast<Scalar>(cfg.boundary_right());
}

/// Samples f at the macro nodes, then pins the boundary entries.
template <typename Scalar = double>
CoarseField<Scalar> sample_field(const ValidatedConfig& cfg,
                                 const std::function<double(double)>& f, double time = 0.0) {
  CoarseField<Scalar> field;
  field.time = time;
  field.values.resize(cfg.n_macro() + 1);
  for (int j = 0; j <= cfg.n_macro(); ++j) field.values[j] = static_cast<Scalar>(f(cfg.node(j)));
  pin_boundaries(field, cfg);
  return field;
}

/// Field whose interior entries are the exact tooth averages of f, given its
/// antiderivative.
template <typename Scalar = double>
CoarseField<Scalar> box_average_field(const ValidatedConfig& cfg,
                                      const std::function<double(double)>& antiderivative,
                                      double time = 0.0) {
  CoarseField<Scalar> field;
  field.time = time;
  field.values.resize(cfg.n_macro() + 1);
  const double half = 0.5 * cfg.patch_width();
  for (int j = 0; j <= cfg.n_macro(); ++j) {
    const double x = cfg.node(j);
    field.values[j] =
        static_cast<Scalar>((antiderivative(x + half) - antiderivative(x - half)) / cfg.patch_width());
  }
  pin_boundaries(field, cfg);
  return field;
}

/// Marks the field diverged if any entry is non-finite or exceeds `threshold`.
template <typename Scalar>
bool check_divergence(CoarseField<Scalar>& field, double threshold) {
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    const auto v = field.values[i];
    if (!std::isfinite(static_cast<double>(v)) || std::abs(static_cast<double>(v)) > threshold) {
      field.diverged = true;
      break;
    }
  }
  return field.diverged;
}

}  // namespace patchdyn
