#include "patchdyn/coupling.hpp"

#include <cmath>
#include <map>

namespace patchdyn {

LagrangeStencil make_stencil(const ValidatedConfig& cfg, int j) {
  LagrangeStencil s;
  s.center_index = j;
  const int half = cfg.poly_degree() / 2;
  for (int i = -half; i <= half; ++i) {
    s.offsets.push_back(i);
    s.node_positions.push_back(cfg.domain_lo() + (j + i) * cfg.delta_x());
  }
  return s;
}

namespace detail {

NodeWeights fold_onto_grid(const Eigen::VectorXd& weights, int j, int n_macro) {
  const int half = static_cast<int>(weights.size() / 2);
  std::map<int, double> acc;
  for (int i = -half; i <= half; ++i) {
    const double w = weights[i + half];
    int index = j + i;
    if (index < 0) {
      acc[0] += 2 * w;
      index = -index;
      acc[index] -= w;
    } else if (index > n_macro) {
      acc[n_macro] += 2 * w;
      index = 2 * n_macro - index;
      acc[index] -= w;
    } else {
      acc[index] += w;
    }
  }
  NodeWeights out;
  for (const auto& [index, w] : acc) out.terms.emplace_back(index, w);
  return out;
}

Eigen::MatrixXd moment_matrix(int degree, double half_width_scaled, Interpolation mode) {
  const int half = degree / 2;
  Eigen::MatrixXd a(degree + 1, degree + 1);
  for (int r = 0; r <= degree; ++r) {
    const double z = r - half;
    for (int p = 0; p <= degree; ++p) {
      if (mode == Interpolation::PointValue) {
        a(r, p) = std::pow(z, p);
      } else {
        const double hi = std::pow(z + half_width_scaled, p + 1);
        const double lo = std::pow(z - half_width_scaled, p + 1);
        a(r, p) = (hi - lo) / ((p + 1) * 2 * half_width_scaled);
      }
    }
  }
  return a;
}

Eigen::VectorXd central_difference_weights(int order, int half, double dx) {
  const int n = 2 * half + 1;
  // Row m: sum_i w_i (i dx)^m / m!
  Eigen::MatrixXd a(n, n);
  for (int m = 0; m < n; ++m) {
    double factorial = 1;
    for (int q = 2; q <= m; ++q) factorial *= q;
    for (int c = 0; c < n; ++c) a(m, c) = std::pow((c - half) * dx, m) / factorial;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[order] = 1.0;
  return a.fullPivLu().solve(rhs);
}

}  // namespace detail
}  // namespace patchdyn
