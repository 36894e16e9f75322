#pragma once

#include <span>
#include <utility>
#include <vector>

namespace kinnet {

/// Uniform midpoint grid on the bounded velocity interval [-1, 1].
///
/// The grid is symmetric: mirror(k) indexes the cell with center -v(k),
/// exactly. Discrete moments use the midpoint rule with weight dv().
class VelocityGrid {
 public:
  explicit VelocityGrid(int cells);

  int size() const { return n_; }
  double dv() const { return dv_; }
  double v(int k) const { return centers_[static_cast<std::size_t>(k)]; }
  int mirror(int k) const { return n_ - 1 - k; }
  const std::vector<double>& centers() const { return centers_; }

  /// Discrete second moment sum v_k^2 dv (-> 2/3 as the grid refines).
  double second_moment() const { return s2_; }

  /// Zeroth and first discrete moments of a velocity slice.
  std::pair<double, double> moments(std::span<const double> f) const;

  /// Half-range mass and flux: <f>_+ and <v f>_+ over cells with v > 0.
  std::pair<double, double> half_moments_plus(std::span<const double> f) const;
  /// <f>_- and <v f>_- over cells with v < 0.
  std::pair<double, double> half_moments_minus(std::span<const double> f) const;

  /// Discrete equilibrium with exact moment reproduction: the first-moment
  /// coefficient uses 1/second_moment() so that moments(equilibrium(rho, q))
  /// returns (rho, q) to rounding error on any grid size.
  double equilibrium(double rho, double q, int k) const {
    return 0.5 * rho + centers_[static_cast<std::size_t>(k)] * q / s2_;
  }

 private:
  int n_;
  double dv_;
  double s2_;
  std::vector<double> centers_;
};

}  // namespace kinnet
