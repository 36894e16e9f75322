#include "kinnet/velocity_grid.hpp"

#include <stdexcept>
#include <string>

namespace kinnet {

VelocityGrid::VelocityGrid(int cells) : n_(cells), dv_(2.0 / cells) {
  if (cells <= 0 || cells % 2 != 0) {
    throw std::invalid_argument("velocity grid needs an even positive cell count, got " +
                                std::to_string(cells));
  }
  centers_.resize(static_cast<std::size_t>(n_));
  const int half = n_ / 2;
  for (int k = 0; k < half; ++k) {
    // Build the positive half and reflect so v(mirror(k)) == -v(k) bitwise.
    const double c = (k + 0.5) * dv_;
    centers_[static_cast<std::size_t>(half + k)] = c;
    centers_[static_cast<std::size_t>(half - 1 - k)] = -c;
  }
  s2_ = 0.0;
  for (int k = 0; k < n_; ++k) s2_ += centers_[static_cast<std::size_t>(k)] * centers_[static_cast<std::size_t>(k)] * dv_;
}

std::pair<double, double> VelocityGrid::moments(std::span<const double> f) const {
  double m0 = 0.0, m1 = 0.0;
  for (int k = 0; k < n_; ++k) {
    m0 += f[static_cast<std::size_t>(k)];
    m1 += centers_[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)];
  }
  return {m0 * dv_, m1 * dv_};
}

std::pair<double, double> VelocityGrid::half_moments_plus(std::span<const double> f) const {
  double m0 = 0.0, m1 = 0.0;
  for (int k = n_ / 2; k < n_; ++k) {
    m0 += f[static_cast<std::size_t>(k)];
    m1 += centers_[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)];
  }
  return {m0 * dv_, m1 * dv_};
}

std::pair<double, double> VelocityGrid::half_moments_minus(std::span<const double> f) const {
  double m0 = 0.0, m1 = 0.0;
  for (int k = 0; k < n_ / 2; ++k) {
    m0 += f[static_cast<std::size_t>(k)];
    m1 += centers_[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(k)];
  }
  return {m0 * dv_, m1 * dv_};
}

}  // namespace kinnet
