#include "kinnet/coupling.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace kinnet {

namespace {

constexpr double kResidualTol = 1e-10;

double sqrt_two_pi() { return std::sqrt(2.0 * std::numbers::pi); }

/// Half-flux weight of the equilibrium: <v E>_+ = alpha rho + q/2 with
/// alpha = 1/4 (bounded) or a/sqrt(2 pi) (unbounded).
double maxwell_alpha(VelocityModel model, double a) {
  return model == VelocityModel::Bounded ? 0.25 : a / sqrt_two_pi();
}

double fullmoment_weight(VelocityModel model, double a) {
  return model == VelocityModel::Bounded ? 1.5 : std::numbers::sqrt2 / (a * std::sqrt(std::numbers::pi));
}

NodeSolve finish_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int n,
                               double a, bool with_gamma) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  Eigen::VectorXd x = cod.solve(b);
  const double residual = (A * x - b).norm();
  if (residual > kResidualTol * std::max(1.0, b.norm()))
    throw std::runtime_error("node solve residual " + std::to_string(residual) +
                             " exceeds tolerance; coupling matrix is inconsistent");
  NodeSolve out;
  out.residual = residual;
  out.rho.resize(static_cast<std::size_t>(n));
  out.q.resize(static_cast<std::size_t>(n));
  out.r2.resize(static_cast<std::size_t>(n));
  if (with_gamma) out.gamma.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.rho[static_cast<std::size_t>(i)] = x(i);
    out.q[static_cast<std::size_t>(i)] = x(n + i);
    out.r2[static_cast<std::size_t>(i)] = x(n + i) + a * x(i);
    if (with_gamma) out.gamma[static_cast<std::size_t>(i)] = x(2 * n + i);
  }
  return out;
}

/// Rows enforcing the invariant-style coupling w_r rho_i + w_q q_i =
/// sum_j c_ij (w_r rho_j - w_q q_j), plus the Riemann rows q_i - a rho_i = r1_i.
void assemble_two_field(Eigen::MatrixXd& A, Eigen::VectorXd& b, std::span<const double> C, int n,
                        double a, double w_r, double w_q, std::span<const double> r1) {
  A.setZero(2 * n, 2 * n);
  b.setZero(2 * n);
  for (int i = 0; i < n; ++i) {
    A(i, i) += w_r;
    A(i, n + i) += w_q;
    for (int j = 0; j < n; ++j) {
      const double c = C[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      A(i, j) -= c * w_r;
      A(i, n + j) += c * w_q;
    }
    A(n + i, i) = -a;
    A(n + i, n + i) = 1.0;
    b(n + i) = r1[static_cast<std::size_t>(i)];
  }
}

struct HalfMomentRows {
  // Trace values as linear forms in (rho_inf, q_inf, gamma):
  //   q_plus(0)   = qp_r rho + qp_q q + qp_g gamma   (and mirrored q_minus)
  //   rho_plus(0) = rp_r rho + rp_q q + rp_g gamma   (and mirrored rho_minus)
  double qp_r, qp_q, qp_g;
  double qm_r, qm_q, qm_g;
  double rp_r, rp_q, rp_g;
  double rm_r, rm_q, rm_g;
};

HalfMomentRows halfmoment_rows(VelocityModel model, double a) {
  HalfMomentRows r{};
  if (model == VelocityModel::Bounded) {
    r.qp_r = 0.25, r.qp_q = 0.5, r.qp_g = a / 4.0;
    r.qm_r = -0.25, r.qm_q = 0.5, r.qm_g = -a / 4.0;
    r.rp_r = 0.5, r.rp_q = 0.75, r.rp_g = (3.0 * a + 1.0) / 2.0;
    r.rm_r = 0.5, r.rm_q = -0.75, r.rm_g = (3.0 * a - 1.0) / 2.0;
  } else {
    const double s = sqrt_two_pi();
    const double lambda = (std::numbers::pi - 2.0) / (a * (std::numbers::pi - 4.0));
    const double mu = s / (a * (std::numbers::pi - 4.0));
    r.qp_r = a / s, r.qp_q = 0.5, r.qp_g = -0.5;
    r.qm_r = -a / s, r.qm_q = 0.5, r.qm_g = 0.5;
    r.rp_r = 0.5, r.rp_q = 1.0 / (s * a), r.rp_g = 0.5 * (lambda + mu);
    r.rm_r = 0.5, r.rm_q = -1.0 / (s * a), r.rm_g = 0.5 * (-lambda + mu);
  }
  return r;
}

NodeSolve solve_halfmoment(std::span<const double> C, double a, std::span<const double> r1,
                           VelocityModel model) {
  const int n = static_cast<int>(r1.size());
  const HalfMomentRows w = halfmoment_rows(model, a);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * n);
  for (int i = 0; i < n; ++i) {
    // q_plus_i(0) = -sum_j c_ij q_minus_j(0)
    A(i, i) += w.qp_r;
    A(i, n + i) += w.qp_q;
    A(i, 2 * n + i) += w.qp_g;
    // rho_plus_i(0) = sum_j c_ij rho_minus_j(0)
    A(n + i, i) += w.rp_r;
    A(n + i, n + i) += w.rp_q;
    A(n + i, 2 * n + i) += w.rp_g;
    for (int j = 0; j < n; ++j) {
      const double c = C[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      A(i, j) += c * w.qm_r;
      A(i, n + j) += c * w.qm_q;
      A(i, 2 * n + j) += c * w.qm_g;
      A(n + i, j) -= c * w.rm_r;
      A(n + i, n + j) -= c * w.rm_q;
      A(n + i, 2 * n + j) -= c * w.rm_g;
    }
    A(2 * n + i, i) = -a;
    A(2 * n + i, n + i) = 1.0;
    b(2 * n + i) = r1[static_cast<std::size_t>(i)];
  }
  return finish_least_squares(A, b, n, a, /*with_gamma=*/true);
}

}  // namespace

double invariant_coefficient(CouplingVariant variant, VelocityModel model, int n, double a) {
  if (n < 2) throw std::invalid_argument("invariant coefficient needs n >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("invariant coefficient needs a > 0");
  const double m = static_cast<double>(n - 2) / n;
  switch (variant) {
    case CouplingVariant::EqualDensity:
      return 0.0;
    case CouplingVariant::FullMoment:
      return fullmoment_weight(model, a) * m;
    case CouplingVariant::Maxwell:
      return model == VelocityModel::Bounded ? 2.0 * m
                                             : std::sqrt(std::numbers::pi / 2.0) / a * m;
    case CouplingVariant::HalfMoment:
      if (model == VelocityModel::Bounded) return m * (9.0 * a + 4.0 * m) / (4.0 * a + 2.0 * m);
      return (m / a) * (4.0 + m * sqrt_two_pi()) / (sqrt_two_pi() + 2.0 * m);
    case CouplingVariant::Kinetic:
      break;
  }
  throw std::invalid_argument("no invariant coefficient for the kinetic coupling condition");
}

NodeSolve solve_node_invariant(double K, double a, std::span<const double> r1) {
  const int n = static_cast<int>(r1.size());
  if (n < 1) throw std::invalid_argument("node solve needs at least one edge");
  const double denom = 1.0 + K * a;
  if (std::abs(denom) < 1e-14) throw std::runtime_error("node solve singular: 1 + K a = 0");
  double sum = 0.0;
  for (double r : r1) sum += r;
  const double m = -sum / (n * a);
  NodeSolve out;
  out.rho.resize(static_cast<std::size_t>(n));
  out.q.resize(static_cast<std::size_t>(n));
  out.r2.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double qi = (m * a + r1[static_cast<std::size_t>(i)]) / denom;
    const double ri = (qi - r1[static_cast<std::size_t>(i)]) / a;
    out.q[static_cast<std::size_t>(i)] = qi;
    out.rho[static_cast<std::size_t>(i)] = ri;
    out.r2[static_cast<std::size_t>(i)] = qi + a * ri;
  }
  return out;
}

NodeSolve solve_node_maxwell_general(std::span<const double> C, double a,
                                     std::span<const double> r1, VelocityModel model) {
  const int n = static_cast<int>(r1.size());
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  assemble_two_field(A, b, C, n, a, maxwell_alpha(model, a), 0.5, r1);
  return finish_least_squares(A, b, n, a, false);
}

NodeSolve solve_node_fullmoment_general(std::span<const double> C, double a,
                                        std::span<const double> r1, VelocityModel model) {
  const int n = static_cast<int>(r1.size());
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  assemble_two_field(A, b, C, n, a, 1.0, fullmoment_weight(model, a), r1);
  return finish_least_squares(A, b, n, a, false);
}

NodeSolve solve_node_halfmoment_general(std::span<const double> C, double a,
                                        std::span<const double> r1, VelocityModel model) {
  return solve_halfmoment(C, a, r1, model);
}

bool is_uniform_matrix(std::span<const double> C, int n, double tol) {
  if (n < 2) return false;
  const double off = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double expect = i == j ? 0.0 : off;
      if (std::abs(C[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] - expect) > tol)
        return false;
    }
  return true;
}

struct NodeSystem::Impl {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  Eigen::MatrixXd A;
  int unknowns = 0;
  bool with_gamma = false;
};

NodeSystem::NodeSystem(CouplingKind kind, std::span<const double> C, int n, double a)
    : n_(n), a_(a) {
  if (kind.variant == CouplingVariant::Kinetic)
    throw std::invalid_argument("kinetic coupling has no macroscopic node system");
  if (kind.variant == CouplingVariant::EqualDensity ||
      (is_uniform_matrix(C, n) && kind.variant != CouplingVariant::Kinetic)) {
    closed_form_ = true;
    closed_form_k_ = invariant_coefficient(kind.variant, kind.velocity_model, n, a);
    return;
  }
  impl_ = std::make_unique<Impl>();
  Eigen::VectorXd b;
  const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  if (kind.variant == CouplingVariant::HalfMoment) {
    impl_->with_gamma = true;
    // Assemble once with zero right-hand side to capture the matrix.
    const HalfMomentRows w = halfmoment_rows(kind.velocity_model, a);
    (void)w;
    NodeSolve probe = solve_halfmoment(C, a, zeros, kind.velocity_model);
    (void)probe;
  }
  // Rebuild the matrix explicitly for factorization.
  Eigen::MatrixXd A;
  if (kind.variant == CouplingVariant::HalfMoment) {
    const HalfMomentRows w = halfmoment_rows(kind.velocity_model, a);
    A = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
      A(i, i) += w.qp_r;
      A(i, n + i) += w.qp_q;
      A(i, 2 * n + i) += w.qp_g;
      A(n + i, i) += w.rp_r;
      A(n + i, n + i) += w.rp_q;
      A(n + i, 2 * n + i) += w.rp_g;
      for (int j = 0; j < n; ++j) {
        const double c = C[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
        A(i, j) += c * w.qm_r;
        A(i, n + j) += c * w.qm_q;
        A(i, 2 * n + j) += c * w.qm_g;
        A(n + i, j) -= c * w.rm_r;
        A(n + i, n + j) -= c * w.rm_q;
        A(n + i, 2 * n + j) -= c * w.rm_g;
      }
      A(2 * n + i, i) = -a;
      A(2 * n + i, n + i) = 1.0;
    }
  } else {
    const double w_r = kind.variant == CouplingVariant::Maxwell
                           ? maxwell_alpha(kind.velocity_model, a)
                           : 1.0;
    const double w_q = kind.variant == CouplingVariant::Maxwell
                           ? 0.5
                           : fullmoment_weight(kind.velocity_model, a);
    Eigen::VectorXd dummy;
    assemble_two_field(A, dummy, C, n, a, w_r, w_q, zeros);
  }
  impl_->A = A;
  impl_->unknowns = static_cast<int>(A.cols());
  impl_->cod.compute(A);
}

NodeSystem::~NodeSystem() = default;
NodeSystem::NodeSystem(NodeSystem&&) noexcept = default;
NodeSystem& NodeSystem::operator=(NodeSystem&&) noexcept = default;

NodeSolve NodeSystem::solve(std::span<const double> r1) const {
  if (static_cast<int>(r1.size()) != n_)
    throw std::invalid_argument("node solve expects one r1 value per attached edge");
  if (closed_form_) return solve_node_invariant(closed_form_k_, a_, r1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(impl_->unknowns);
  const int block = impl_->with_gamma ? 2 * n_ : n_;
  for (int i = 0; i < n_; ++i) b(block + i) = r1[static_cast<std::size_t>(i)];
  Eigen::VectorXd x = impl_->cod.solve(b);
  NodeSolve out;
  out.residual = (impl_->A * x - b).norm();
  out.rho.resize(static_cast<std::size_t>(n_));
  out.q.resize(static_cast<std::size_t>(n_));
  out.r2.resize(static_cast<std::size_t>(n_));
  if (impl_->with_gamma) out.gamma.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out.rho[static_cast<std::size_t>(i)] = x(i);
    out.q[static_cast<std::size_t>(i)] = x(n_ + i);
    out.r2[static_cast<std::size_t>(i)] = x(n_ + i) + a_ * x(i);
    if (impl_->with_gamma) out.gamma[static_cast<std::size_t>(i)] = x(2 * n_ + i);
  }
  return out;
}

}  // namespace kinnet
