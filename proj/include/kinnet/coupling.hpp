#pragma once

#include <span>
#include <vector>

#include "kinnet/topology.hpp"

namespace kinnet {

/// Result of a node solve in the local (all-outgoing) frame: asymptotic
/// states per attached edge, the outgoing Riemann invariant r2 = q + a rho,
/// and for half-moment variants the layer amplitudes.
struct NodeSolve {
  std::vector<double> rho;
  std::vector<double> q;
  std::vector<double> r2;
  std::vector<double> gamma;  // empty unless the variant carries a layer
  double residual = 0.0;      // norm of A x - b of the assembled system
};

/// Coefficient K of the invariant rho + K q shared by all edges of a uniform
/// node of degree n. EqualDensity returns 0.
double invariant_coefficient(CouplingVariant variant, VelocityModel model, int n, double a);

/// Closed-form solve of rho_i + K q_i = m, sum q_i = 0, q_i - a rho_i = r1_i.
NodeSolve solve_node_invariant(double K, double a, std::span<const double> r1);

/// General-matrix node solves (2n x 2n, or 3n x 3n for half-moment),
/// assembled from the half-space conditions; dense least-squares solve with
/// the residual reported. Throws if the residual exceeds 1e-10 (inconsistent
/// coupling matrix).
NodeSolve solve_node_maxwell_general(std::span<const double> C, double a,
                                     std::span<const double> r1, VelocityModel model);
NodeSolve solve_node_fullmoment_general(std::span<const double> C, double a,
                                        std::span<const double> r1, VelocityModel model);
NodeSolve solve_node_halfmoment_general(std::span<const double> C, double a,
                                        std::span<const double> r1, VelocityModel model);

/// Node solver with the system assembled and factorized once; solve() per
/// incoming r1 vector is a back-substitution. EqualDensity and uniform-matrix
/// couplings take the closed-form path.
class NodeSystem {
 public:
  NodeSystem(CouplingKind kind, std::span<const double> C, int n, double a);
  ~NodeSystem();
  NodeSystem(NodeSystem&&) noexcept;
  NodeSystem& operator=(NodeSystem&&) noexcept;
  NodeSystem(const NodeSystem&) = delete;
  NodeSystem& operator=(const NodeSystem&) = delete;

  NodeSolve solve(std::span<const double> r1) const;
  int degree() const { return n_; }

 private:
  struct Impl;
  int n_;
  double a_;
  double closed_form_k_ = 0.0;
  bool closed_form_ = false;
  std::unique_ptr<Impl> impl_;
};

bool is_uniform_matrix(std::span<const double> C, int n, double tol = 1e-14);

}  // namespace kinnet
