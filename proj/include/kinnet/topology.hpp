#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinnet/velocity_grid.hpp"

namespace kinnet {

enum class EdgeEnd { Start, End };

enum class CouplingVariant { Kinetic, EqualDensity, FullMoment, Maxwell, HalfMoment };
enum class VelocityModel { Bounded, Unbounded };

struct CouplingKind {
  CouplingVariant variant = CouplingVariant::Kinetic;
  VelocityModel velocity_model = VelocityModel::Bounded;
};

std::string to_string(CouplingVariant v);
std::string to_string(VelocityModel m);

/// One arc of the network, parametrized by [0, length]; x=0 sits at
/// from_node, x=length at to_node.
struct Edge {
  int id = 0;
  double length = 1.0;
  int from_node = 0;
  int to_node = 0;
  int cells = 2;

  double dx() const { return length / cells; }
};

struct NodePort {
  int edge_id = 0;
  EdgeEnd end = EdgeEnd::Start;
};

/// Interior junction. The redistribution matrix is row-major n x n with
/// column sums equal to one (mass conservation) and nonnegative entries.
struct Node {
  int id = 0;
  std::vector<NodePort> attached;
  CouplingKind condition;
  std::vector<double> matrix;

  int degree() const { return static_cast<int>(attached.size()); }
  double coupling(int i, int j) const {
    return matrix[static_cast<std::size_t>(i) * attached.size() + static_cast<std::size_t>(j)];
  }
};

/// Zero diagonal, 1/(n-1) off-diagonal; columns sum to one.
std::vector<double> uniform_coupling_matrix(int n);

struct MacroState {
  double rho = 0.0;
  double q = 0.0;
};

struct HalfMomentState {
  double rho_plus = 0.0;
  double q_plus = 0.0;
  double rho_minus = 0.0;
  double q_minus = 0.0;

  double rho() const { return rho_plus + rho_minus; }
  double q() const { return q_plus + q_minus; }
  double rho_hat() const { return rho_plus - rho_minus; }
  double q_hat() const { return q_plus - q_minus; }
};

HalfMomentState from_even_odd(double rho, double q, double rho_hat, double q_hat);

// Mirror maps x -> -x, v -> -v. Each is an involution; applying it to the
// trace of an edge attached at its x=b end expresses the trace in the local
// frame of the node (edge pointing away), and applying it again restores the
// edge frame.
MacroState mirror(const MacroState& s);
HalfMomentState mirror(const HalfMomentState& s);
void mirror(const VelocityGrid& grid, std::span<const double> in, std::span<double> out);

class NetworkTopology {
 public:
  std::vector<Edge> edges;
  std::vector<Node> nodes;          // interior nodes only
  std::vector<int> exterior_nodes;  // declared exterior boundary node ids

  const Edge& edge(int id) const;
  const Node* find_node(int id) const;
  bool is_exterior(int node_id) const;

  /// Which end of the edge touches the given node; throws if not attached.
  EdgeEnd end_at(const Edge& e, int node_id) const;

  /// All (edge, end) pairs whose node is exterior.
  std::vector<std::pair<int, EdgeEnd>> exterior_ends() const;

  /// Checks all structural invariants (matrix column sums, nonnegativity,
  /// degree rules, dangling ends). Throws std::runtime_error with the
  /// offending entity named.
  void validate() const;
};

/// Orient a trace into the local frame of the node (identity for edges
/// attached at their start, mirror map otherwise).
template <typename Trace>
Trace to_node_frame(const NodePort& port, const Trace& trace) {
  return port.end == EdgeEnd::End ? mirror(trace) : trace;
}

/// Inverse of to_node_frame (the mirror map is an involution).
template <typename Trace>
Trace to_edge_frame(const NodePort& port, const Trace& trace) {
  return port.end == EdgeEnd::End ? mirror(trace) : trace;
}

}  // namespace kinnet
