#include "kinnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace kinnet {

std::string to_string(CouplingVariant v) {
  switch (v) {
    case CouplingVariant::Kinetic: return "kinetic";
    case CouplingVariant::EqualDensity: return "equal_density";
    case CouplingVariant::FullMoment: return "fullmoment";
    case CouplingVariant::Maxwell: return "maxwell";
    case CouplingVariant::HalfMoment: return "halfmoment";
  }
  return "?";
}

std::string to_string(VelocityModel m) {
  return m == VelocityModel::Bounded ? "bounded" : "unbounded";
}

std::vector<double> uniform_coupling_matrix(int n) {
  if (n < 2) throw std::invalid_argument("uniform node needs degree >= 2");
  std::vector<double> c(static_cast<std::size_t>(n) * n, 1.0 / (n - 1));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i) * n + i] = 0.0;
  return c;
}

HalfMomentState from_even_odd(double rho, double q, double rho_hat, double q_hat) {
  HalfMomentState s;
  s.rho_plus = 0.5 * (rho + rho_hat);
  s.rho_minus = 0.5 * (rho - rho_hat);
  s.q_plus = 0.5 * (q + q_hat);
  s.q_minus = 0.5 * (q - q_hat);
  return s;
}

MacroState mirror(const MacroState& s) { return {s.rho, -s.q}; }

HalfMomentState mirror(const HalfMomentState& s) {
  return {s.rho_minus, -s.q_minus, s.rho_plus, -s.q_plus};
}

void mirror(const VelocityGrid& grid, std::span<const double> in, std::span<double> out) {
  const int n = grid.size();
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = in[static_cast<std::size_t>(grid.mirror(k))];
}

const Edge& NetworkTopology::edge(int id) const {
  for (const Edge& e : edges)
    if (e.id == id) return e;
  throw std::runtime_error("unknown edge id " + std::to_string(id));
}

const Node* NetworkTopology::find_node(int id) const {
  for (const Node& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

bool NetworkTopology::is_exterior(int node_id) const {
  return std::find(exterior_nodes.begin(), exterior_nodes.end(), node_id) != exterior_nodes.end();
}

EdgeEnd NetworkTopology::end_at(const Edge& e, int node_id) const {
  if (e.from_node == node_id) return EdgeEnd::Start;
  if (e.to_node == node_id) return EdgeEnd::End;
  throw std::runtime_error("edge " + std::to_string(e.id) + " is not attached to node " +
                           std::to_string(node_id));
}

std::vector<std::pair<int, EdgeEnd>> NetworkTopology::exterior_ends() const {
  std::vector<std::pair<int, EdgeEnd>> out;
  for (const Edge& e : edges) {
    if (is_exterior(e.from_node)) out.emplace_back(e.id, EdgeEnd::Start);
    if (is_exterior(e.to_node)) out.emplace_back(e.id, EdgeEnd::End);
  }
  return out;
}

void NetworkTopology::validate() const {
  constexpr double kColumnTol = 1e-12;

  std::map<int, int> node_degree;
  for (const Edge& e : edges) {
    if (!(e.length > 0.0))
      throw std::runtime_error("edge " + std::to_string(e.id) + ": length must be positive");
    if (e.cells < 2)
      throw std::runtime_error("edge " + std::to_string(e.id) + ": needs at least 2 cells");
    if (e.from_node == e.to_node)
      throw std::runtime_error("edge " + std::to_string(e.id) + ": self-loop not supported");
    node_degree[e.from_node]++;
    node_degree[e.to_node]++;
  }

  for (const Node& n : nodes) {
    const int deg = n.degree();
    if (deg < 2)
      throw std::runtime_error("node " + std::to_string(n.id) +
                               ": interior nodes need degree >= 2 (declare boundaries explicitly)");
    if (n.matrix.size() != static_cast<std::size_t>(deg) * deg)
      throw std::runtime_error("node " + std::to_string(n.id) + ": coupling matrix must be " +
                               std::to_string(deg) + "x" + std::to_string(deg));
    for (int j = 0; j < deg; ++j) {
      double col = 0.0;
      for (int i = 0; i < deg; ++i) {
        const double c = n.coupling(i, j);
        if (c < 0.0)
          throw std::runtime_error("node " + std::to_string(n.id) + ": coupling entry (" +
                                   std::to_string(i) + "," + std::to_string(j) + ") is negative");
        col += c;
      }
      if (std::abs(col - 1.0) > kColumnTol) {
        std::ostringstream os;
        os << "node " << n.id << ": coupling matrix column " << j << " sums to " << col
           << " (mass conservation requires 1 within 1e-12)";
        throw std::runtime_error(os.str());
      }
    }
    for (const NodePort& p : n.attached) {
      const Edge& e = edge(p.edge_id);
      const int attached_node = p.end == EdgeEnd::Start ? e.from_node : e.to_node;
      if (attached_node != n.id)
        throw std::runtime_error("node " + std::to_string(n.id) + ": port edge " +
                                 std::to_string(p.edge_id) + " does not touch this node");
    }
  }

  // Every edge end belongs either to a declared interior node or to a
  // declared exterior boundary, never both, never neither.
  for (const Edge& e : edges) {
    for (int node_id : {e.from_node, e.to_node}) {
      const bool interior = find_node(node_id) != nullptr;
      const bool exterior = is_exterior(node_id);
      if (interior && exterior)
        throw std::runtime_error("node " + std::to_string(node_id) +
                                 " declared both interior and exterior");
      if (!interior && !exterior)
        throw std::runtime_error("edge " + std::to_string(e.id) + ": node " +
                                 std::to_string(node_id) +
                                 " has neither a coupling entry nor a boundary entry");
      if (exterior && node_degree[node_id] != 1)
        throw std::runtime_error("exterior node " + std::to_string(node_id) +
                                 " must have exactly one attached edge");
    }
  }

  for (const Node& n : nodes) {
    if (node_degree.find(n.id) == node_degree.end())
      throw std::runtime_error("node " + std::to_string(n.id) + " has no attached edges");
    if (node_degree[n.id] != n.degree())
      throw std::runtime_error("node " + std::to_string(n.id) + ": port list covers " +
                               std::to_string(n.degree()) + " edges but " +
                               std::to_string(node_degree[n.id]) + " edges touch it");
  }
}

}  // namespace kinnet
