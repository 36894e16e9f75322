#pragma once

#include <map>
#include <string>

#include "kinnet/topology.hpp"

namespace kinnet {

enum class ModelKind { Kinetic, HalfMoment, Wave };

std::string to_string(ModelKind m);

/// Exterior boundary condition: either free (zero gradient) or a prescribed
/// constant kinetic inflow value on the ingoing velocity half-range.
struct BoundaryCondition {
  bool free = true;
  double inflow = 0.0;
};

/// Per-edge initial data: constant (rho, q) or a constant distribution value
/// (f == c corresponds to rho = 2c, q = 0 on the bounded velocity interval).
struct InitialData {
  double rho = 0.0;
  double q = 0.0;
};

struct Scenario {
  ModelKind model = ModelKind::Wave;
  double a = 0.57735026918962573;  // 1/sqrt(3)
  double epsilon = 1e-3;
  double cfl = 1.0;
  double t_end = 1.0;
  int cells_per_edge = 400;
  int velocity_cells = 400;
  std::map<int, InitialData> initial;           // keyed by edge id
  std::map<int, BoundaryCondition> boundaries;  // keyed by exterior node id

  const InitialData& initial_for(int edge_id) const;
  const BoundaryCondition& boundary_for(int node_id) const;
};

struct LoadedScenario {
  Scenario scenario;
  NetworkTopology topology;
};

/// Parses and validates a scenario document (JSON). Errors name the failing
/// field or invariant. `origin` is used in messages (usually the file path).
LoadedScenario parse_scenario(const std::string& text, const std::string& origin);

LoadedScenario load_scenario(const std::string& path);

}  // namespace kinnet
