#include "kinnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kinnet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

ModelKind parse_model(const std::string& s, const std::string& origin) {
  if (s == "kinetic") return ModelKind::Kinetic;
  if (s == "halfmoment") return ModelKind::HalfMoment;
  if (s == "wave") return ModelKind::Wave;
  fail(origin, "unknown model '" + s + "' (expected kinetic|halfmoment|wave)");
}

CouplingVariant parse_variant(const std::string& s, const std::string& origin) {
  if (s == "kinetic") return CouplingVariant::Kinetic;
  if (s == "equal_density" || s == "equal") return CouplingVariant::EqualDensity;
  if (s == "fullmoment" || s == "full") return CouplingVariant::FullMoment;
  if (s == "maxwell") return CouplingVariant::Maxwell;
  if (s == "halfmoment" || s == "half") return CouplingVariant::HalfMoment;
  fail(origin, "unknown coupling condition '" + s + "'");
}

double require_number(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) fail(origin, std::string("missing field '") + key + "'");
  if (!j[key].is_number()) fail(origin, std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

int require_int(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) fail(origin, std::string("missing field '") + key + "'");
  if (!j[key].is_number_integer()) fail(origin, std::string("field '") + key + "' must be an integer");
  return j[key].get<int>();
}

}  // namespace

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Kinetic: return "kinetic";
    case ModelKind::HalfMoment: return "halfmoment";
    case ModelKind::Wave: return "wave";
  }
  return "?";
}

const InitialData& Scenario::initial_for(int edge_id) const {
  auto it = initial.find(edge_id);
  if (it == initial.end())
    throw std::runtime_error("no initial data for edge " + std::to_string(edge_id));
  return it->second;
}

const BoundaryCondition& Scenario::boundary_for(int node_id) const {
  auto it = boundaries.find(node_id);
  if (it == boundaries.end())
    throw std::runtime_error("no boundary condition for exterior node " + std::to_string(node_id));
  return it->second;
}

LoadedScenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  LoadedScenario out;
  Scenario& sc = out.scenario;
  NetworkTopology& topo = out.topology;

  if (!doc.contains("model") || !doc["model"].is_string())
    fail(origin, "missing or non-string field 'model'");
  sc.model = parse_model(doc["model"].get<std::string>(), origin);

  if (doc.contains("a")) sc.a = require_number(doc, "a", origin);
  if (doc.contains("epsilon")) sc.epsilon = require_number(doc, "epsilon", origin);
  if (doc.contains("cfl")) sc.cfl = require_number(doc, "cfl", origin);
  sc.t_end = require_number(doc, "t_end", origin);
  if (doc.contains("cells_per_edge")) sc.cells_per_edge = require_int(doc, "cells_per_edge", origin);
  if (doc.contains("velocity_cells")) sc.velocity_cells = require_int(doc, "velocity_cells", origin);

  if (!(sc.epsilon > 0.0)) fail(origin, "epsilon must be positive");
  if (!(sc.cfl > 0.0 && sc.cfl <= 1.0)) fail(origin, "cfl must lie in (0, 1]");
  if (!(sc.t_end >= 0.0)) fail(origin, "t_end must be nonnegative");
  if (!(sc.a > 0.0)) fail(origin, "a must be positive");
  if (sc.cells_per_edge < 2) fail(origin, "cells_per_edge must be at least 2");

  // The bounded-velocity kinetic and half-moment models have the wave speed
  // a^2 = 1/3 built into their closures.
  const double a_bounded = 1.0 / std::sqrt(3.0);
  if (sc.model != ModelKind::Wave) {
    if (doc.contains("a") && std::abs(sc.a - a_bounded) > 1e-12)
      fail(origin, "model '" + to_string(sc.model) + "' forces a = 1/sqrt(3)");
    sc.a = a_bounded;
  }

  if (!doc.contains("edges") || !doc["edges"].is_array() || doc["edges"].empty())
    fail(origin, "missing or empty 'edges' array");
  for (const json& je : doc["edges"]) {
    Edge e;
    e.id = require_int(je, "id", origin);
    e.length = require_number(je, "length", origin);
    e.from_node = require_int(je, "from", origin);
    e.to_node = require_int(je, "to", origin);
    e.cells = sc.cells_per_edge;
    topo.edges.push_back(e);
  }

  if (doc.contains("nodes")) {
    if (!doc["nodes"].is_array()) fail(origin, "'nodes' must be an array");
    for (const json& jn : doc["nodes"]) {
      Node n;
      n.id = require_int(jn, "id", origin);
      const std::string node_origin = origin + ", node " + std::to_string(n.id);
      if (jn.contains("condition")) {
        if (!jn["condition"].is_string()) fail(node_origin, "'condition' must be a string");
        n.condition.variant = parse_variant(jn["condition"].get<std::string>(), node_origin);
      }
      if (jn.contains("velocity_model")) {
        const std::string vm = jn["velocity_model"].get<std::string>();
        if (vm == "bounded") n.condition.velocity_model = VelocityModel::Bounded;
        else if (vm == "unbounded") n.condition.velocity_model = VelocityModel::Unbounded;
        else fail(node_origin, "unknown velocity_model '" + vm + "'");
      }
      // Ports in edge-list order: start end first when both ends touch.
      for (const Edge& e : topo.edges) {
        if (e.from_node == n.id) n.attached.push_back({e.id, EdgeEnd::Start});
        if (e.to_node == n.id) n.attached.push_back({e.id, EdgeEnd::End});
      }
      const int deg = n.degree();
      if (!jn.contains("coupling")) fail(node_origin, "missing 'coupling'");
      if (jn["coupling"].is_string()) {
        if (jn["coupling"].get<std::string>() != "uniform")
          fail(node_origin, "coupling must be \"uniform\" or a row-major matrix");
        if (deg < 2) fail(node_origin, "uniform coupling needs degree >= 2");
        n.matrix = uniform_coupling_matrix(deg);
      } else if (jn["coupling"].is_array()) {
        if (jn["coupling"].size() != static_cast<std::size_t>(deg) * deg)
          fail(node_origin, "coupling matrix must have degree^2 = " + std::to_string(deg * deg) +
                                " entries (row-major)");
        for (const json& v : jn["coupling"]) {
          if (!v.is_number()) fail(node_origin, "coupling entries must be numbers");
          n.matrix.push_back(v.get<double>());
        }
      } else {
        fail(node_origin, "coupling must be \"uniform\" or a row-major matrix");
      }
      topo.nodes.push_back(std::move(n));
    }
  }

  if (!doc.contains("initial") || !doc["initial"].is_object())
    fail(origin, "missing 'initial' object (per-edge data)");
  for (auto it = doc["initial"].begin(); it != doc["initial"].end(); ++it) {
    int edge_id = 0;
    try {
      edge_id = std::stoi(it.key());
    } catch (...) {
      fail(origin, "initial data key '" + it.key() + "' is not an edge id");
    }
    const json& jv = it.value();
    const std::string init_origin = origin + ", initial data for edge " + it.key();
    InitialData data;
    if (jv.contains("f")) {
      const double f = require_number(jv, "f", init_origin);
      data.rho = 2.0 * f;
      data.q = 0.0;
    } else {
      data.rho = require_number(jv, "rho", init_origin);
      data.q = jv.contains("q") ? require_number(jv, "q", init_origin) : 0.0;
    }
    sc.initial[edge_id] = data;
  }

  if (doc.contains("boundaries")) {
    if (!doc["boundaries"].is_object()) fail(origin, "'boundaries' must be an object");
    for (auto it = doc["boundaries"].begin(); it != doc["boundaries"].end(); ++it) {
      int node_id = 0;
      try {
        node_id = std::stoi(it.key());
      } catch (...) {
        fail(origin, "boundary key '" + it.key() + "' is not a node id");
      }
      const json& jv = it.value();
      BoundaryCondition bc;
      if (jv.is_string() && jv.get<std::string>() == "free") {
        bc.free = true;
      } else if (jv.is_object() && jv.contains("inflow")) {
        bc.free = false;
        bc.inflow = require_number(jv, "inflow", origin + ", boundary " + it.key());
      } else {
        fail(origin, "boundary " + it.key() + " must be \"free\" or {\"inflow\": value}");
      }
      sc.boundaries[node_id] = bc;
      out.topology.exterior_nodes.push_back(node_id);
    }
  }

  topo.validate();

  for (const Edge& e : topo.edges) {
    if (sc.initial.find(e.id) == sc.initial.end())
      fail(origin, "edge " + std::to_string(e.id) + " has no initial data");
  }

  return out;
}

LoadedScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace kinnet
