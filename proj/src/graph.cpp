#include "vessel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include "vessel/error.hpp"

namespace vessel {

namespace {

void check_nodes(const std::vector<VesselNode>& nodes) {
  if (nodes.empty()) fail(ErrorCode::EmptyInput, "node set is empty");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i].r;
    if (!(r > 0.0) || !std::isfinite(r)) {
      fail(ErrorCode::InvalidRadius,
           "node " + std::to_string(i) + " has non-positive radius");
    }
  }
}

// Grid hash for the proximity search. Cell edge is the maximum reach
// 2*r_max + delta, so all partners of a node live in the 3x3(x3)
// neighborhood of its cell.
struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

VesselGraph VesselGraph::from_parts(std::vector<VesselNode> nodes,
                                    std::vector<VesselEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const VesselEdge& a, const VesselEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });

  VesselGraph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);

  const std::size_t n = g.nodes_.size();
  g.adj_offsets_.assign(n + 1, 0);
  for (const VesselEdge& e : g.edges_) {
    if (e.from < n) ++g.adj_offsets_[e.from + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.adj_offsets_[i + 1] += g.adj_offsets_[i];

  g.adj_edges_.resize(g.edges_.size());
  std::vector<std::uint32_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  for (std::uint32_t ei = 0; ei < g.edges_.size(); ++ei) {
    const std::uint32_t from = g.edges_[ei].from;
    if (from < n) g.adj_edges_[cursor[from]++] = ei;
  }

  for (const VesselNode& node : g.nodes_) g.max_radius_ = std::max(g.max_radius_, node.r);
  return g;
}

VesselGraph build_graph(std::vector<VesselNode> nodes, ProximityPolicy policy) {
  check_nodes(nodes);

  double r_max = 0.0;
  for (const VesselNode& n : nodes) r_max = std::max(r_max, n.r);
  const double reach = 2.0 * r_max + std::max(policy.delta, 0.0);
  const double cell = std::max(reach, 1e-9);

  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> grid;
  grid.reserve(nodes.size() * 2);
  auto key_of = [cell](const Vec3& p) {
    return CellKey{static_cast<std::int64_t>(std::floor(p.x / cell)),
                   static_cast<std::int64_t>(std::floor(p.y / cell)),
                   static_cast<std::int64_t>(std::floor(p.z / cell))};
  };
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    grid[key_of(nodes[i].position())].push_back(i);
  }

  std::vector<VesselEdge> edges;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    const Vec3 pi = nodes[i].position();
    const CellKey base = key_of(pi);
    for (std::int64_t dz = -1; dz <= 1; ++dz) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
          const auto it = grid.find({base.x + dx, base.y + dy, base.z + dz});
          if (it == grid.end()) continue;
          for (std::uint32_t j : it->second) {
            if (j == i) continue;
            const double bound = nodes[i].r + nodes[j].r + policy.delta;
            if (norm_squared(nodes[j].position() - pi) <= bound * bound) {
              edges.push_back({i, j, nodes[i].r});
            }
          }
        }
      }
    }
  }

  return VesselGraph::from_parts(std::move(nodes), std::move(edges));
}

VesselGraph build_graph(std::vector<VesselNode> nodes,
                        std::span<const IdPair> explicit_edges) {
  check_nodes(nodes);

  const std::uint32_t n = static_cast<std::uint32_t>(nodes.size());
  std::vector<VesselEdge> edges;
  edges.reserve(explicit_edges.size());
  for (const auto& [from, to] : explicit_edges) {
    if (from >= n || to >= n) {
      fail(ErrorCode::InvalidEdge, "edge (" + std::to_string(from) + "," +
                                       std::to_string(to) +
                                       ") references an unknown node id");
    }
    if (from == to) {
      fail(ErrorCode::InvalidEdge,
           "self loop on node " + std::to_string(from));
    }
    edges.push_back({from, to, nodes[from].r});
  }

  std::sort(edges.begin(), edges.end(), [](const VesselEdge& a, const VesselEdge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const VesselEdge& a, const VesselEdge& b) {
                            return a.from == b.from && a.to == b.to;
                          }),
              edges.end());

  return VesselGraph::from_parts(std::move(nodes), std::move(edges));
}

ComponentLabeling connected_components(const VesselGraph& graph) {
  const std::size_t n = graph.node_count();
  ComponentLabeling out;
  out.label.assign(n, UINT32_MAX);
  if (n == 0) return out;

  // Undirected adjacency (CSR over both edge directions).
  std::vector<std::uint32_t> degree(n + 1, 0);
  for (const VesselEdge& e : graph.edges()) {
    if (e.from < n) ++degree[e.from + 1];
    if (e.to < n) ++degree[e.to + 1];
  }
  for (std::size_t i = 0; i < n; ++i) degree[i + 1] += degree[i];
  std::vector<std::uint32_t> neighbors(degree[n]);
  std::vector<std::uint32_t> cursor(degree.begin(), degree.end() - 1);
  for (const VesselEdge& e : graph.edges()) {
    if (e.from >= n || e.to >= n) continue;
    neighbors[cursor[e.from]++] = e.to;
    neighbors[cursor[e.to]++] = e.from;
  }

  std::vector<std::uint32_t> queue;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (out.label[start] != UINT32_MAX) continue;
    const auto comp = static_cast<std::uint32_t>(out.sizes.size());
    out.sizes.push_back(0);
    out.radius_sums.push_back(0.0);
    queue.assign(1, start);
    out.label[start] = comp;
    while (!queue.empty()) {
      const std::uint32_t v = queue.back();
      queue.pop_back();
      ++out.sizes[comp];
      out.radius_sums[comp] += graph.node(v).r;
      for (std::uint32_t i = degree[v]; i < degree[v + 1]; ++i) {
        const std::uint32_t w = neighbors[i];
        if (out.label[w] == UINT32_MAX) {
          out.label[w] = comp;
          queue.push_back(w);
        }
      }
    }
  }

  out.largest = 0;
  for (std::uint32_t c = 1; c < out.component_count(); ++c) {
    if (out.sizes[c] > out.sizes[out.largest] ||
        (out.sizes[c] == out.sizes[out.largest] &&
         out.radius_sums[c] > out.radius_sums[out.largest])) {
      out.largest = c;
    }
  }
  return out;
}

ValidationReport validate(const VesselGraph& graph) {
  ValidationReport report;
  const std::size_t n = graph.node_count();

  for (std::size_t i = 0; i < n; ++i) {
    const double r = graph.node(static_cast<std::uint32_t>(i)).r;
    if (!(r > 0.0) || !std::isfinite(r)) {
      report.issues.push_back({ValidationIssue::Kind::InvalidRadius, i,
                               "node " + std::to_string(i) +
                                   " has non-positive radius " +
                                   std::to_string(r)});
    }
  }

  const auto& edges = graph.edges();
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const VesselEdge& e = edges[ei];
    const std::string tag = "edge #" + std::to_string(ei) + " (" +
                            std::to_string(e.from) + "->" +
                            std::to_string(e.to) + ")";
    if (e.from >= n || e.to >= n) {
      report.issues.push_back({ValidationIssue::Kind::InvalidEdgeEndpoint, ei,
                               tag + " references an unknown node id"});
      continue;
    }
    if (e.from == e.to) {
      report.issues.push_back(
          {ValidationIssue::Kind::SelfLoop, ei, tag + " is a self loop"});
    }
    if (e.weight != graph.node(e.from).r) {
      report.issues.push_back(
          {ValidationIssue::Kind::WeightMismatch, ei,
           tag + " weight " + std::to_string(e.weight) +
               " differs from source radius " +
               std::to_string(graph.node(e.from).r)});
    }
    if (ei > 0 && edges[ei - 1].from == e.from && edges[ei - 1].to == e.to) {
      report.issues.push_back({ValidationIssue::Kind::DuplicateEdge, ei,
                               tag + " duplicates the previous edge"});
    }
  }

  // Adjacency must hold each edge exactly once, bucketed under its source.
  std::vector<std::uint8_t> seen(edges.size(), 0);
  bool adjacency_ok = true;
  for (std::uint32_t v = 0; v < n && adjacency_ok; ++v) {
    for (std::uint32_t ei : graph.out_edges(v)) {
      if (ei >= edges.size() || edges[ei].from != v || seen[ei]) {
        adjacency_ok = false;
        break;
      }
      seen[ei] = 1;
    }
  }
  if (adjacency_ok) {
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      if (!seen[ei] && edges[ei].from < n) {
        adjacency_ok = false;
        break;
      }
    }
  }
  if (!adjacency_ok) {
    report.issues.push_back({ValidationIssue::Kind::AdjacencyMismatch, 0,
                             "adjacency lists disagree with the edge collection"});
  }

  return report;
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::InvalidRatio: return "InvalidRatio";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::RootNotFound: return "RootNotFound";
    case ErrorCode::DegenerateStats: return "DegenerateStats";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace vessel
