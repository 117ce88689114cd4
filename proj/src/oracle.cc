// Copyright 2026 The gsnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsnet/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "oracle";

struct Step {
  int edge;
  int sign;  // +1 when traversed from u to v
};

struct Path {
  std::vector<int> nodes;
  std::vector<Step> steps;
};

Error LimitsError(const std::string& field, const std::string& message) {
  return Error(ErrorKind::kLimitsExceeded, kModule, field, message);
}

class PathEnumerator {
 public:
  PathEnumerator(int node_count, const std::vector<Edge>& edges,
                 const OracleLimits& limits)
      : adjacency_(node_count), limits_(limits) {
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      adjacency_[edges[e].u].push_back({edges[e].v, e, +1});
      adjacency_[edges[e].v].push_back({edges[e].u, e, -1});
    }
    for (auto& list : adjacency_) {
      std::stable_sort(list.begin(), list.end(),
                       [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
  }

  // All simple paths from s to t, in lexicographic order of node sequence.
  std::vector<Path> Enumerate(int s, int t) {
    std::vector<Path> out;
    Path current{{s}, {}};
    std::vector<char> visited(adjacency_.size(), 0);
    visited[s] = 1;
    Dfs(s, t, current, visited, out);
    return out;
  }

 private:
  struct Neighbor {
    int node;
    int edge;
    int sign;
  };

  void Dfs(int v, int t, Path& current, std::vector<char>& visited,
           std::vector<Path>& out) {
    if (v == t) {
      out.push_back(current);
      if (static_cast<std::int64_t>(out.size()) > limits_.max_tuples) {
        throw LimitsError("limits.max_tuples", "too many simple paths");
      }
      return;
    }
    if (static_cast<int>(current.steps.size()) >= limits_.max_path_edges) return;
    for (const Neighbor& nb : adjacency_[v]) {
      if (visited[nb.node]) continue;
      visited[nb.node] = 1;
      current.nodes.push_back(nb.node);
      current.steps.push_back({nb.edge, nb.sign});
      Dfs(nb.node, t, current, visited, out);
      current.steps.pop_back();
      current.nodes.pop_back();
      visited[nb.node] = 0;
    }
  }

  std::vector<std::vector<Neighbor>> adjacency_;
  OracleLimits limits_;
};

}  // namespace

OracleResult oracle_min(const OracleInstance& inst) {
  const int units = static_cast<int>(inst.sources.size());
  if (units != static_cast<int>(inst.wells.size())) {
    throw ValidationError(kModule, "wells", "need as many wells as sources");
  }
  if (units == 0) throw ValidationError(kModule, "sources", "no units");
  if (units > inst.limits.max_units) {
    throw LimitsError("limits.max_units",
                      std::to_string(units) + " units exceed the limit of " +
                          std::to_string(inst.limits.max_units));
  }
  if (!(inst.alpha > 0.0 && inst.alpha < 1.0)) {
    throw ValidationError(kModule, "alpha", "alpha must lie inside (0,1)");
  }
  // Balanced single-coordinate problem, used only for validation of graph
  // and edge lengths.
  const FlowProblem graph(inst.nodes, inst.edges, AlphaParam(inst.alpha, 1),
                          Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(inst.nodes.size()), 1));
  for (int v : inst.sources) {
    if (v < 0 || v >= graph.node_count()) throw ValidationError(kModule, "sources", "bad node");
  }
  for (int v : inst.wells) {
    if (v < 0 || v >= graph.node_count()) throw ValidationError(kModule, "wells", "bad node");
  }

  PathEnumerator enumerator(graph.node_count(), graph.edges(), inst.limits);
  // paths[s][w] for source unit s and well unit w.
  std::vector<std::vector<std::vector<Path>>> paths(units, std::vector<std::vector<Path>>(units));
  for (int s = 0; s < units; ++s) {
    for (int w = 0; w < units; ++w) {
      if (s > 0 && inst.sources[s] == inst.sources[s - 1]) {
        paths[s][w] = paths[s - 1][w];
      } else {
        paths[s][w] = enumerator.Enumerate(inst.sources[s], inst.wells[w]);
      }
    }
  }

  std::vector<int> perm(units);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::int64_t count = 1;
    for (int i = 0; i < units; ++i) {
      count *= static_cast<std::int64_t>(paths[perm[i]][i].size());
      if (count > inst.limits.max_tuples) break;
    }
    total += count;
    if (total > inst.limits.max_tuples) {
      throw LimitsError("limits.max_tuples",
                        "more than " + std::to_string(inst.limits.max_tuples) +
                            " path tuples");
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> power(units + 1);
  for (int k = 0; k <= units; ++k) power[k] = std::pow(static_cast<double>(k), inst.alpha);

  const std::vector<Edge>& edges = graph.edges();
  std::vector<int> flow(edges.size(), 0);
  std::vector<int> choice(units, 0);
  OracleResult best{std::numeric_limits<double>::infinity(), {}, {}, 0};

  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Odometer over path tuples, lexicographic in the path indices.
    bool feasible = true;
    for (int i = 0; i < units; ++i) feasible = feasible && !paths[perm[i]][i].empty();
    if (!feasible) continue;
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      std::fill(flow.begin(), flow.end(), 0);
      for (int i = 0; i < units; ++i) {
        for (const Step& st : paths[perm[i]][i][choice[i]].steps) flow[st.edge] += st.sign;
      }
      double value = 0.0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (flow[e] != 0) value += edges[e].length * power[std::abs(flow[e])];
      }
      ++best.tuples_evaluated;
      if (value < best.value - 1e-12 * std::max(1.0, std::abs(best.value)) ||
          best.pairing.empty()) {
        best.value = value;
        best.pairing = perm;
        best.paths.assign(units, {});
        for (int i = 0; i < units; ++i) best.paths[i] = paths[perm[i]][i][choice[i]].nodes;
      }
      int k = units - 1;
      while (k >= 0 && ++choice[k] == static_cast<int>(paths[perm[k]][k].size())) {
        choice[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (best.pairing.empty()) {
    throw ValidationError(kModule, "wells", "no pairing connects sources to wells");
  }
  return best;
}

PolyChain oracle_chain(const OracleInstance& inst, const OracleResult& r) {
  const int dim = static_cast<int>(inst.nodes.front().size());
  std::vector<Piece> pieces;
  for (const std::vector<int>& path : r.paths) {
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      pieces.push_back(Piece{Segment(inst.nodes[path[k]], inst.nodes[path[k + 1]]),
                             GroupVector::Ones(1)});
    }
  }
  return canonicalize(PolyChain(AlphaParam(inst.alpha, 1), dim, std::move(pieces)));
}

OracleInstance oracle_instance(const FlowProblem& p, OracleLimits limits) {
  OracleInstance inst;
  inst.nodes = p.nodes();
  for (const Edge& e : p.edges()) inst.edges.push_back({e.u, e.v, e.length});
  inst.alpha = p.alpha_param().alpha();
  inst.limits = limits;
  for (int v = 0; v < p.node_count(); ++v) {
    const double total = p.boundary().row(v).sum();
    const long k = std::lround(total);
    if (std::abs(total - static_cast<double>(k)) > 1e-9) {
      throw ValidationError(kModule, "boundary", "oracle needs an integral boundary");
    }
    for (long u = 0; u < std::labs(k); ++u) {
      (k < 0 ? inst.sources : inst.wells).push_back(v);
    }
  }
  return inst;
}

RelaxationBound relaxation_bound(const OracleInstance& inst,
                                 const SolverParams& params) {
  const int units = static_cast<int>(inst.sources.size());
  if (units == 0 || units != static_cast<int>(inst.wells.size())) {
    throw ValidationError(kModule, "sources", "need matching nonempty units");
  }
  std::vector<int> perm(units);
  std::iota(perm.begin(), perm.end(), 0);
  RelaxationBound bound{std::numeric_limits<double>::infinity(), {}, true};
  do {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(inst.nodes.size()), units);
    for (int i = 0; i < units; ++i) {
      b(inst.sources[perm[i]], i) -= 1.0;
      b(inst.wells[i], i) += 1.0;
    }
    const FlowProblem p(inst.nodes, inst.edges, AlphaParam(inst.alpha, units), std::move(b));
    const FlowSolution s = solve(p, params);
    bound.all_converged = bound.all_converged && s.converged;
    if (s.dual_value < bound.value) {
      bound.value = s.dual_value;
      bound.pairing = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return bound;
}

PolyChain random_competitor(const ZeroChain& b, std::uint64_t seed,
                            CompetitorOptions options, double tol) {
  const int dim = b.dim();
  const int n = b.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (b.empty()) return PolyChain(b.alpha_param(), dim);

  Point lo = b.atoms().front().x;
  Point hi = lo;
  for (const Atom& a : b.atoms()) {
    lo = lo.cwiseMin(a.x);
    hi = hi.cwiseMax(a.x);
  }
  const double width = std::max(1.0, (hi - lo).maxCoeff());
  lo.array() -= options.box_margin * width;
  hi.array() += options.box_margin * width;
  auto random_point = [&]() {
    Point x(dim);
    for (int i = 0; i < dim; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    return x;
  };
  std::vector<Point> hubs;
  for (int h = 0; h < 3; ++h) hubs.push_back(random_point());

  std::vector<Piece> pieces;
  auto route = [&](const Point& from, const Point& to, const GroupVector& theta) {
    std::vector<Point> vertices{from};
    if (unit(rng) < options.hub_probability) {
      const int first = static_cast<int>(unit(rng) * 3) % 3;
      vertices.push_back(hubs[first]);
      vertices.push_back(hubs[(first + 1) % 3]);
    } else {
      const int count = 1 + static_cast<int>(unit(rng) * 3) % 3;
      for (int k = 0; k < count; ++k) vertices.push_back(random_point());
    }
    // Waypoints that nearly coincide with a neighbour would make
    // degenerate segments; drop them.
    std::vector<Point> kept{from};
    for (std::size_t k = 1; k < vertices.size(); ++k) {
      if ((vertices[k] - kept.back()).norm() > 10 * tol &&
          (vertices[k] - to).norm() > 10 * tol) {
        kept.push_back(vertices[k]);
      }
    }
    kept.push_back(to);
    for (std::size_t k = 0; k + 1 < kept.size(); ++k) {
      pieces.push_back(Piece{Segment(kept[k], kept[k + 1], 0.0), theta});
    }
  };

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> supply;
    std::vector<std::pair<int, double>> demand;
    for (int a = 0; a < static_cast<int>(b.atoms().size()); ++a) {
      const double eta = b.atoms()[a].eta[j];
      if (eta < -tol) supply.emplace_back(a, -eta);
      if (eta > tol) demand.emplace_back(a, eta);
    }
    std::size_t s = 0;
    std::size_t d = 0;
    while (s < supply.size() && d < demand.size()) {
      const double amount = std::min(supply[s].second, demand[d].second);
      route(b.atoms()[supply[s].first].x, b.atoms()[demand[d].first].x,
            amount * unit_group_vector(j, n));
      supply[s].second -= amount;
      demand[d].second -= amount;
      if (supply[s].second <= tol) ++s;
      if (demand[d].second <= tol) ++d;
    }
  }
  return canonicalize(PolyChain(b.alpha_param(), dim, std::move(pieces)), tol);
}

PolyChain perturbed_competitor(const PolyChain& z, std::uint64_t seed,
                               double scale, double tol) {
  const ZeroChain bz = boundary(z, tol);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Point> originals;
  std::vector<Point> moved;
  auto image = [&](const Point& x) -> Point {
    for (std::size_t i = 0; i < originals.size(); ++i) {
      if ((originals[i] - x).norm() <= tol) return moved[i];
    }
    originals.push_back(x);
    bool pinned = false;
    for (const Atom& a : bz.atoms()) pinned = pinned || (a.x - x).norm() <= tol;
    Point y = x;
    if (!pinned) {
      Point dir(x.size());
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = normal(rng);
      y += scale * unit(rng) * dir.normalized();
    }
    moved.push_back(y);
    return y;
  };
  std::vector<Piece> pieces;
  for (const Piece& piece : z.pieces()) {
    Point p = image(piece.segment.p());
    Point q = image(piece.segment.q());
    if ((q - p).norm() <= tol) continue;
    pieces.push_back(Piece{Segment(std::move(p), std::move(q), 0.0), piece.theta});
  }
  return canonicalize(PolyChain(z.alpha_param(), z.dim(), std::move(pieces)), tol);
}

}  // namespace gsnet
