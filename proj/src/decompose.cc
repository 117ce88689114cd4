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

#include "gsnet/decompose.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "decompose";

class VertexTable {
 public:
  explicit VertexTable(double tol) : tol_(tol) {}

  int Find(const Point& x) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if ((points_[i] - x).norm() <= tol_) return static_cast<int>(i);
    }
    return -1;
  }
  int Insert(const Point& x) {
    int i = Find(x);
    if (i >= 0) return i;
    points_.push_back(x);
    return static_cast<int>(points_.size()) - 1;
  }
  const Point& operator[](int i) const { return points_[i]; }
  int size() const { return static_cast<int>(points_.size()); }

 private:
  double tol_;
  std::vector<Point> points_;
};

struct Arc {
  int from;
  int to;
  int remaining;
  Point direction;
};

bool LexGreater(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

}  // namespace

PolyChain split_at_vertices(const PolyChain& z, double tol) {
  std::vector<Point> vertices;
  for (const Piece& piece : z.pieces()) {
    vertices.push_back(piece.segment.p());
    vertices.push_back(piece.segment.q());
  }
  std::vector<Piece> out;
  for (const Piece& piece : z.pieces()) {
    const Point& p = piece.segment.p();
    const double len = piece.segment.length();
    const Point u = piece.segment.direction();
    std::vector<std::pair<double, const Point*>> cuts;
    for (const Point& v : vertices) {
      const double t = (v - p).dot(u);
      if (t <= tol || t >= len - tol) continue;
      if ((v - p - t * u).norm() > tol) continue;
      cuts.emplace_back(t, &v);
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const Point* start = &p;
    double last_t = 0.0;
    for (const auto& [t, v] : cuts) {
      if (t - last_t <= tol) continue;
      out.push_back(Piece{Segment(*start, *v, 0.0), piece.theta});
      start = v;
      last_t = t;
    }
    out.push_back(Piece{Segment(*start, piece.segment.q(), 0.0), piece.theta});
  }
  return PolyChain(z.alpha_param(), z.dim(), std::move(out));
}

PathDecomposition decompose(const PolyChain& t, double tol) {
  return decompose(t, boundary(t, tol), tol);
}

PathDecomposition decompose(const PolyChain& t, const ZeroChain& b,
                            double tol) {
  if (t.n() != 1 || b.n() != 1) {
    throw ValidationError(kModule, "n", "decompose needs a scalar chain");
  }
  if (!is_lattice(t, 1.0, tol)) {
    throw ValidationError(kModule, "theta", "multiplicities are not integral");
  }
  if (!is_lattice(b, 1.0, tol)) {
    throw ValidationError(kModule, "boundary", "boundary is not integral");
  }
  if (!approx_equal(boundary(t, tol), b, tol)) {
    throw ValidationError(kModule, "boundary",
                          "boundary of the chain differs from the given one");
  }

  const PolyChain canon = split_at_vertices(canonicalize(t, tol), tol);
  VertexTable vertices(tol);
  std::vector<Arc> arcs;
  for (const Piece& piece : canon.pieces()) {
    const long k = std::lround(piece.theta[0]);
    int from = vertices.Insert(piece.segment.p());
    int to = vertices.Insert(piece.segment.q());
    Point dir = piece.segment.direction();
    // Remark 3.4 convention: non-negative multiplicity on every arc.
    if (k < 0) {
      std::swap(from, to);
      dir = -dir;
    }
    if (k != 0) arcs.push_back(Arc{from, to, static_cast<int>(std::labs(k)), dir});
  }

  std::vector<std::vector<int>> outgoing(vertices.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    outgoing[arcs[a].from].push_back(static_cast<int>(a));
  }
  for (auto& list : outgoing) {
    std::stable_sort(list.begin(), list.end(), [&](int x, int y) {
      return LexGreater(arcs[x].direction, arcs[y].direction);
    });
  }

  // Unit enumeration of sources and wells in boundary order.
  std::vector<int> source_units;
  std::vector<int> well_units;
  std::vector<int> demand(vertices.size(), 0);
  for (const Atom& atom : b.atoms()) {
    const long k = std::lround(atom.eta[0]);
    const int v = vertices.Find(atom.x);
    if (v < 0) {
      throw ValidationError(kModule, "boundary", "boundary atom off the chain");
    }
    for (long u = 0; u < std::labs(k); ++u) {
      (k < 0 ? source_units : well_units).push_back(v);
    }
    if (k > 0) demand[v] += static_cast<int>(k);
  }
  const int m = static_cast<int>(well_units.size());
  // Next unused well unit index per vertex.
  std::vector<int> next_well(vertices.size(), 0);
  auto take_well_unit = [&](int v) {
    int seen = 0;
    for (int i = 0; i < m; ++i) {
      if (well_units[i] != v) continue;
      if (seen++ == next_well[v]) {
        ++next_well[v];
        return i;
      }
    }
    return -1;
  };

  auto next_arc = [&](int v) -> int {
    for (int a : outgoing[v]) {
      if (arcs[a].remaining > 0) return a;
    }
    return -1;
  };

  auto to_chain = [&](const std::vector<int>& arc_list) {
    std::vector<Piece> pieces;
    for (int a : arc_list) {
      pieces.push_back(Piece{Segment(vertices[arcs[a].from], vertices[arcs[a].to], 0.0),
                             GroupVector::Ones(1)});
    }
    return PolyChain(t.alpha_param(), t.dim(), std::move(pieces));
  };

  PathDecomposition result{t.alpha_param(), t.dim(), {}, {}, {}};
  result.paths.assign(m, PolyChain(t.alpha_param(), t.dim()));
  result.pairing.assign(m, -1);

  for (int s = 0; s < static_cast<int>(source_units.size()); ++s) {
    std::vector<int> walk_vertices{source_units[s]};
    std::vector<int> walk_arcs;
    int v = source_units[s];
    while (demand[v] == 0 || walk_arcs.empty()) {
      const int a = next_arc(v);
      if (a < 0) {
        throw ValidationError(kModule, "chain",
                              "walk stuck: flow is not conserved");
      }
      --arcs[a].remaining;
      v = arcs[a].to;
      auto seen = std::find(walk_vertices.begin(), walk_vertices.end(), v);
      if (seen != walk_vertices.end()) {
        // Loop erasure: the closed sub-walk becomes a cycle.
        const auto pos = seen - walk_vertices.begin();
        std::vector<int> loop(walk_arcs.begin() + pos, walk_arcs.end());
        loop.push_back(a);
        result.cycles.push_back(to_chain(loop));
        walk_arcs.resize(pos);
        walk_vertices.resize(pos + 1);
      } else {
        walk_arcs.push_back(a);
        walk_vertices.push_back(v);
      }
    }
    --demand[v];
    const int well = take_well_unit(v);
    result.paths[well] = to_chain(walk_arcs);
    result.pairing[well] = s;
  }

  // What is left is balanced at every vertex; peel it into cycles.
  for (int start = 0; start < vertices.size(); ++start) {
    while (next_arc(start) >= 0) {
      std::vector<int> walk_vertices{start};
      std::vector<int> walk_arcs;
      int v = start;
      do {
        const int a = next_arc(v);
        if (a < 0) {
          throw ValidationError(kModule, "chain", "unbalanced residual flow");
        }
        --arcs[a].remaining;
        v = arcs[a].to;
        walk_arcs.push_back(a);
        auto seen = std::find(walk_vertices.begin(), walk_vertices.end(), v);
        if (seen != walk_vertices.end()) {
          const auto pos = seen - walk_vertices.begin();
          std::vector<int> loop(walk_arcs.begin() + pos, walk_arcs.end());
          result.cycles.push_back(to_chain(loop));
          walk_arcs.resize(pos);
          walk_vertices.resize(pos + 1);
        } else {
          walk_vertices.push_back(v);
        }
      } while (!walk_arcs.empty());
    }
  }
  return result;
}

PolyChain strip_cycles(const PathDecomposition& d) {
  PolyChain sum(d.alpha_param, d.dim);
  for (const PolyChain& path : d.paths) sum = sum + path;
  return sum;
}

PolyChain reconstruct(const PathDecomposition& d) {
  PolyChain sum = strip_cycles(d);
  for (const PolyChain& cycle : d.cycles) sum = sum + cycle;
  return sum;
}

}  // namespace gsnet
