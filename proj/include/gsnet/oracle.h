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

// Ground truth for tiny instances and competitor generators.

#ifndef GSNET_ORACLE_H_
#define GSNET_ORACLE_H_

#include <cstdint>
#include <vector>

#include "gsnet/chain.h"
#include "gsnet/solver.h"

namespace gsnet {

struct OracleLimits {
  int max_units = 6;
  int max_path_edges = 64;
  std::int64_t max_tuples = 10'000'000;
};

struct OracleInstance {
  std::vector<Point> nodes;
  std::vector<EdgeSpec> edges;
  std::vector<int> sources;  // one unit per entry
  std::vector<int> wells;
  double alpha;
  OracleLimits limits;
};

struct OracleResult {
  double value;
  // well i is served by source pairing[i]
  std::vector<int> pairing;
  // paths[i]: node sequence from sources[pairing[i]] to wells[i]
  std::vector<std::vector<int>> paths;
  std::int64_t tuples_evaluated;
};

// Exact minimum over all pairings and all tuples of simple paths of the
// energy sum_e len_e |sum_i s_{i,e}|^alpha of the signed superposition.
// Ties resolve to the first in lexicographic (pairing, path tuple) order.
// Throws kLimitsExceeded instead of truncating.
OracleResult oracle_min(const OracleInstance& inst);

// The optimal superposition as a scalar chain.
PolyChain oracle_chain(const OracleInstance& inst, const OracleResult& r);

// Units read off an integral scalar boundary array (one column): negative
// entries are sources, positive ones wells, in node order.
OracleInstance oracle_instance(const FlowProblem& p, OracleLimits limits = {});

// min over pairings of the convex relaxation's dual bound, each pairing
// solved as a FlowProblem with one group coordinate per unit.
struct RelaxationBound {
  double value;
  std::vector<int> pairing;
  bool all_converged;
};
RelaxationBound relaxation_bound(const OracleInstance& inst,
                                 const SolverParams& params = {});

struct CompetitorOptions {
  double hub_probability = 0.3;  // route through a shared waypoint
  double box_margin = 0.5;       // waypoint box, relative to boundary bbox
};

// Same-boundary chain: every unit of every group coordinate is routed from
// a negative atom to a positive atom through 1-3 random waypoints, some of
// them shared so that routes overlap. boundary(result) == b.
PolyChain random_competitor(const ZeroChain& b, std::uint64_t seed,
                            CompetitorOptions options = {},
                            double tol = kDefaultTol);

// Same-boundary chain obtained by moving every vertex of z outside the
// support of boundary(z) by a random displacement of norm <= scale.
PolyChain perturbed_competitor(const PolyChain& z, std::uint64_t seed,
                               double scale, double tol = kDefaultTol);

}  // namespace gsnet

#endif  // GSNET_ORACLE_H_
