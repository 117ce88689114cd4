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

#include <cmath>

#include "doctest.h"
#include "generators.h"
#include "gsnet/convert.h"
#include "gsnet/error.h"
#include "gsnet/oracle.h"

namespace gsnet {
namespace {

using testing::P2;
using testing::Rng;

OracleInstance Example46Instance(int connectivity = 8) {
  const GridSpec grid{P2(-4, -4), 7, 7, 1.0, connectivity};
  const Graph g = build_grid(grid);
  OracleInstance inst{g.nodes, g.edges, {}, {}, 0.5, {}};
  inst.sources = {snap_to_grid(grid, P2(-3, -2)), snap_to_grid(grid, P2(-2, -3))};
  inst.wells = {snap_to_grid(grid, P2(1, 0)), snap_to_grid(grid, P2(0, 1))};
  return inst;
}

TEST_CASE("single edge") {
  OracleInstance inst{{P2(0, 0), P2(2, 0)}, {{0, 1, std::nullopt}}, {0}, {1}, 0.5, {}};
  const OracleResult r = oracle_min(inst);
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.paths == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("two-source grid picks the sharing pairing") {
  // Restrict to the box [-3,1]^2 so that path enumeration stays small.
  const GridSpec grid{P2(-3, -3), 5, 5, 1.0, 8};
  const Graph g = build_grid(grid);
  OracleInstance inst{g.nodes, g.edges, {}, {}, 0.5, {}};
  inst.limits.max_path_edges = 7;
  inst.limits.max_tuples = 200'000'000;
  inst.sources = {snap_to_grid(grid, P2(-3, -2)), snap_to_grid(grid, P2(-2, -3))};
  inst.wells = {snap_to_grid(grid, P2(1, 0)), snap_to_grid(grid, P2(0, 1))};
  const OracleResult r = oracle_min(inst);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(r.pairing == std::vector<int>{0, 1});
  const PolyChain t = oracle_chain(inst, r);
  CHECK(gs_energy(t) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("limits are explicit") {
  OracleInstance inst = Example46Instance();
  inst.limits.max_tuples = 1000;
  try {
    oracle_min(inst);
    FAIL("expected a limits error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLimitsExceeded);
  }
  OracleInstance many{{P2(0, 0), P2(1, 0)}, {{0, 1, std::nullopt}},
                      {0, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1}, 0.5, {}};
  CHECK_THROWS_AS(oracle_min(many), Error);
}

TEST_CASE("V network: oracle matches the lifted mass and bounds the relaxation") {
  const std::vector<Point> nodes{P2(0, 0), P2(1, 0), P2(2, -1), P2(2, 1)};
  const std::vector<EdgeSpec> edges{{0, 1, std::nullopt}, {1, 2, std::nullopt},
                                    {1, 3, std::nullopt}, {0, 2, std::nullopt},
                                    {0, 3, std::nullopt}};
  const OracleInstance inst{nodes, edges, {0, 0}, {2, 3}, 0.5, {}};
  const OracleResult r = oracle_min(inst);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0) + 2 * std::sqrt(2.0)));
  const PolyChain t = oracle_chain(inst, r);
  CHECK(mass(lift(t).chain) == doctest::Approx(r.value).epsilon(1e-12));
  const RelaxationBound lb = relaxation_bound(inst);
  CHECK(lb.all_converged);
  CHECK(r.value >= lb.value - 1e-6);
}

TEST_CASE("oracle value is invariant under relabeling and isometry") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> nodes;
    for (int i = 0; i < 7; ++i) nodes.push_back(testing::RandomVector(rng, 2, 2.0));
    std::vector<EdgeSpec> edges;
    for (int i = 1; i < 7; ++i) edges.push_back({rng.integer(0, i - 1), i, std::nullopt});
    for (int k = 0; k < 3; ++k) {
      const int u = rng.integer(0, 6), v = rng.integer(0, 6);
      if (u != v) edges.push_back({u, v, std::nullopt});
    }
    const OracleInstance inst{nodes, edges, {0, 1}, {5, 6}, 0.5, {}};
    const double base = oracle_min(inst).value;

    OracleInstance swapped = inst;
    swapped.sources = {1, 0};
    swapped.wells = {6, 5};
    CHECK(oracle_min(swapped).value == doctest::Approx(base).epsilon(1e-12));

    const double t = rng.uniform(0, 2 * M_PI);
    Eigen::Matrix2d rot;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    OracleInstance moved = inst;
    for (Point& x : moved.nodes) x = rot * x + P2(3, -1);
    CHECK(oracle_min(moved).value == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("oracle instance from a problem") {
  const Eigen::MatrixXd b = (Eigen::MatrixXd(3, 1) << -2, 1, 1).finished();
  const FlowProblem p({P2(0, 0), P2(1, 0), P2(1, 1)}, {{0, 1, std::nullopt}, {0, 2, std::nullopt}},
                      AlphaParam(0.5, 1), b);
  const OracleInstance inst = oracle_instance(p);
  CHECK(inst.sources == std::vector<int>{0, 0});
  CHECK(inst.wells == std::vector<int>{1, 2});
  const Eigen::MatrixXd frac = (Eigen::MatrixXd(3, 1) << -1.5, 1, 0.5).finished();
  const FlowProblem q({P2(0, 0), P2(1, 0), P2(1, 1)}, {{0, 1, std::nullopt}, {0, 2, std::nullopt}},
                      AlphaParam(0.5, 1), frac);
  CHECK_THROWS_AS(oracle_instance(q), Error);
}

TEST_CASE("random competitors keep the boundary and are reproducible") {
  const PolyChain z46 = testing::Example46();
  const ZeroChain b46 = boundary(z46);
  const PolyChain z47 = testing::Example47();
  const ZeroChain b47 = boundary(z47);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const PolyChain c = random_competitor(b46, seed);
    CHECK(approx_equal(boundary(c), b46, 1e-8));
    CHECK(mass(c) >= 8.0 - 1e-9);
    const PolyChain d = random_competitor(b47, seed);
    CHECK(approx_equal(boundary(d), b47, 1e-8));
    CHECK(mass(d) >= mass(z47) - 1e-9);
    const PolyChain e = perturbed_competitor(z47, seed, 0.5);
    CHECK(approx_equal(boundary(e), b47, 1e-8));
  }
  const PolyChain first = random_competitor(b46, 7);
  const PolyChain second = random_competitor(b46, 7);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first.pieces()[i].segment.p() == second.pieces()[i].segment.p());
    CHECK(first.pieces()[i].segment.q() == second.pieces()[i].segment.q());
    CHECK(first.pieces()[i].theta == second.pieces()[i].theta);
  }
}

}  // namespace
}  // namespace gsnet
