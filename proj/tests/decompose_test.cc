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

#include <set>

#include "doctest.h"
#include "generators.h"
#include "gsnet/decompose.h"
#include "gsnet/error.h"

namespace gsnet {
namespace {

using testing::P2;
using testing::Rng;
using testing::Scalar;

// Vertex sequence of a path chain, following pieces head to tail.
std::vector<Point> Walk(const PolyChain& path) {
  std::vector<Point> out;
  if (path.empty()) return out;
  out.push_back(path.pieces().front().segment.p());
  for (const Piece& p : path.pieces()) {
    CHECK(p.segment.p().isApprox(out.back()));
    out.push_back(p.segment.q());
  }
  return out;
}

bool IsSimple(const std::vector<Point>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if ((vertices[i] - vertices[j]).norm() < 1e-9) return false;
    }
  }
  return true;
}

double TotalMass(const PathDecomposition& d) {
  double total = 0.0;
  for (const PolyChain& p : d.paths) total += mass(p);
  for (const PolyChain& c : d.cycles) total += mass(c);
  return total;
}

TEST_CASE("V network splits into two paths") {
  const PathDecomposition d = decompose(testing::IntroNetwork());
  CHECK(d.paths.size() == 2);
  CHECK(d.cycles.empty());
  const std::set<std::pair<double, double>> ends = [&] {
    std::set<std::pair<double, double>> s;
    for (const PolyChain& p : d.paths) {
      const auto w = Walk(p);
      CHECK(w.front().isApprox(P2(0, 0)));
      s.insert({w.back()[0], w.back()[1]});
    }
    return s;
  }();
  CHECK(ends == std::set<std::pair<double, double>>{{2, -1}, {2, 1}});
}

TEST_CASE("closed triangle becomes one cycle") {
  const PolyChain tri =
      polyline(AlphaParam(0.5, 1), {P2(0, 0), P2(1, 0), P2(0, 1), P2(0, 0)}, Scalar(1));
  const PathDecomposition d = decompose(tri);
  CHECK(d.paths.empty());
  REQUIRE(d.cycles.size() == 1);
  CHECK(strip_cycles(d).empty());
  CHECK(approx_equal(reconstruct(d), tri));
}

TEST_CASE("example network decomposes with the identity pairing") {
  const PolyChain t = testing::Example46Scalar();
  const PathDecomposition d = decompose(t);
  REQUIRE(d.paths.size() == 2);
  CHECK(d.cycles.empty());
  CHECK(TotalMass(d) == doctest::Approx(mass(t)).epsilon(1e-12));
  // Boundary order: y1 (1,0) is the first well, x1 the first source.
  CHECK(d.pairing == std::vector<int>{0, 1});
  CHECK(Walk(d.paths[0]).front().isApprox(P2(-3, -2)));
  CHECK(Walk(d.paths[0]).back().isApprox(P2(1, 0)));
}

TEST_CASE("path plus disjoint triangle") {
  const AlphaParam a(0.5, 1);
  const PolyChain path = polyline(a, {P2(0, 0), P2(1, 0), P2(2, 0)}, Scalar(1));
  const PolyChain tri = polyline(a, {P2(5, 5), P2(6, 5), P2(5, 6), P2(5, 5)}, Scalar(1));
  const PathDecomposition d = decompose(path + tri);
  CHECK(d.paths.size() == 1);
  CHECK(d.cycles.size() == 1);
  CHECK(approx_equal(strip_cycles(d), path));
}

TEST_CASE("decompose rejects bad input") {
  const PolyChain half(AlphaParam(0.5, 1), 2, {{Segment(P2(0, 0), P2(1, 0)), Scalar(0.5)}});
  CHECK_THROWS_AS(decompose(half), Error);
  const PolyChain vec = testing::Example46();
  CHECK_THROWS_AS(decompose(vec), Error);
  const PolyChain t = testing::IntroNetwork();
  const ZeroChain wrong(AlphaParam(0.5, 1), 2, {{P2(0, 0), Scalar(-1)}, {P2(2, 1), Scalar(1)}});
  CHECK_THROWS_AS(decompose(t, wrong), Error);
}

TEST_CASE("split at vertices breaks T junctions") {
  const AlphaParam a(0.5, 1);
  const PolyChain t(a, 2, {{Segment(P2(0, 0), P2(2, 0)), Scalar(1)},
                           {Segment(P2(1, 0), P2(1, 1)), Scalar(1)}});
  CHECK(split_at_vertices(t).size() == 3);
}

TEST_CASE("decomposition invariants on random lattice walks") {
  Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const PolyChain t = testing::RandomLatticeWalks(rng, rng.uniform(0.1, 0.9), rng.integer(1, 4),
                                                    rng.integer(1, 9));
    const PathDecomposition d = decompose(t);
    const ZeroChain b = boundary(t);
    CHECK(2 * static_cast<double>(d.paths.size()) == doctest::Approx(mass(b)));
    CHECK(approx_equal(reconstruct(d), t));
    CHECK(TotalMass(d) == doctest::Approx(mass(t)).epsilon(1e-9));
    for (const PolyChain& p : d.paths) {
      for (const Piece& piece : p.pieces()) CHECK(std::abs(piece.theta[0]) == 1.0);
      CHECK(IsSimple(Walk(p)));
      CHECK(mass(boundary(p)) == doctest::Approx(2.0));
    }
    CHECK(gs_energy(strip_cycles(d)) <= gs_energy(t) + 1e-12);
  }
}

}  // namespace
}  // namespace gsnet
