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

// The infinitely branching irrigation tree, truncated at a finite depth.
//
// The trunk is the unit segment from the origin to e_1 with multiplicity 1.
// Every level-(i-1) segment with orientation x and end point q spawns two
// level-i segments from q, of length 4^{-i} and multiplicity 2^{-i}, along
// the orthonormal pair y(x), z(x) with y(x) + z(x) = sqrt(2) x. A tree of
// depth n lives in R^{2^n} and has 2^{n+1} - 1 pieces; its level-n
// orientations form an orthonormal basis. Memory grows like 4^n.

#ifndef GSNET_TREE_H_
#define GSNET_TREE_H_

#include <utility>
#include <vector>

#include "gsnet/calibration.h"
#include "gsnet/chain.h"

namespace gsnet {

inline constexpr int kDefaultTreeDepthCap = 10;

class TreeSpec {
 public:
  explicit TreeSpec(int depth, int depth_cap = kDefaultTreeDepthCap);

  int depth() const { return depth_; }
  int ambient_dim() const { return 1 << depth_; }

 private:
  int depth_;
};

struct TreeChain {
  int depth;
  PolyChain chain;         // scalar, alpha = 1/2
  std::vector<int> level;  // per piece
  std::vector<Point> orientation;  // per piece, unit
  // Leaves beyond each piece, as the half-open range [first, second) of
  // leaf indices. Leaves are numbered in construction order.
  std::vector<std::pair<int, int>> leaf_range;
  std::vector<Point> leaves;  // end points of the level-depth segments
};

struct BranchDirections {
  Point y;
  Point z;
};

// y(x) = (sqrt2/2) sum_{i<=l} a_i (e_i + e_{l+i}),
// z(x) = (sqrt2/2) sum_{i<=l} a_i (e_i - e_{l+i}), where l is the index of
// the last nonzero coordinate of x. Output dimension is max(|x|, 2l).
BranchDirections branch_directions(const Point& x);

TreeChain build_tree(const TreeSpec& spec);

// Closed forms: E(T_n) = sum_{j<=n} 2^{-3j/2}, M(T_n) = sum_{j<=n} 4^{-j},
// and the remainders of the two series beyond n.
double tree_energy(int depth);
double tree_mass(int depth);
double tail_energy(int depth);
double tail_mass(int depth);
// Energy of the infinite tree, 1/(1 - 2^{-3/2}).
double full_tree_energy();

// Orthogonal matrix whose j-th column is the orientation of leaf segment j.
ConstantForm tree_calibration(const TreeChain& t);

// Vector chain with 2^n group coordinates: each piece carries
// 2^{-n/2} sum of g_k over the leaves k beyond it.
PolyChain lift_tree(const TreeChain& t);

// Indices of the pieces at the deepest level, in leaf order.
std::vector<int> leaf_pieces(const TreeChain& t);

}  // namespace gsnet

#endif  // GSNET_TREE_H_
