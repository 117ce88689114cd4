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

#include "gsnet/tree.h"

#include <cmath>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "tree";
const double kHalfSqrt2 = std::sqrt(2.0) / 2.0;

}  // namespace

TreeSpec::TreeSpec(int depth, int depth_cap) : depth_(depth) {
  if (depth < 0) throw ValidationError(kModule, "depth", "depth must be >= 0");
  if (depth > depth_cap) {
    throw Error(ErrorKind::kLimitsExceeded, kModule, "depth",
                "depth " + std::to_string(depth) + " exceeds cap " +
                    std::to_string(depth_cap));
  }
}

BranchDirections branch_directions(const Point& x) {
  Eigen::Index l = -1;
  for (Eigen::Index i = x.size() - 1; i >= 0; --i) {
    if (x[i] != 0.0) {
      l = i + 1;
      break;
    }
  }
  if (l < 0) throw ValidationError(kModule, "x", "zero direction");
  const Eigen::Index dim = std::max(x.size(), 2 * l);
  BranchDirections out{Point::Zero(dim), Point::Zero(dim)};
  for (Eigen::Index i = 0; i < l; ++i) {
    const double c = kHalfSqrt2 * x[i];
    out.y[i] += c;
    out.y[l + i] += c;
    out.z[i] += c;
    out.z[l + i] -= c;
  }
  return out;
}

TreeChain build_tree(const TreeSpec& spec) {
  const int depth = spec.depth();
  const int dim = spec.ambient_dim();
  const int leaf_count = 1 << depth;

  std::vector<Piece> pieces;
  TreeChain t{depth, PolyChain(AlphaParam(0.5, 1), dim), {}, {}, {}, {}};

  // Level 0: the trunk.
  const Point origin = Point::Zero(dim);
  const Point e1 = Point::Unit(dim, 0);
  pieces.push_back(Piece{Segment(origin, e1), GroupVector::Ones(1)});
  t.level.push_back(0);
  t.orientation.push_back(e1);
  t.leaf_range.emplace_back(0, leaf_count);

  std::size_t frontier_begin = 0;
  for (int level = 1; level <= depth; ++level) {
    const std::size_t frontier_end = pieces.size();
    const double length = std::pow(4.0, -level);
    const double theta = std::pow(2.0, -level);
    for (std::size_t parent = frontier_begin; parent < frontier_end; ++parent) {
      const Point q = pieces[parent].segment.q();
      BranchDirections dirs = branch_directions(t.orientation[parent]);
      dirs.y.conservativeResizeLike(Point::Zero(dim));
      dirs.z.conservativeResizeLike(Point::Zero(dim));
      const auto [lo, hi] = t.leaf_range[parent];
      const int mid = lo + (hi - lo) / 2;
      for (int child = 0; child < 2; ++child) {
        const Point& dir = child == 0 ? dirs.y : dirs.z;
        pieces.push_back(Piece{Segment(q, q + length * dir),
                               GroupVector::Constant(1, theta)});
        t.level.push_back(level);
        t.orientation.push_back(dir);
        t.leaf_range.emplace_back(child == 0 ? lo : mid, child == 0 ? mid : hi);
      }
    }
    frontier_begin = frontier_end;
  }
  for (std::size_t i = frontier_begin; i < pieces.size(); ++i) {
    t.leaves.push_back(pieces[i].segment.q());
  }
  t.chain = PolyChain(AlphaParam(0.5, 1), dim, std::move(pieces));
  return t;
}

double tree_energy(int depth) {
  double total = 0.0;
  for (int j = 0; j <= depth; ++j) total += std::pow(2.0, -1.5 * j);
  return total;
}

double tree_mass(int depth) {
  double total = 0.0;
  for (int j = 0; j <= depth; ++j) total += std::pow(4.0, -j);
  return total;
}

double full_tree_energy() { return 1.0 / (1.0 - std::pow(2.0, -1.5)); }

double tail_energy(int depth) {
  return std::pow(2.0, -1.5 * (depth + 1)) / (1.0 - std::pow(2.0, -1.5));
}

double tail_mass(int depth) {
  return std::pow(4.0, -(depth + 1)) / (1.0 - 0.25);
}

std::vector<int> leaf_pieces(const TreeChain& t) {
  std::vector<int> out;
  for (std::size_t i = 0; i < t.level.size(); ++i) {
    if (t.level[i] == t.depth) out.push_back(static_cast<int>(i));
  }
  return out;
}

ConstantForm tree_calibration(const TreeChain& t) {
  const std::vector<int> leaves = leaf_pieces(t);
  const int dim = t.chain.dim();
  if (static_cast<int>(leaves.size()) != dim) {
    throw ValidationError(kModule, "depth", "tree depth does not match its dimension");
  }
  Eigen::MatrixXd w(dim, dim);
  for (int j = 0; j < dim; ++j) w.col(j) = t.orientation[leaves[j]];
  return ConstantForm(std::move(w), 0.5);
}

PolyChain lift_tree(const TreeChain& t) {
  const int n = 1 << t.depth;
  const double scale = std::pow(2.0, -0.5 * t.depth);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < t.chain.size(); ++i) {
    GroupVector theta = GroupVector::Zero(n);
    const auto [lo, hi] = t.leaf_range[i];
    theta.segment(lo, hi - lo).setConstant(scale);
    pieces.push_back(Piece{t.chain.pieces()[i].segment, std::move(theta)});
  }
  return PolyChain(AlphaParam(0.5, n), t.chain.dim(), std::move(pieces));
}

}  // namespace gsnet
