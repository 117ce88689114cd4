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

#include "gsnet/convert.h"

#include <cmath>
#include <string>

#include "gsnet/decompose.h"
#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "convert";

}  // namespace

LiftResult lift(const PolyChain& t, double tol) {
  return lift(t, boundary(t, tol), tol);
}

LiftResult lift(const PolyChain& t, const ZeroChain& b, double tol) {
  const PathDecomposition d = decompose(t, b, tol);
  if (!d.cycles.empty()) {
    throw ValidationError(kModule, "chain",
                          "chain contains " + std::to_string(d.cycles.size()) +
                              " cycle(s); strip cycles before lifting");
  }
  const int m = static_cast<int>(d.paths.size());
  if (m == 0) {
    throw ValidationError(kModule, "boundary", "empty boundary, nothing to lift");
  }
  const AlphaParam group(t.alpha_param().alpha(), m);
  std::vector<Piece> pieces;
  for (int i = 0; i < m; ++i) {
    const GroupVector g = unit_group_vector(i, m);
    for (const Piece& piece : d.paths[i].pieces()) {
      pieces.push_back(Piece{piece.segment, g});
    }
  }
  return LiftResult{canonicalize(PolyChain(group, t.dim(), std::move(pieces)), tol),
                    d.pairing};
}

PolyChain collapse(const PolyChain& z, double tol) {
  std::vector<Piece> pieces;
  pieces.reserve(z.size());
  for (const Piece& piece : z.pieces()) {
    pieces.push_back(Piece{piece.segment, GroupVector::Constant(1, piece.theta.sum())});
  }
  return canonicalize(
      PolyChain(z.alpha_param().with_n(1), z.dim(), std::move(pieces)), tol);
}

RescaleContext::RescaleContext(int n, double alpha)
    : n_(n),
      alpha_(alpha),
      flow_scale_(1.0 / n),
      group_scale_(std::pow(static_cast<double>(n), -alpha)) {
  if (n < 1) throw ValidationError(kModule, "n", "n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(kModule, "alpha", "alpha must lie inside (0,1)");
  }
}

LiftResult lift_rescaled(const PolyChain& tp, const RescaleContext& ctx,
                         const std::optional<ZeroChain>& bp, double tol) {
  if (!is_lattice(tp, ctx.flow_scale(), tol)) {
    throw ValidationError(kModule, "theta",
                          "multiplicities are not in n^{-1}Z for n = " +
                              std::to_string(ctx.n()));
  }
  const PolyChain t = scaled(tp, ctx.n());
  const ZeroChain b = bp ? scaled(*bp, ctx.n()) : boundary(t, tol);
  LiftResult lifted = lift(t, b, tol);
  if (lifted.chain.n() != ctx.n()) {
    throw ValidationError(kModule, "boundary",
                          "boundary mass is " + std::to_string(2 * lifted.chain.n()) +
                              ", expected 2n = " + std::to_string(2 * ctx.n()));
  }
  lifted.chain = scaled(lifted.chain, ctx.group_scale());
  return lifted;
}

PolyChain collapse_rescaled(const PolyChain& zp, const RescaleContext& ctx,
                            double tol) {
  if (zp.n() != ctx.n()) {
    throw ValidationError(kModule, "n", "group dimension differs from n");
  }
  if (!is_lattice(zp, ctx.group_scale(), tol)) {
    throw ValidationError(kModule, "theta",
                          "multiplicities are not in n^{-alpha}Z^n");
  }
  return scaled(collapse(scaled(zp, 1.0 / ctx.group_scale()), tol),
                ctx.flow_scale());
}

}  // namespace gsnet
