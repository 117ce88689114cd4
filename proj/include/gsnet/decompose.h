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

#ifndef GSNET_DECOMPOSE_H_
#define GSNET_DECOMPOSE_H_

#include <vector>

#include "gsnet/chain.h"

namespace gsnet {

// A scalar integral chain written as unit-multiplicity simple paths plus
// closed polylines. paths[i] runs from source unit pairing[i] to well unit
// i. Source and well units enumerate the boundary atoms in order, an atom
// of weight k contributing k consecutive units.
struct PathDecomposition {
  AlphaParam alpha_param;  // n == 1
  int dim;
  std::vector<PolyChain> paths;
  std::vector<PolyChain> cycles;
  std::vector<int> pairing;
};

// Greedy walk extraction with loop erasure. Sources are processed in
// boundary order; at every vertex the outgoing arc with the
// lexicographically largest direction is taken first. Throws on
// non-integral multiplicities or when boundary(t) != b.
PathDecomposition decompose(const PolyChain& t, const ZeroChain& b,
                            double tol = kDefaultTol);
PathDecomposition decompose(const PolyChain& t, double tol = kDefaultTol);

// Sum of the paths only.
PolyChain strip_cycles(const PathDecomposition& d);

// Sum of paths and cycles; canonically equal to the decomposed chain.
PolyChain reconstruct(const PathDecomposition& d);

// Splits every piece at vertices of other pieces that lie in its interior.
PolyChain split_at_vertices(const PolyChain& z, double tol = kDefaultTol);

}  // namespace gsnet

#endif  // GSNET_DECOMPOSE_H_
