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

// Passage between scalar irrigation networks and chains with coefficients
// in R^n.
//
// lift() decomposes a scalar integral network into unit paths and tags the
// path that ends at well i with the unit vector g_i; the resulting vector
// chain has mass equal to the energy of the path superposition. collapse()
// goes back by summing coordinates, and never increases cost:
// energy(collapse(Z)) <= mass(Z), with equality when every coordinate of
// every multiplicity is 0 or 1.
//
// The rescaled variants work with networks carrying multiplicities in
// n^{-1}Z (total boundary mass 2) and vector chains with coefficients in
// n^{-alpha}Z^n.

#ifndef GSNET_CONVERT_H_
#define GSNET_CONVERT_H_

#include <optional>
#include <vector>

#include "gsnet/chain.h"

namespace gsnet {

struct LiftResult {
  PolyChain chain;           // n = number of unit paths
  std::vector<int> pairing;  // well i is served by source unit pairing[i]
};

// Throws if t is not integral, if boundary(t) != b, or if t carries a
// directed cycle (strip cycles first).
LiftResult lift(const PolyChain& t, const ZeroChain& b,
                double tol = kDefaultTol);
LiftResult lift(const PolyChain& t, double tol = kDefaultTol);

// Scalar chain with multiplicity sum_j theta_j, canonicalized.
PolyChain collapse(const PolyChain& z, double tol = kDefaultTol);

class RescaleContext {
 public:
  RescaleContext(int n, double alpha);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  // n^{-1}
  double flow_scale() const { return flow_scale_; }
  // n^{-alpha}
  double group_scale() const { return group_scale_; }

 private:
  int n_;
  double alpha_;
  double flow_scale_;
  double group_scale_;
};

// n^{-alpha} lift(n t'). The boundary defaults to boundary(t').
LiftResult lift_rescaled(const PolyChain& tp, const RescaleContext& ctx,
                         const std::optional<ZeroChain>& bp = std::nullopt,
                         double tol = kDefaultTol);

// n^{-1} collapse(n^alpha z').
PolyChain collapse_rescaled(const PolyChain& zp, const RescaleContext& ctx,
                            double tol = kDefaultTol);

}  // namespace gsnet

#endif  // GSNET_CONVERT_H_
