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

// JSON documents and SVG rendering.
//
//   chain:       {"dim", "n", "alpha", "pieces": [{"p", "q", "theta"}]}
//   zero chain:  {"dim", "n", "alpha", "atoms": [{"x", "eta"}]}
//   form:        {"dim", "n", "alpha", "matrix": [[...] x dim]}   (d x n)
//   problem:     {"alpha", "n", "nodes": [[...]],
//                 "edges": [{"u", "v", "len"?}],
//                 "boundary": [{"node" | "x", "eta"}]}
//   decomposition: {"paths": [chain], "cycles": [chain], "pairing": [...]}
//
// Readers validate shape and types and throw gsnet::Error naming the
// offending field.

#ifndef GSNET_IO_H_
#define GSNET_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "gsnet/calibration.h"
#include "gsnet/chain.h"
#include "gsnet/decompose.h"
#include "gsnet/oracle.h"
#include "gsnet/solver.h"
#include "json.hpp"

namespace gsnet {

using Json = nlohmann::json;

Json to_json(const PolyChain& z);
Json to_json(const ZeroChain& b);
Json to_json(const ConstantForm& w);
Json to_json(const PathDecomposition& d);
Json to_json(const CalibrationReport& r);
Json to_json(const FlowSolution& s);
Json to_json(const DualCertificate& c);
Json to_json(const OracleResult& r);

PolyChain chain_from_json(const Json& j, double tol = kDefaultTol);
ZeroChain zero_chain_from_json(const Json& j, double tol = kDefaultTol);
ConstantForm form_from_json(const Json& j);

// Problem document. Boundary entries address nodes by index ("node"). With
// a grid, nodes and edges come from the grid and entries give points
// ("x") that are snapped to the nearest grid node.
FlowProblem problem_from_json(const Json& j,
                              const std::optional<GridSpec>& grid = std::nullopt);
Json to_json(const FlowProblem& p);

Json read_json_file(const std::string& path);

struct SvgStyle {
  double base_width = 0.02;  // stroke width for ||theta|| = 1, user units
  // Coordinates shown on the horizontal and vertical axes (0-based).
  int x_coord = 0;
  int y_coord = 1;
  std::string color = "#1f3b73";
};

// One path element per canonical piece, stroke width
// base_width * ||theta||_alpha, viewBox = bounding box + 5% margin. The
// y axis points up. Throws for dim != 2 unless the style selects
// coordinates of a higher-dimensional chain (orthogonal projection).
std::string export_svg(const PolyChain& z, const SvgStyle& style = {},
                       bool allow_projection = false);

}  // namespace gsnet

#endif  // GSNET_IO_H_
