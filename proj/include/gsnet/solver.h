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

// Convex group-norm flow problem on a graph:
//
//   minimize    sum_e len_e * ||theta_e||_alpha
//   subject to  A theta = b           (one column per group coordinate)
//
// where A is the signed node-edge incidence matrix (+1 at the head of an
// edge, -1 at its tail, so A theta is the boundary of the flow) and b is
// the node x n boundary array. The dual is
//
//   maximize    <b, psi>
//   subject to  ||psi_v - psi_u||_{dual} <= len_e   for every edge u -> v,
//
// whose feasible points are discrete calibrations. Solved with the
// first-order primal-dual (Chambolle-Pock) iteration; the reported bounds
// are recomputed from an exactly feasible primal point (the iterate
// projected onto {A theta = b}) and a dual point rescaled into the
// constraint set, so the gap is a true optimality certificate.

#ifndef GSNET_SOLVER_H_
#define GSNET_SOLVER_H_

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gsnet/chain.h"

namespace gsnet {

struct EdgeSpec {
  int u;
  int v;
  std::optional<double> length;  // default: Euclidean distance
};

struct Edge {
  int u;
  int v;
  double length;
};

class FlowProblem {
 public:
  // boundary is nodes x n. Throws when a column does not sum to zero on
  // some connected component of the graph.
  FlowProblem(std::vector<Point> nodes, const std::vector<EdgeSpec>& edges,
              AlphaParam alpha_param, Eigen::MatrixXd boundary,
              double tol = 1e-9);

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const AlphaParam& alpha_param() const { return alpha_param_; }
  const Eigen::MatrixXd& boundary() const { return boundary_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int n() const { return alpha_param_.n(); }
  // Connected component id per node.
  const std::vector<int>& component() const { return component_; }

 private:
  std::vector<Point> nodes_;
  std::vector<Edge> edges_;
  AlphaParam alpha_param_;
  Eigen::MatrixXd boundary_;
  std::vector<int> component_;
};

struct SolverParams {
  int max_iter = 200000;
  double gap_tol = 1e-7;
  double feas_tol = 1e-9;
  // Zero selects 0.99 / ||A||.
  double primal_step = 0.0;
  double dual_step = 0.0;
  int check_every = 100;
};

struct TracePoint {
  int iteration;
  double primal;  // best feasible primal value so far
  double dual;    // best dual lower bound so far
};

struct FlowSolution {
  Eigen::MatrixXd theta;  // edges x n, feasible
  Eigen::MatrixXd phi;    // nodes x n, dual feasible potentials
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double feasibility = 0.0;  // max |A theta - b|
  int iterations = 0;
  bool converged = false;
  std::vector<TracePoint> trace;
};

FlowSolution solve(const FlowProblem& p, const SolverParams& params = {});

struct DualCertificate {
  double cond_i_residual;    // max over active edges
  double cond_iii_excess;    // max over edges of ||dphi||/len - 1, >= 0
  double lower_bound;        // <b, phi>
  double primal_value;
  int active_edges;
};

// Activity threshold: ||theta_e|| > activity * max_e ||theta_e||.
DualCertificate dual_certificate(const FlowSolution& s, const FlowProblem& p,
                                 double activity = 1e-6);

// Objective and dual objective evaluated from scratch.
double primal_objective(const FlowProblem& p, const Eigen::MatrixXd& theta);
double dual_objective(const FlowProblem& p, const Eigen::MatrixXd& phi);
// A theta
Eigen::MatrixXd divergence(const FlowProblem& p, const Eigen::MatrixXd& theta);

// Euclidean projection onto {y : ||y||_q <= radius}.
Eigen::VectorXd project_lq_ball(const Eigen::VectorXd& x, double q,
                                double radius);

// The flow as a vector chain over the graph's nodes.
PolyChain flow_chain(const FlowSolution& s, const FlowProblem& p,
                     double drop_below = 1e-9);

// Planar grid with nx * ny nodes, node (i, j) at origin + spacing*(i, j)
// with index j*nx + i. Connectivity 4 or 8.
struct GridSpec {
  Point origin;
  int nx;
  int ny;
  double spacing;
  int connectivity;
};

struct Graph {
  std::vector<Point> nodes;
  std::vector<EdgeSpec> edges;
};

Graph build_grid(const GridSpec& grid);
// Nearest grid node; throws if farther than spacing / 2.
int snap_to_grid(const GridSpec& grid, const Point& x);
// Problem whose boundary atoms are snapped to grid nodes.
FlowProblem grid_problem(const GridSpec& grid, AlphaParam alpha_param,
                         const std::vector<Atom>& atoms);

}  // namespace gsnet

#endif  // GSNET_SOLVER_H_
