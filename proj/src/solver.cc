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

#include "gsnet/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "solver";

// Transposed incidence: (A^T phi)_e = phi_v - phi_u.
Eigen::MatrixXd Gradient(const FlowProblem& p, const Eigen::MatrixXd& phi) {
  Eigen::MatrixXd out(p.edge_count(), phi.cols());
  for (int e = 0; e < p.edge_count(); ++e) {
    const Edge& edge = p.edges()[e];
    out.row(e) = phi.row(edge.v) - phi.row(edge.u);
  }
  return out;
}

// Projects each column onto the complement of the per-component constants,
// the range of the graph Laplacian.
void RemoveComponentMeans(const FlowProblem& p, Eigen::MatrixXd& r) {
  const std::vector<int>& comp = p.component();
  const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(count, r.cols());
  Eigen::VectorXd sizes = Eigen::VectorXd::Zero(count);
  for (int v = 0; v < p.node_count(); ++v) {
    sums.row(comp[v]) += r.row(v);
    sizes[comp[v]] += 1.0;
  }
  for (int v = 0; v < p.node_count(); ++v) {
    r.row(v) -= sums.row(comp[v]) / sizes[comp[v]];
  }
}

// Solves L y = r column by column with conjugate gradients, L = A A^T.
Eigen::MatrixXd SolveLaplacian(const FlowProblem& p, Eigen::MatrixXd r) {
  RemoveComponentMeans(p, r);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(r.rows(), r.cols());
  const int max_iter = 10 * std::max(10, p.node_count());
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(r.rows());
    Eigen::VectorXd res = r.col(j);
    const double target = 1e-15 * std::max(1.0, res.norm());
    Eigen::VectorXd dir = res;
    double rr = res.squaredNorm();
    for (int it = 0; it < max_iter && std::sqrt(rr) > target; ++it) {
      const Eigen::VectorXd ld = divergence(p, Gradient(p, dir));
      const double denom = dir.dot(ld);
      if (denom <= 0.0) break;
      const double step = rr / denom;
      x += step * dir;
      res -= step * ld;
      const double rr_next = res.squaredNorm();
      dir = res + (rr_next / rr) * dir;
      rr = rr_next;
    }
    y.col(j) = x;
  }
  return y;
}

// Largest root t in [0, a] of t + c t^{q-1} = a (a > 0, c > 0).
double SolveCoordinate(double a, double c, double q) {
  double lo = 0.0;
  double hi = a;
  double t = a;
  for (int it = 0; it < 50; ++it) {
    const double g = t + c * std::pow(t, q - 1.0) - a;
    if (std::abs(g) <= 1e-15 * a) break;
    if (g > 0) hi = t; else lo = t;
    const double dg = 1.0 + c * (q - 1.0) * std::pow(t, q - 2.0);
    double next = t - g / dg;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

}  // namespace

FlowProblem::FlowProblem(std::vector<Point> nodes,
                         const std::vector<EdgeSpec>& edges,
                         AlphaParam alpha_param, Eigen::MatrixXd boundary,
                         double tol)
    : nodes_(std::move(nodes)),
      alpha_param_(alpha_param),
      boundary_(std::move(boundary)) {
  const int count = static_cast<int>(nodes_.size());
  if (count == 0) throw ValidationError(kModule, "nodes", "no nodes");
  for (const Point& x : nodes_) {
    if (x.size() != nodes_.front().size()) {
      throw ValidationError(kModule, "nodes", "nodes have different dimensions");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeSpec& e = edges[i];
    const std::string field = "edges[" + std::to_string(i) + "]";
    if (e.u < 0 || e.u >= count || e.v < 0 || e.v >= count || e.u == e.v) {
      throw ValidationError(kModule, field, "bad endpoint indices");
    }
    const double len = e.length.value_or((nodes_[e.v] - nodes_[e.u]).norm());
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw ValidationError(kModule, field + ".len", "edge length must be > 0");
    }
    edges_.push_back(Edge{e.u, e.v, len});
  }
  if (boundary_.rows() != count || boundary_.cols() != alpha_param_.n()) {
    throw ValidationError(kModule, "boundary", "boundary must be nodes x n");
  }
  if (!boundary_.allFinite()) {
    throw ValidationError(kModule, "boundary", "non-finite boundary entries");
  }

  // Connected components by union-find.
  std::vector<int> parent(count);
  for (int v = 0; v < count; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : edges_) parent[find(e.u)] = find(e.v);
  component_.assign(count, -1);
  int next = 0;
  std::vector<int> label(count, -1);
  for (int v = 0; v < count; ++v) {
    const int root = find(v);
    if (label[root] < 0) label[root] = next++;
    component_[v] = label[root];
  }

  const double scale = std::max(1.0, boundary_.cwiseAbs().maxCoeff());
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(next, alpha_param_.n());
  for (int v = 0; v < count; ++v) sums.row(component_[v]) += boundary_.row(v);
  for (int c = 0; c < next; ++c) {
    for (int j = 0; j < alpha_param_.n(); ++j) {
      if (std::abs(sums(c, j)) > tol * scale * count) {
        throw ValidationError(
            kModule, "boundary",
            next == 1 ? "boundary component " + std::to_string(j) +
                            " is unbalanced"
                      : "boundary component " + std::to_string(j) +
                            " is unbalanced on a connected component "
                            "(disconnected support)");
      }
    }
  }
}

Eigen::MatrixXd divergence(const FlowProblem& p, const Eigen::MatrixXd& theta) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p.node_count(), theta.cols());
  for (int e = 0; e < p.edge_count(); ++e) {
    const Edge& edge = p.edges()[e];
    out.row(edge.v) += theta.row(e);
    out.row(edge.u) -= theta.row(e);
  }
  return out;
}

double primal_objective(const FlowProblem& p, const Eigen::MatrixXd& theta) {
  double total = 0.0;
  for (int e = 0; e < p.edge_count(); ++e) {
    total += p.edges()[e].length *
             lp_norm(theta.row(e).transpose(), p.alpha_param().norm_exponent());
  }
  return total;
}

double dual_objective(const FlowProblem& p, const Eigen::MatrixXd& phi) {
  return (p.boundary().array() * phi.array()).sum();
}

Eigen::VectorXd project_lq_ball(const Eigen::VectorXd& x, double q,
                                double radius) {
  const double norm = lp_norm(x, q);
  if (norm <= radius) return x;
  if (radius <= 0.0) return Eigen::VectorXd::Zero(x.size());
  if (q == 2.0) return x * (radius / norm);

  // KKT: y_j = sign(x_j) t_j with t_j + lambda q t_j^{q-1} = |x_j|, and
  // lambda > 0 chosen so that sum t_j^q = radius^q. h(lambda) is
  // decreasing; safeguarded Newton on log-scale bracket.
  const Eigen::VectorXd a = x.cwiseAbs();
  const double target = std::pow(radius, q);
  Eigen::VectorXd t(x.size());
  auto evaluate = [&](double lambda, double* slope) {
    double h = -target;
    double dh = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      if (a[j] == 0.0) {
        t[j] = 0.0;
        continue;
      }
      t[j] = SolveCoordinate(a[j], lambda * q, q);
      const double tj = t[j];
      h += std::pow(tj, q);
      if (tj > 0.0) {
        const double dt = -q * std::pow(tj, q - 1.0) /
                          (1.0 + lambda * q * (q - 1.0) * std::pow(tj, q - 2.0));
        dh += q * std::pow(tj, q - 1.0) * dt;
      }
    }
    *slope = dh;
    return h;
  };

  double lo = 0.0;
  double hi = 1.0;
  double slope = 0.0;
  while (evaluate(hi, &slope) > 0.0) hi *= 2.0;
  double lambda = 0.5 * hi;
  for (int it = 0; it < 50; ++it) {
    const double h = evaluate(lambda, &slope);
    if (std::abs(h) <= 1e-12 * target) break;
    if (h > 0.0) lo = lambda; else hi = lambda;
    double next = slope < 0.0 ? lambda - h / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
  }
  evaluate(lambda, &slope);
  Eigen::VectorXd y(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) y[j] = x[j] < 0 ? -t[j] : t[j];
  return y;
}

FlowSolution solve(const FlowProblem& p, const SolverParams& params) {
  const int edge_count = p.edge_count();
  const int n = p.n();
  const double q = p.alpha_param().dual_exponent();
  const double dual_q = q;
  const Eigen::MatrixXd& b = p.boundary();

  // ||A|| by power iteration on A^T A from a fixed start.
  double op_norm = 0.0;
  if (edge_count > 0) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(edge_count, 1);
    for (int e = 0; e < edge_count; ++e) x(e, 0) += 0.01 * (e % 7);
    for (int it = 0; it < 100; ++it) {
      Eigen::MatrixXd y = Gradient(p, divergence(p, x));
      const double norm = y.norm();
      if (norm == 0.0) break;
      op_norm = std::sqrt(norm / x.norm());
      x = y / norm;
    }
  }
  const double tau = params.primal_step > 0 ? params.primal_step
                                            : 0.99 / std::max(op_norm, 1e-12);
  const double sigma = params.dual_step > 0 ? params.dual_step
                                            : 0.99 / std::max(op_norm, 1e-12);

  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(edge_count, n);
  Eigen::MatrixXd theta_bar = theta;
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(p.node_count(), n);

  FlowSolution best;
  best.primal_value = std::numeric_limits<double>::infinity();
  best.dual_value = -std::numeric_limits<double>::infinity();

  auto certify = [&](int iteration) {
    // Primal: project the iterate onto {A theta = b}.
    Eigen::MatrixXd residual = divergence(p, theta) - b;
    Eigen::MatrixXd feasible = theta - Gradient(p, SolveLaplacian(p, residual));
    const double primal = primal_objective(p, feasible);
    if (primal < best.primal_value) {
      best.primal_value = primal;
      best.theta = std::move(feasible);
    }
    // Dual: the saddle variable is -psi; rescale into the constraint set.
    Eigen::MatrixXd psi = -phi;
    const Eigen::MatrixXd grad = Gradient(p, psi);
    double ratio = 0.0;
    for (int e = 0; e < edge_count; ++e) {
      ratio = std::max(ratio, lp_norm(grad.row(e).transpose(), dual_q) /
                                  p.edges()[e].length);
    }
    psi /= std::max(1.0, ratio);
    const double dual = dual_objective(p, psi);
    if (dual > best.dual_value) {
      best.dual_value = dual;
      best.phi = std::move(psi);
    }
    best.trace.push_back(TracePoint{iteration, best.primal_value, best.dual_value});
  };

  int iteration = 0;
  bool done = false;
  while (!done) {
    if (iteration % params.check_every == 0 || iteration == params.max_iter) {
      certify(iteration);
      const double feas = (divergence(p, best.theta) - b).cwiseAbs().maxCoeff();
      if (best.primal_value - best.dual_value <= params.gap_tol &&
          feas <= params.feas_tol) {
        best.converged = true;
        done = true;
      }
      if (iteration >= params.max_iter) done = true;
      if (done) break;
    }
    phi += sigma * (divergence(p, theta_bar) - b);
    const Eigen::MatrixXd trial = theta - tau * Gradient(p, phi);
    const Eigen::MatrixXd previous = theta;
    for (int e = 0; e < edge_count; ++e) {
      const double radius = tau * p.edges()[e].length;
      const Eigen::VectorXd x = trial.row(e).transpose();
      theta.row(e) = (x - project_lq_ball(x, q, radius)).transpose();
    }
    theta_bar = 2.0 * theta - previous;
    ++iteration;
  }

  // Final values are recomputed from scratch on the retained points.
  best.iterations = iteration;
  best.primal_value = primal_objective(p, best.theta);
  best.dual_value = dual_objective(p, best.phi);
  best.gap = best.primal_value - best.dual_value;
  best.feasibility = (divergence(p, best.theta) - b).cwiseAbs().maxCoeff();
  return best;
}

DualCertificate dual_certificate(const FlowSolution& s, const FlowProblem& p,
                                 double activity) {
  const AlphaParam& a = p.alpha_param();
  const Eigen::MatrixXd grad = Gradient(p, s.phi);
  double max_norm = 0.0;
  for (int e = 0; e < p.edge_count(); ++e) {
    max_norm = std::max(max_norm, alpha_norm(s.theta.row(e).transpose(), a));
  }
  DualCertificate cert{0.0, 0.0, dual_objective(p, s.phi),
                       primal_objective(p, s.theta), 0};
  for (int e = 0; e < p.edge_count(); ++e) {
    const double len = p.edges()[e].length;
    const GroupVector th = s.theta.row(e).transpose();
    const GroupVector g = grad.row(e).transpose();
    cert.cond_iii_excess = std::max(cert.cond_iii_excess, dual_norm(g, a) / len - 1.0);
    const double norm = alpha_norm(th, a);
    if (norm > activity * max_norm && norm > 0.0) {
      ++cert.active_edges;
      cert.cond_i_residual =
          std::max(cert.cond_i_residual, std::abs(g.dot(th) - len * norm));
    }
  }
  cert.cond_iii_excess = std::max(0.0, cert.cond_iii_excess);
  return cert;
}

PolyChain flow_chain(const FlowSolution& s, const FlowProblem& p,
                     double drop_below) {
  std::vector<Piece> pieces;
  for (int e = 0; e < p.edge_count(); ++e) {
    const GroupVector th = s.theta.row(e).transpose();
    if (th.cwiseAbs().maxCoeff() <= drop_below) continue;
    const Edge& edge = p.edges()[e];
    pieces.push_back(Piece{Segment(p.nodes()[edge.u], p.nodes()[edge.v]), th});
  }
  return PolyChain(p.alpha_param(), static_cast<int>(p.nodes().front().size()),
                   std::move(pieces));
}

Graph build_grid(const GridSpec& grid) {
  if (grid.origin.size() != 2) {
    throw ValidationError(kModule, "grid.origin", "grid origin must be 2-D");
  }
  if (grid.nx < 1 || grid.ny < 1 || !(grid.spacing > 0.0)) {
    throw ValidationError(kModule, "grid", "grid needs nx, ny >= 1, spacing > 0");
  }
  if (grid.connectivity != 4 && grid.connectivity != 8) {
    throw ValidationError(kModule, "grid.connectivity", "connectivity must be 4 or 8");
  }
  Graph g;
  auto index = [&](int i, int j) { return j * grid.nx + i; };
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      Point x = grid.origin;
      x[0] += grid.spacing * i;
      x[1] += grid.spacing * j;
      g.nodes.push_back(std::move(x));
    }
  }
  const double diag = grid.spacing * std::sqrt(2.0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (i + 1 < grid.nx) g.edges.push_back({index(i, j), index(i + 1, j), grid.spacing});
      if (j + 1 < grid.ny) g.edges.push_back({index(i, j), index(i, j + 1), grid.spacing});
      if (grid.connectivity == 8 && j + 1 < grid.ny) {
        if (i + 1 < grid.nx) g.edges.push_back({index(i, j), index(i + 1, j + 1), diag});
        if (i > 0) g.edges.push_back({index(i, j), index(i - 1, j + 1), diag});
      }
    }
  }
  return g;
}

int snap_to_grid(const GridSpec& grid, const Point& x) {
  if (x.size() != 2) throw ValidationError(kModule, "x", "grid points are 2-D");
  const double fi = (x[0] - grid.origin[0]) / grid.spacing;
  const double fj = (x[1] - grid.origin[1]) / grid.spacing;
  const int i = std::clamp(static_cast<int>(std::lround(fi)), 0, grid.nx - 1);
  const int j = std::clamp(static_cast<int>(std::lround(fj)), 0, grid.ny - 1);
  Point node = grid.origin;
  node[0] += grid.spacing * i;
  node[1] += grid.spacing * j;
  if ((node - x).norm() > grid.spacing / 2) {
    throw ValidationError(kModule, "boundary",
                          "boundary point is farther than spacing/2 from the grid");
  }
  return j * grid.nx + i;
}

FlowProblem grid_problem(const GridSpec& grid, AlphaParam alpha_param,
                         const std::vector<Atom>& atoms) {
  Graph g = build_grid(grid);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.nodes.size()),
                                            alpha_param.n());
  for (const Atom& atom : atoms) {
    if (atom.eta.size() != alpha_param.n()) {
      throw ValidationError(kModule, "boundary.eta", "eta length differs from n");
    }
    b.row(snap_to_grid(grid, atom.x)) += atom.eta.transpose();
  }
  return FlowProblem(std::move(g.nodes), g.edges, alpha_param, std::move(b));
}

}  // namespace gsnet
