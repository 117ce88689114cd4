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

#include "gsnet/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "cli-io";

const Json& Require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(kModule, where + key, "missing field");
  }
  return j.at(key);
}

double Number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(kModule, field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(kModule, field, "non-finite number");
  return v;
}

int Integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ValidationError(kModule, field, "expected an integer");
  return j.get<int>();
}

Eigen::VectorXd Vector(const Json& j, const std::string& field, int expected) {
  if (!j.is_array()) throw ValidationError(kModule, field, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    throw ValidationError(kModule, field,
                          "expected " + std::to_string(expected) + " entries, got " +
                              std::to_string(j.size()));
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = Number(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json Array(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json Matrix(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(Array(m.row(i).transpose()));
  return out;
}

struct Header {
  int dim;
  int n;
  double alpha;
};

Header ReadHeader(const Json& j) {
  Header h{Integer(Require(j, "dim", ""), "dim"), Integer(Require(j, "n", ""), "n"),
           Number(Require(j, "alpha", ""), "alpha")};
  if (h.dim < 1) throw ValidationError(kModule, "dim", "dim must be >= 1");
  return h;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

Json to_json(const PolyChain& z) {
  Json pieces = Json::array();
  for (const Piece& piece : z.pieces()) {
    pieces.push_back({{"p", Array(piece.segment.p())},
                      {"q", Array(piece.segment.q())},
                      {"theta", Array(piece.theta)}});
  }
  return {{"dim", z.dim()}, {"n", z.n()}, {"alpha", z.alpha_param().alpha()},
          {"pieces", pieces}};
}

Json to_json(const ZeroChain& b) {
  Json atoms = Json::array();
  for (const Atom& atom : b.atoms()) {
    atoms.push_back({{"x", Array(atom.x)}, {"eta", Array(atom.eta)}});
  }
  return {{"dim", b.dim()}, {"n", b.n()}, {"alpha", b.alpha_param().alpha()},
          {"atoms", atoms}};
}

Json to_json(const ConstantForm& w) {
  return {{"dim", w.dim()}, {"n", w.n()}, {"alpha", w.alpha()},
          {"matrix", Matrix(w.matrix())}};
}

Json to_json(const PathDecomposition& d) {
  Json paths = Json::array();
  for (const PolyChain& p : d.paths) paths.push_back(to_json(p));
  Json cycles = Json::array();
  for (const PolyChain& c : d.cycles) cycles.push_back(to_json(c));
  return {{"paths", paths}, {"cycles", cycles}, {"pairing", d.pairing}};
}

Json to_json(const CalibrationReport& r) {
  return {{"cond_i_residual", r.cond_i_residual},
          {"cond_iii_excess", r.cond_iii_excess},
          {"comass_estimate", r.comass.estimate},
          {"comass_upper_bound", r.comass.upper_bound},
          {"comass_certified", r.comass.certified},
          {"heuristic_bound", !r.comass.certified},
          {"verdict",
           {{"cond_i", r.cond_i_pass ? "pass" : "fail"},
            {"cond_ii", r.cond_ii_pass ? "pass" : "fail"},
            {"cond_iii", r.cond_iii_pass ? "pass" : "fail"},
            {"cond_iii_certified", r.cond_iii_certified},
            {"overall", r.pass ? "pass" : "fail"}}}};
}

Json to_json(const FlowSolution& s) {
  return {{"theta", Matrix(s.theta)},
          {"phi", Matrix(s.phi)},
          {"primal_value", s.primal_value},
          {"dual_value", s.dual_value},
          {"gap", s.gap},
          {"feasibility", s.feasibility},
          {"iterations", s.iterations},
          {"converged", s.converged}};
}

Json to_json(const DualCertificate& c) {
  return {{"cond_i_residual", c.cond_i_residual},
          {"cond_iii_excess", c.cond_iii_excess},
          {"lower_bound", c.lower_bound},
          {"primal_value", c.primal_value},
          {"active_edges", c.active_edges}};
}

Json to_json(const OracleResult& r) {
  return {{"value", r.value},
          {"pairing", r.pairing},
          {"paths", r.paths},
          {"tuples_evaluated", r.tuples_evaluated}};
}

PolyChain chain_from_json(const Json& j, double tol) {
  const Header h = ReadHeader(j);
  const AlphaParam a(h.alpha, h.n);
  const Json& list = Require(j, "pieces", "");
  if (!list.is_array()) throw ValidationError(kModule, "pieces", "expected an array");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "].";
    // Named locals: an exception thrown halfway through a braced
    // initializer leaks the finished members with GCC 11.
    Point p = Vector(Require(list[i], "p", where), where + "p", h.dim);
    Point q = Vector(Require(list[i], "q", where), where + "q", h.dim);
    GroupVector theta = Vector(Require(list[i], "theta", where), where + "theta", h.n);
    Segment segment(std::move(p), std::move(q), tol);
    pieces.push_back(Piece{std::move(segment), std::move(theta)});
  }
  return PolyChain(a, h.dim, std::move(pieces));
}

ZeroChain zero_chain_from_json(const Json& j, double tol) {
  const Header h = ReadHeader(j);
  const AlphaParam a(h.alpha, h.n);
  const Json& list = Require(j, "atoms", "");
  if (!list.is_array()) throw ValidationError(kModule, "atoms", "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "].";
    Point x = Vector(Require(list[i], "x", where), where + "x", h.dim);
    GroupVector eta = Vector(Require(list[i], "eta", where), where + "eta", h.n);
    atoms.push_back(Atom{std::move(x), std::move(eta)});
  }
  return ZeroChain(a, h.dim, std::move(atoms), tol);
}

ConstantForm form_from_json(const Json& j) {
  const Header h = ReadHeader(j);
  const Json& rows = Require(j, "matrix", "");
  if (!rows.is_array() || static_cast<int>(rows.size()) != h.dim) {
    throw ValidationError(kModule, "matrix", "expected dim rows");
  }
  Eigen::MatrixXd m(h.dim, h.n);
  for (int i = 0; i < h.dim; ++i) {
    m.row(i) = Vector(rows[i], "matrix[" + std::to_string(i) + "]", h.n).transpose();
  }
  return ConstantForm(std::move(m), h.alpha);
}

FlowProblem problem_from_json(const Json& j, const std::optional<GridSpec>& grid) {
  const double alpha = Number(Require(j, "alpha", ""), "alpha");
  const int n = Integer(Require(j, "n", ""), "n");
  const AlphaParam a(alpha, n);
  const Json& list = Require(j, "boundary", "");
  if (!list.is_array()) throw ValidationError(kModule, "boundary", "expected an array");

  if (grid) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "boundary[" + std::to_string(i) + "].";
      Point x = Vector(Require(list[i], "x", where), where + "x", 2);
      GroupVector eta = Vector(Require(list[i], "eta", where), where + "eta", n);
      atoms.push_back(Atom{std::move(x), std::move(eta)});
    }
    return grid_problem(*grid, a, atoms);
  }

  const Json& node_list = Require(j, "nodes", "");
  if (!node_list.is_array() || node_list.empty()) {
    throw ValidationError(kModule, "nodes", "expected a nonempty array");
  }
  std::vector<Point> nodes;
  int dim = -1;
  for (std::size_t i = 0; i < node_list.size(); ++i) {
    nodes.push_back(Vector(node_list[i], "nodes[" + std::to_string(i) + "]", dim));
    dim = static_cast<int>(nodes.back().size());
  }
  const Json& edge_list = Require(j, "edges", "");
  if (!edge_list.is_array()) throw ValidationError(kModule, "edges", "expected an array");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "].";
    EdgeSpec e{Integer(Require(edge_list[i], "u", where), where + "u"),
               Integer(Require(edge_list[i], "v", where), where + "v"), std::nullopt};
    if (edge_list[i].contains("len")) e.length = Number(edge_list[i]["len"], where + "len");
    edges.push_back(e);
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes.size()), n);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "boundary[" + std::to_string(i) + "].";
    const int node = Integer(Require(list[i], "node", where), where + "node");
    if (node < 0 || node >= static_cast<int>(nodes.size())) {
      throw ValidationError(kModule, where + "node", "node index out of range");
    }
    b.row(node) += Vector(Require(list[i], "eta", where), where + "eta", n).transpose();
  }
  return FlowProblem(std::move(nodes), edges, a, std::move(b));
}

Json to_json(const FlowProblem& p) {
  Json nodes = Json::array();
  for (const Point& x : p.nodes()) nodes.push_back(Array(x));
  Json edges = Json::array();
  for (const Edge& e : p.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"len", e.length}});
  Json boundary = Json::array();
  for (int v = 0; v < p.node_count(); ++v) {
    if (p.boundary().row(v).isZero(0.0)) continue;
    boundary.push_back({{"node", v}, {"eta", Array(p.boundary().row(v).transpose())}});
  }
  return {{"alpha", p.alpha_param().alpha()}, {"n", p.n()}, {"nodes", nodes},
          {"edges", edges}, {"boundary", boundary}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(kModule, path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(kModule, path, std::string("invalid JSON: ") + e.what());
  }
}

std::string export_svg(const PolyChain& z, const SvgStyle& style,
                       bool allow_projection) {
  if (z.dim() != 2 && !allow_projection) {
    throw ValidationError(kModule, "dim", "SVG export needs a 2-D chain or a projection");
  }
  if (style.x_coord < 0 || style.x_coord >= z.dim() || style.y_coord < 0 ||
      style.y_coord >= z.dim()) {
    throw ValidationError(kModule, "coords", "projection coordinate out of range");
  }
  const PolyChain canon = canonicalize(z);
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const Piece& piece : canon.pieces()) {
    for (const Point* x : {&piece.segment.p(), &piece.segment.q()}) {
      const double px = (*x)[style.x_coord];
      const double py = -(*x)[style.y_coord];
      if (first) {
        min_x = max_x = px;
        min_y = max_y = py;
        first = false;
      }
      min_x = std::min(min_x, px);
      max_x = std::max(max_x, px);
      min_y = std::min(min_y, py);
      max_y = std::max(max_y, py);
    }
  }
  double w = max_x - min_x;
  double h = max_y - min_y;
  if (first) w = h = 1.0;
  const double extent = std::max({w, h, 1e-9});
  const double margin = 0.05 * extent;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << Fmt(min_x - margin)
      << ' ' << Fmt(min_y - margin) << ' ' << Fmt(w + 2 * margin) << ' '
      << Fmt(h + 2 * margin) << "\">\n";
  out << "<g fill=\"none\" stroke=\"" << style.color << "\" stroke-linecap=\"round\">\n";
  for (const Piece& piece : canon.pieces()) {
    const Point& p = piece.segment.p();
    const Point& q = piece.segment.q();
    const double width = style.base_width * alpha_norm(piece.theta, canon.alpha_param());
    out << "<path d=\"M " << Fmt(p[style.x_coord]) << ' ' << Fmt(-p[style.y_coord])
        << " L " << Fmt(q[style.x_coord]) << ' ' << Fmt(-q[style.y_coord])
        << "\" stroke-width=\"" << Fmt(width) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace gsnet
