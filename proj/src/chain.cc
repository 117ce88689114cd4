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

#include "gsnet/chain.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "chains-core";

void CheckGroupLength(const GroupVector& h, const AlphaParam& a,
                      const char* field) {
  if (h.size() != a.n()) {
    throw ValidationError(kModule, field,
                          "group vector has length " +
                              std::to_string(h.size()) + ", expected " +
                              std::to_string(a.n()));
  }
}

// Distance from x to the line through `base` with unit direction `u`.
double DistanceToLine(const Point& x, const Point& base, const Point& u) {
  Point r = x - base;
  return (r - r.dot(u) * u).norm();
}

// Flips (segment, theta) so the first nonzero theta coordinate is positive.
Piece Oriented(const Point& a, const Point& b, GroupVector theta, double tol) {
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    if (std::abs(theta[j]) > tol) {
      if (theta[j] < 0) return Piece{Segment(b, a, 0.0), -theta};
      break;
    }
  }
  return Piece{Segment(a, b, 0.0), std::move(theta)};
}

struct LineGroup {
  Point base;
  Point u;
  std::vector<std::size_t> members;
};

}  // namespace

AlphaParam::AlphaParam(double alpha, int n) : alpha_(alpha), n_(n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(kModule, "alpha",
                          "alpha must lie strictly inside (0,1), got " +
                              std::to_string(alpha));
  }
  if (n < 1) {
    throw ValidationError(kModule, "n", "n must be >= 1");
  }
}

double lp_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double p) {
  if (v.size() == 0) return 0.0;
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (p == 2.0) return v.stableNorm();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    acc += std::pow(std::abs(v[j]) / scale, p);
  }
  return scale * std::pow(acc, 1.0 / p);
}

double alpha_norm(const GroupVector& h, const AlphaParam& a) {
  CheckGroupLength(h, a, "theta");
  return lp_norm(h, a.norm_exponent());
}

double dual_norm(const GroupVector& v, const AlphaParam& a) {
  CheckGroupLength(v, a, "theta");
  return lp_norm(v, a.dual_exponent());
}

GroupVector unit_group_vector(int j, int n) {
  GroupVector g = GroupVector::Zero(n);
  g[j] = 1.0;
  return g;
}

Segment::Segment(Point p, Point q, double tol)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) {
    throw ValidationError(kModule, "segment", "endpoint dimensions differ");
  }
  const double len = (q_ - p_).norm();
  if (!(len > tol) || !std::isfinite(len)) {
    throw ValidationError(kModule, "segment",
                          "degenerate segment (length " + std::to_string(len) +
                              ")");
  }
}

PolyChain::PolyChain(AlphaParam alpha_param, int dim, std::vector<Piece> pieces)
    : alpha_param_(alpha_param), dim_(dim), pieces_(std::move(pieces)) {
  if (dim < 1) throw ValidationError(kModule, "dim", "dim must be >= 1");
  for (const Piece& piece : pieces_) {
    if (piece.segment.dim() != dim_) {
      throw ValidationError(kModule, "pieces.p",
                            "segment dimension " +
                                std::to_string(piece.segment.dim()) +
                                " differs from chain dimension " +
                                std::to_string(dim_));
    }
    CheckGroupLength(piece.theta, alpha_param_, "pieces.theta");
    if (!piece.theta.allFinite()) {
      throw ValidationError(kModule, "pieces.theta", "non-finite multiplicity");
    }
  }
}

PolyChain operator+(const PolyChain& a, const PolyChain& b) {
  if (a.dim() != b.dim() || a.n() != b.n()) {
    throw ValidationError(kModule, "chain", "adding chains of different shape");
  }
  std::vector<Piece> pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return PolyChain(a.alpha_param(), a.dim(), std::move(pieces));
}

PolyChain scaled(const PolyChain& z, double s) {
  std::vector<Piece> pieces = z.pieces();
  for (Piece& piece : pieces) piece.theta *= s;
  return PolyChain(z.alpha_param(), z.dim(), std::move(pieces));
}

PolyChain operator-(const PolyChain& z) { return scaled(z, -1.0); }

PolyChain polyline(AlphaParam alpha_param, const std::vector<Point>& vertices,
                   const GroupVector& theta, double tol) {
  if (vertices.empty()) {
    throw ValidationError(kModule, "vertices", "empty polyline");
  }
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    pieces.push_back(Piece{Segment(vertices[i], vertices[i + 1], tol), theta});
  }
  return PolyChain(alpha_param, static_cast<int>(vertices.front().size()),
                   std::move(pieces));
}

ZeroChain::ZeroChain(AlphaParam alpha_param, int dim, std::vector<Atom> atoms,
                     double tol)
    : alpha_param_(alpha_param), dim_(dim) {
  for (Atom& atom : atoms) {
    if (atom.x.size() != dim) {
      throw ValidationError(kModule, "atoms.x", "atom dimension mismatch");
    }
    CheckGroupLength(atom.eta, alpha_param_, "atoms.eta");
    auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& a) {
      return (a.x - atom.x).norm() <= tol;
    });
    if (it == atoms_.end()) {
      atoms_.push_back(std::move(atom));
    } else {
      it->eta += atom.eta;
    }
  }
  std::erase_if(atoms_, [&](Atom& a) {
    for (Eigen::Index j = 0; j < a.eta.size(); ++j) {
      if (std::abs(a.eta[j]) <= tol) a.eta[j] = 0.0;
    }
    return a.eta.isZero(0.0);
  });
}

PolyChain canonicalize(const PolyChain& z, double tol) {
  const auto& in = z.pieces();
  std::vector<LineGroup> groups;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Segment& s = in[i].segment;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const LineGroup& g) {
      return DistanceToLine(s.p(), g.base, g.u) <= tol &&
             DistanceToLine(s.q(), g.base, g.u) <= tol;
    });
    if (it == groups.end()) {
      groups.push_back(LineGroup{s.p(), s.direction(), {i}});
    } else {
      it->members.push_back(i);
    }
  }

  std::vector<Piece> out;
  for (const LineGroup& g : groups) {
    // Breakpoints along the line, clustered within tol. Each cluster keeps
    // the first endpoint that created it so original coordinates survive.
    struct Breakpoint {
      double t;
      const Point* point;
    };
    std::vector<Breakpoint> raw;
    for (std::size_t i : g.members) {
      const Segment& s = in[i].segment;
      raw.push_back({(s.p() - g.base).dot(g.u), &s.p()});
      raw.push_back({(s.q() - g.base).dot(g.u), &s.q()});
    }
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Breakpoint& a, const Breakpoint& b) {
                       return a.t < b.t;
                     });
    std::vector<Breakpoint> clusters;
    for (const Breakpoint& b : raw) {
      if (clusters.empty() || b.t - clusters.back().t > tol) {
        clusters.push_back(b);
      }
    }
    auto cluster_of = [&](double t) {
      auto it = std::min_element(
          clusters.begin(), clusters.end(),
          [t](const Breakpoint& a, const Breakpoint& b) {
            return std::abs(a.t - t) < std::abs(b.t - t);
          });
      return static_cast<std::size_t>(it - clusters.begin());
    };

    const std::size_t intervals = clusters.size() - 1;
    std::vector<GroupVector> sums(intervals, GroupVector::Zero(z.n()));
    for (std::size_t i : g.members) {
      const Segment& s = in[i].segment;
      std::size_t a = cluster_of((s.p() - g.base).dot(g.u));
      std::size_t b = cluster_of((s.q() - g.base).dot(g.u));
      const double sign = a < b ? 1.0 : -1.0;
      for (std::size_t k = std::min(a, b); k < std::max(a, b); ++k) {
        sums[k] += sign * in[i].theta;
      }
    }
    for (std::size_t k = 0; k < intervals; ++k) {
      GroupVector& theta = sums[k];
      for (Eigen::Index j = 0; j < theta.size(); ++j) {
        if (std::abs(theta[j]) <= tol) theta[j] = 0.0;
      }
      if (theta.isZero(0.0)) continue;
      out.push_back(Oriented(*clusters[k].point, *clusters[k + 1].point,
                             std::move(theta), tol));
    }
  }
  // Lexicographic order on (p, q) makes the output independent of which
  // piece seeded each line group.
  auto lex_less = [](const Point& a, const Point& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  std::stable_sort(out.begin(), out.end(), [&](const Piece& a, const Piece& b) {
    if (lex_less(a.segment.p(), b.segment.p())) return true;
    if (lex_less(b.segment.p(), a.segment.p())) return false;
    return lex_less(a.segment.q(), b.segment.q());
  });
  return PolyChain(z.alpha_param(), z.dim(), std::move(out));
}

double mass(const PolyChain& z, double tol) {
  return piecewise_mass(canonicalize(z, tol));
}

double piecewise_mass(const PolyChain& z) {
  double total = 0.0;
  for (const Piece& piece : z.pieces()) {
    total += piece.segment.length() * alpha_norm(piece.theta, z.alpha_param());
  }
  return total;
}

double gs_energy(const PolyChain& t, double tol) {
  return gs_energy(t, t.alpha_param().alpha(), tol);
}

double gs_energy(const PolyChain& t, double alpha, double tol) {
  if (t.n() != 1) {
    throw ValidationError(kModule, "n",
                          "Gilbert-Steiner energy needs scalar multiplicities");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(kModule, "alpha", "alpha must lie inside (0,1)");
  }
  double total = 0.0;
  const PolyChain canon = canonicalize(t, tol);
  for (const Piece& piece : canon.pieces()) {
    total += piece.segment.length() * std::pow(std::abs(piece.theta[0]), alpha);
  }
  return total;
}

ZeroChain boundary(const PolyChain& z, double tol) {
  std::vector<Atom> atoms;
  atoms.reserve(2 * z.size());
  for (const Piece& piece : z.pieces()) {
    atoms.push_back(Atom{piece.segment.p(), -piece.theta});
    atoms.push_back(Atom{piece.segment.q(), piece.theta});
  }
  return ZeroChain(z.alpha_param(), z.dim(), std::move(atoms), tol);
}

double mass(const ZeroChain& b) {
  double total = 0.0;
  for (const Atom& atom : b.atoms()) total += alpha_norm(atom.eta, b.alpha_param());
  return total;
}

PolyChain pushforward(const PolyChain& z, const Eigen::MatrixXd& linear_map,
                      double tol) {
  if (linear_map.cols() != z.dim()) {
    throw ValidationError(kModule, "linear_map",
                          "map has " + std::to_string(linear_map.cols()) +
                              " columns, chain dimension is " +
                              std::to_string(z.dim()));
  }
  std::vector<Piece> pieces;
  for (const Piece& piece : z.pieces()) {
    Point p = linear_map * piece.segment.p();
    Point q = linear_map * piece.segment.q();
    if ((q - p).norm() <= tol) continue;
    pieces.push_back(Piece{Segment(std::move(p), std::move(q), tol), piece.theta});
  }
  return canonicalize(PolyChain(z.alpha_param(),
                                static_cast<int>(linear_map.rows()),
                                std::move(pieces)),
                      tol);
}

namespace {

bool OnLattice(const GroupVector& v, double scale, double tol) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v[j] - scale * std::round(v[j] / scale)) > tol) return false;
  }
  return true;
}

}  // namespace

bool is_lattice(const PolyChain& z, double scale, double tol) {
  if (!(scale > 0)) throw ValidationError(kModule, "scale", "scale must be > 0");
  return std::all_of(z.pieces().begin(), z.pieces().end(),
                     [&](const Piece& p) { return OnLattice(p.theta, scale, tol); });
}

bool is_lattice(const ZeroChain& b, double scale, double tol) {
  if (!(scale > 0)) throw ValidationError(kModule, "scale", "scale must be > 0");
  return std::all_of(b.atoms().begin(), b.atoms().end(),
                     [&](const Atom& a) { return OnLattice(a.eta, scale, tol); });
}

bool approx_equal(const PolyChain& a, const PolyChain& b, double tol) {
  if (a.dim() != b.dim() || a.n() != b.n()) return false;
  // Pieces are compared after canonicalizing the formal difference, which
  // also handles different breakpoint sets.
  return canonicalize(a + (-b), tol).empty();
}

bool approx_equal(const ZeroChain& a, const ZeroChain& b, double tol) {
  if (a.dim() != b.dim() || a.n() != b.n()) return false;
  std::vector<Atom> atoms = a.atoms();
  for (const Atom& atom : b.atoms()) atoms.push_back(Atom{atom.x, -atom.eta});
  return ZeroChain(a.alpha_param(), a.dim(), std::move(atoms), tol).empty();
}

ZeroChain scaled(const ZeroChain& b, double s) {
  std::vector<Atom> atoms = b.atoms();
  for (Atom& atom : atoms) atom.eta *= s;
  return ZeroChain(b.alpha_param(), b.dim(), std::move(atoms));
}

}  // namespace gsnet
