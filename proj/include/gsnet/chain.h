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

// Polyhedral 1-chains with vector (group) multiplicities.
//
// A PolyChain is a finite sum of oriented segments in R^d, each carrying a
// multiplicity in R^n. The group R^n is normed by the alpha-norm
// ||h||_alpha = (sum_j |h_j|^{1/alpha})^alpha, whose dual is the
// (1-alpha)-norm. Scalar chains (n = 1) are the classical irrigation
// networks; their Gilbert-Steiner energy is sum length * |theta|^alpha.
//
// All values are immutable after construction and every operation is a
// pure function. Geometric coincidence uses an absolute tolerance that is
// passed explicitly (default kDefaultTol).

#ifndef GSNET_CHAIN_H_
#define GSNET_CHAIN_H_

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace gsnet {

inline constexpr double kDefaultTol = 1e-9;

using Point = Eigen::VectorXd;
using GroupVector = Eigen::VectorXd;

// The exponent alpha in (0,1) together with the number n of group
// coordinates.
class AlphaParam {
 public:
  AlphaParam(double alpha, int n);

  double alpha() const { return alpha_; }
  int n() const { return n_; }
  // p = 1/alpha, the exponent of the primal norm.
  double norm_exponent() const { return 1.0 / alpha_; }
  // q = 1/(1-alpha), the exponent of the dual norm.
  double dual_exponent() const { return 1.0 / (1.0 - alpha_); }

  AlphaParam with_n(int n) const { return AlphaParam(alpha_, n); }

  friend bool operator==(const AlphaParam&, const AlphaParam&) = default;

 private:
  double alpha_;
  int n_;
};

// l_p norm, overflow-safe, for p >= 1.
double lp_norm(const Eigen::Ref<const Eigen::VectorXd>& v, double p);

double alpha_norm(const GroupVector& h, const AlphaParam& a);
double dual_norm(const GroupVector& v, const AlphaParam& a);

// j-th canonical unit vector of R^n (0-based).
GroupVector unit_group_vector(int j, int n);

class Segment {
 public:
  // Rejects p == q (within tol) and mismatched dimensions.
  Segment(Point p, Point q, double tol = kDefaultTol);

  const Point& p() const { return p_; }
  const Point& q() const { return q_; }
  int dim() const { return static_cast<int>(p_.size()); }
  double length() const { return (q_ - p_).norm(); }
  // Unit orientation (q - p)/|q - p|.
  Point direction() const { return (q_ - p_) / length(); }
  Segment reversed() const { return Segment(q_, p_, 0.0); }

 private:
  Point p_;
  Point q_;
};

struct Piece {
  Segment segment;
  GroupVector theta;
};

class PolyChain {
 public:
  PolyChain(AlphaParam alpha_param, int dim, std::vector<Piece> pieces = {});

  const AlphaParam& alpha_param() const { return alpha_param_; }
  int dim() const { return dim_; }
  int n() const { return alpha_param_.n(); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }

 private:
  AlphaParam alpha_param_;
  int dim_;
  std::vector<Piece> pieces_;
};

// Formal sum (concatenation, no canonicalization).
PolyChain operator+(const PolyChain& a, const PolyChain& b);
// Multiplies every multiplicity by s.
PolyChain scaled(const PolyChain& z, double s);
// Same pieces, opposite orientation.
PolyChain operator-(const PolyChain& z);
// Builds a chain from one multiplicity carried along a polyline.
PolyChain polyline(AlphaParam alpha_param, const std::vector<Point>& vertices,
                   const GroupVector& theta, double tol = kDefaultTol);

struct Atom {
  Point x;
  GroupVector eta;
};

// Weighted point set sum_k eta_k delta_{x_k}, canonical on construction:
// coincident points merged, zero atoms dropped, first-appearance order.
class ZeroChain {
 public:
  ZeroChain(AlphaParam alpha_param, int dim, std::vector<Atom> atoms = {},
            double tol = kDefaultTol);

  const AlphaParam& alpha_param() const { return alpha_param_; }
  int dim() const { return dim_; }
  int n() const { return alpha_param_.n(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

 private:
  AlphaParam alpha_param_;
  int dim_;
  std::vector<Atom> atoms_;
};

// Merges collinear overlapping pieces with orientation-signed sums of
// multiplicities, splitting at every mutual endpoint, and drops zero
// pieces. Each output piece is oriented so that its first nonzero
// multiplicity coordinate is positive. Idempotent.
PolyChain canonicalize(const PolyChain& z, double tol = kDefaultTol);

// Sum over canonical pieces of length * ||theta||_alpha.
double mass(const PolyChain& z, double tol = kDefaultTol);
// Same sum without merging overlaps; mass(z) <= piecewise_mass(z).
double piecewise_mass(const PolyChain& z);

// Gilbert-Steiner energy sum length * |theta|^alpha of a scalar chain after
// canonicalization. Throws unless n == 1.
double gs_energy(const PolyChain& t, double tol = kDefaultTol);
double gs_energy(const PolyChain& t, double alpha, double tol);

ZeroChain boundary(const PolyChain& z, double tol = kDefaultTol);
double mass(const ZeroChain& b);

// Image of z under the linear map x -> L x (L is k x d). Pieces whose image
// is shorter than tol are dropped. Result is canonical.
PolyChain pushforward(const PolyChain& z, const Eigen::MatrixXd& linear_map,
                      double tol = kDefaultTol);

// Every multiplicity coordinate lies within tol of scale * Z.
bool is_lattice(const PolyChain& z, double scale, double tol = kDefaultTol);
bool is_lattice(const ZeroChain& b, double scale, double tol = kDefaultTol);

// Equality as currents: canonical forms agree piece by piece.
bool approx_equal(const PolyChain& a, const PolyChain& b,
                  double tol = kDefaultTol);
bool approx_equal(const ZeroChain& a, const ZeroChain& b,
                  double tol = kDefaultTol);

ZeroChain scaled(const ZeroChain& b, double s);

}  // namespace gsnet

#endif  // GSNET_CHAIN_H_
