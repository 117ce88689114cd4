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

#include "gsnet/calibration.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gsnet/error.h"

namespace gsnet {
namespace {

constexpr char kModule[] = "calibration";
constexpr int kStarts = 32;
constexpr int kAscentIterations = 500;
constexpr std::uint64_t kSeed = 0x5eed'ca11'b7a7'0001ULL;

bool IsHalf(double alpha) { return std::abs(alpha - 0.5) < 1e-15; }

// Gradient of v -> ||v||_q.
Eigen::VectorXd NormGradient(const Eigen::VectorXd& v, double q) {
  const double norm = lp_norm(v, q);
  Eigen::VectorXd g(v.size());
  if (norm == 0.0) return Eigen::VectorXd::Zero(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double r = std::abs(v[j]) / norm;
    g[j] = (v[j] < 0 ? -1.0 : 1.0) * std::pow(r, q - 1.0);
  }
  return g;
}

}  // namespace

ConstantForm::ConstantForm(Eigen::MatrixXd matrix, double alpha)
    : matrix_(std::move(matrix)), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(kModule, "alpha", "alpha must lie inside (0,1)");
  }
  if (matrix_.rows() < 1 || matrix_.cols() < 1) {
    throw ValidationError(kModule, "matrix", "empty matrix");
  }
  if (!matrix_.allFinite()) {
    throw ValidationError(kModule, "matrix", "non-finite entries");
  }
}

ComassResult comass(const ConstantForm& w, double certify_tol) {
  const Eigen::MatrixXd& m = w.matrix();
  const double q = 1.0 / (1.0 - w.alpha());
  const double sigma_max =
      Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
  if (IsHalf(w.alpha())) return ComassResult{sigma_max, sigma_max, true};

  // Upper bounds: norm equivalence between l_q and l_2 on R^n, and the
  // row-wise Hoelder bound |sum_i tau_i W_i|_q <= |(|W_i|_q)_i|_2.
  const double n = static_cast<double>(w.n());
  const double equiv = q < 2.0 ? std::pow(n, 1.0 / q - 0.5) : 1.0;
  Eigen::VectorXd row_norms(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    row_norms[i] = lp_norm(m.row(i).transpose(), q);
  }
  const double upper = std::min(sigma_max * equiv, row_norms.norm());

  // f(tau) = |W^T tau|_q is convex, so tau <- grad f / |grad f| never
  // decreases f on the sphere.
  auto objective = [&](const Eigen::VectorXd& tau) {
    return lp_norm(m.transpose() * tau, q);
  };
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index i = 0; i < m.rows() && starts.size() < kStarts / 2; ++i) {
    starts.push_back(Eigen::VectorXd::Unit(m.rows(), i));
  }
  while (starts.size() < kStarts) {
    Eigen::VectorXd tau(m.rows());
    for (Eigen::Index i = 0; i < tau.size(); ++i) tau[i] = normal(rng);
    starts.push_back(tau.normalized());
  }

  double best = 0.0;
  for (Eigen::VectorXd tau : starts) {
    double value = objective(tau);
    for (int it = 0; it < kAscentIterations; ++it) {
      const Eigen::VectorXd grad = m * NormGradient(m.transpose() * tau, q);
      if (grad.norm() == 0.0) break;
      Eigen::VectorXd next = grad.normalized();
      const double next_value = objective(next);
      if (next_value <= value * (1.0 + 1e-15)) {
        value = std::max(value, next_value);
        break;
      }
      tau = std::move(next);
      value = next_value;
    }
    best = std::max(best, value);
  }
  return ComassResult{best, std::max(upper, best), upper - best <= certify_tol};
}

double flux(const ConstantForm& w, const PolyChain& z) {
  double total = 0.0;
  for (const Piece& piece : z.pieces()) {
    total += piece.segment.length() * w.pair(piece.segment.direction(), piece.theta);
  }
  return total;
}

CalibrationReport check_calibration(const ConstantForm& w, const PolyChain& z,
                                    CalibrationTolerances tol) {
  if (w.dim() != z.dim() || w.n() != z.n()) {
    throw ValidationError(
        kModule, "matrix",
        "form is " + std::to_string(w.dim()) + "x" + std::to_string(w.n()) +
            " but chain has dim " + std::to_string(z.dim()) + " and n " +
            std::to_string(z.n()));
  }
  const AlphaParam a(w.alpha(), w.n());
  CalibrationReport report;
  const PolyChain canon = canonicalize(z);
  for (const Piece& piece : canon.pieces()) {
    const double residual = std::abs(w.pair(piece.segment.direction(), piece.theta) -
                                     alpha_norm(piece.theta, a));
    report.cond_i_residual = std::max(report.cond_i_residual, residual);
  }
  report.comass = comass(w, tol.cond_iii);
  report.cond_iii_excess = std::max(0.0, report.comass.estimate - 1.0);
  report.cond_i_pass = report.cond_i_residual <= tol.cond_i;
  report.cond_iii_pass = report.cond_iii_excess <= tol.cond_iii;
  report.cond_iii_certified = report.comass.upper_bound <= 1.0 + tol.cond_iii;
  report.pass = report.cond_i_pass && report.cond_ii_pass && report.cond_iii_pass;
  return report;
}

Certificate certify(const ConstantForm& w, const PolyChain& z,
                    const std::vector<PolyChain>& competitors, double mass_tol,
                    CalibrationTolerances tol) {
  Certificate cert{check_calibration(w, z, tol), mass(z), flux(w, z), {}, true};
  if (!cert.calibration.pass) {
    throw ValidationError(kModule, "form", "form does not calibrate the chain");
  }
  const ZeroChain bz = boundary(z);
  for (std::size_t i = 0; i < competitors.size(); ++i) {
    const PolyChain& c = competitors[i];
    if (c.dim() != z.dim() || c.n() != z.n() ||
        !approx_equal(boundary(c), bz, 1e-8)) {
      throw ValidationError(kModule, "competitors[" + std::to_string(i) + "]",
                            "competitor boundary differs");
    }
    CompetitorAudit audit{flux(w, c), mass(c), false};
    audit.dominated = cert.mass <= audit.mass + mass_tol;
    cert.all_dominated = cert.all_dominated && audit.dominated;
    cert.competitors.push_back(audit);
  }
  return cert;
}

}  // namespace gsnet
