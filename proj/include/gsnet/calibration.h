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

// Constant R^n-valued 1-forms as calibrations.
//
// A constant form is a d x n matrix W acting on a direction tau and a group
// element h as tau^T W h. It calibrates a chain Z when
//   (i)   tau^T W theta = ||theta||_alpha on every piece of Z,
//   (ii)  dW = 0, automatic for constant forms,
//   (iii) tau^T W h <= ||h||_alpha for all unit tau and all h,
// and (iii) is equivalent to comass(W) <= 1. A calibrated chain has least
// mass among all chains with the same boundary, including chains with real
// multiplicities.

#ifndef GSNET_CALIBRATION_H_
#define GSNET_CALIBRATION_H_

#include <Eigen/Dense>
#include <vector>

#include "gsnet/chain.h"

namespace gsnet {

class ConstantForm {
 public:
  ConstantForm(Eigen::MatrixXd matrix, double alpha);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  double alpha() const { return alpha_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int n() const { return static_cast<int>(matrix_.cols()); }

  // <omega; tau, h>
  double pair(const Point& tau, const GroupVector& h) const {
    return tau.dot(matrix_ * h);
  }

 private:
  Eigen::MatrixXd matrix_;
  double alpha_;
};

struct ComassResult {
  double estimate;     // best value found, always a lower bound
  double upper_bound;  // analytic bound, always valid
  bool certified;      // upper_bound - estimate <= tolerance
};

// sup over unit tau of dual_norm(W^T tau). Exact (largest singular value)
// for alpha = 1/2; otherwise a seeded 32-start ascent on the sphere plus an
// analytic upper bound.
ComassResult comass(const ConstantForm& w, double certify_tol = 1e-8);

struct CalibrationReport {
  double cond_i_residual = 0.0;  // max over pieces |<w;tau,theta> - ||theta||>|
  double cond_iii_excess = 0.0;  // max(0, comass - 1)
  ComassResult comass{0.0, 0.0, true};
  bool cond_i_pass = false;
  bool cond_ii_pass = true;  // constant forms are closed
  bool cond_iii_pass = false;
  // cond (iii) holds with the analytic bound, not just the estimate.
  bool cond_iii_certified = false;
  bool pass = false;
};

struct CalibrationTolerances {
  double cond_i = 1e-9;
  double cond_iii = 1e-8;
};

CalibrationReport check_calibration(const ConstantForm& w, const PolyChain& z,
                                    CalibrationTolerances tol = {});

struct CompetitorAudit {
  double flux;  // integral of the form over the competitor
  double mass;
  bool dominated;  // mass(Z) <= mass + tol
};

// Mass(Z) = flux(Z) = flux(C) <= mass(C) for every competitor C with the
// same boundary.
struct Certificate {
  CalibrationReport calibration;
  double mass;
  double flux;
  std::vector<CompetitorAudit> competitors;
  bool all_dominated = true;
};

// Throws if the calibration check fails or a competitor has a different
// boundary.
Certificate certify(const ConstantForm& w, const PolyChain& z,
                    const std::vector<PolyChain>& competitors,
                    double mass_tol = 1e-9, CalibrationTolerances tol = {});

// Integral of the form over the chain: sum length * <w; tau, theta>.
double flux(const ConstantForm& w, const PolyChain& z);

}  // namespace gsnet

#endif  // GSNET_CALIBRATION_H_
