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

#include <cmath>

#include "doctest.h"
#include "generators.h"
#include "gsnet/calibration.h"
#include "gsnet/error.h"
#include "gsnet/tree.h"

namespace gsnet {
namespace {

using testing::Rng;

const double kH = std::sqrt(2.0) / 2.0;

TEST_CASE("branch directions of the trunk") {
  const BranchDirections d = branch_directions(Eigen::Vector2d(1, 0));
  CHECK(d.y.isApprox(Eigen::Vector2d(kH, kH)));
  CHECK(d.z.isApprox(Eigen::Vector2d(kH, -kH)));
  CHECK_THROWS_AS(branch_directions(Eigen::Vector2d::Zero()), Error);
}

TEST_CASE("branch directions of random unit vectors") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = rng.integer(1, 6);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * l);
    for (int i = 0; i < l; ++i) x[i] = rng.uniform(-1, 1);
    if (std::abs(x[l - 1]) < 1e-3) x[l - 1] = 0.5;
    x.normalize();
    const BranchDirections d = branch_directions(x);
    CHECK(std::abs(d.y.dot(d.z)) < 1e-12);
    CHECK(d.y.norm() == doctest::Approx(1.0));
    CHECK(d.z.norm() == doctest::Approx(1.0));
    CHECK((d.y + d.z).isApprox(std::sqrt(2.0) * x));
  }
}

TEST_CASE("small trees") {
  const TreeChain t0 = build_tree(TreeSpec(0));
  REQUIRE(t0.chain.size() == 1);
  CHECK(t0.chain.pieces()[0].segment.p().isZero());
  CHECK(t0.chain.pieces()[0].segment.q().isApprox(Eigen::VectorXd::Unit(1, 0)));
  CHECK(t0.chain.pieces()[0].theta[0] == 1.0);

  const TreeChain t1 = build_tree(TreeSpec(1));
  REQUIRE(t1.chain.size() == 3);
  for (int i = 1; i < 3; ++i) {
    CHECK(t1.chain.pieces()[i].segment.length() == doctest::Approx(0.25));
    CHECK(t1.chain.pieces()[i].theta[0] == 0.5);
  }
  CHECK(t1.orientation[1].isApprox(Eigen::Vector2d(kH, kH)));
  CHECK(t1.orientation[2].isApprox(Eigen::Vector2d(kH, -kH)));

  CHECK_THROWS_AS(TreeSpec(11), Error);
  CHECK_THROWS_AS(TreeSpec(-1), Error);
  try {
    TreeSpec(11);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLimitsExceeded);
  }
}

TEST_CASE("tree structure and series") {
  for (int n = 0; n <= 6; ++n) {
    const TreeChain t = build_tree(TreeSpec(n));
    CHECK(t.chain.size() == (std::size_t{2} << n) - 1);
    double e = 0.0, m = 0.0;
    for (int j = 0; j <= n; ++j) {
      e += std::pow(2.0, -1.5 * j);
      m += std::pow(4.0, -j);
    }
    CHECK(std::abs(gs_energy(t.chain) - e) <= 1e-12 * e);
    CHECK(std::abs(mass(t.chain) - m) <= 1e-12 * m);
    CHECK(tree_energy(n) == doctest::Approx(e).epsilon(1e-14));
    CHECK(tree_mass(n) == doctest::Approx(m).epsilon(1e-14));
    CHECK(mass(boundary(t.chain)) == doctest::Approx(2.0).epsilon(1e-14));

    // Orthonormal orientations at every level.
    for (int level = 0; level <= n; ++level) {
      std::vector<int> ids;
      for (std::size_t i = 0; i < t.level.size(); ++i) {
        if (t.level[i] == level) ids.push_back(static_cast<int>(i));
      }
      CHECK(ids.size() == (std::size_t{1} << level));
      Eigen::MatrixXd o(t.chain.dim(), ids.size());
      for (std::size_t k = 0; k < ids.size(); ++k) o.col(k) = t.orientation[ids[k]];
      const Eigen::MatrixXd gram = o.transpose() * o;
      CHECK((gram - Eigen::MatrixXd::Identity(ids.size(), ids.size())).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("tail series") {
  CHECK(tail_mass(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(tree_energy(0) == 1.0);
  const double full = 1.0 / (1.0 - std::pow(2.0, -1.5));
  CHECK(full_tree_energy() == doctest::Approx(full).epsilon(1e-14));
  CHECK(full == doctest::Approx(1.54692).epsilon(1e-5));
  for (int n = 0; n < 20; ++n) {
    CHECK(tree_energy(n + 1) > tree_energy(n));
    CHECK(tree_energy(n) + tail_energy(n) == doctest::Approx(full).epsilon(1e-14));
    CHECK(tree_mass(n) + tail_mass(n) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("tree calibration") {
  const TreeChain t0 = build_tree(TreeSpec(0));
  const ConstantForm w0 = tree_calibration(t0);
  CHECK(w0.matrix().rows() == 1);
  CHECK(w0.matrix()(0, 0) == 1.0);
  CHECK(check_calibration(w0, lift_tree(t0)).pass);

  const ConstantForm w1 = tree_calibration(build_tree(TreeSpec(1)));
  Eigen::Matrix2d expected;
  expected << kH, kH, kH, -kH;
  CHECK(w1.matrix().isApprox(expected));
  CHECK(comass(w1).estimate == doctest::Approx(1.0));

  for (int n = 0; n <= 5; ++n) {
    const TreeChain t = build_tree(TreeSpec(n));
    const PolyChain z = lift_tree(t);
    const CalibrationReport r = check_calibration(tree_calibration(t), z);
    CHECK(r.pass);
    CHECK(r.cond_i_residual < 1e-9);
    CHECK(std::abs(mass(z) - gs_energy(t.chain)) <= 1e-12 * gs_energy(t.chain));
  }
}

TEST_CASE("lifted tree coefficients") {
  const PolyChain z0 = lift_tree(build_tree(TreeSpec(0)));
  CHECK(z0.pieces()[0].theta.isApprox(Eigen::VectorXd::Ones(1)));

  const PolyChain z1 = lift_tree(build_tree(TreeSpec(1)));
  CHECK(z1.pieces()[0].theta.isApprox(Eigen::Vector2d(kH, kH)));
  CHECK(z1.pieces()[1].theta.isApprox(Eigen::Vector2d(kH, 0)));
  CHECK(z1.pieces()[2].theta.isApprox(Eigen::Vector2d(0, kH)));
  CHECK(mass(z1) == doctest::Approx(1 + 2 * 0.25 * kH).epsilon(1e-15));
  CHECK(mass(z1) == doctest::Approx(tree_energy(1)).epsilon(1e-15));
}

TEST_CASE("projection onto the first coordinates fixes the tree") {
  const TreeChain t = build_tree(TreeSpec(2));
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(4, 8);
  proj.leftCols(4) = Eigen::MatrixXd::Identity(4, 4);
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(8, 4);
  embed.topRows(4) = Eigen::MatrixXd::Identity(4, 4);
  const PolyChain up = pushforward(t.chain, embed);
  CHECK(approx_equal(pushforward(up, proj), t.chain));
}

}  // namespace
}  // namespace gsnet
