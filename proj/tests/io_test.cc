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

#include <regex>

#include "doctest.h"
#include "generators.h"
#include "gsnet/error.h"
#include "gsnet/io.h"
#include "gsnet/tree.h"

namespace gsnet {
namespace {

using testing::Rng;

std::vector<double> StrokeWidths(const std::string& svg) {
  std::vector<double> out;
  const std::regex re("stroke-width=\"([0-9.e+-]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    out.push_back(std::stod((*it)[1]));
  }
  return out;
}

TEST_CASE("chain round trip") {
  Rng rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyChain z = testing::RandomGeneralChain(
        rng, AlphaParam(rng.uniform(0.05, 0.95), rng.integer(1, 4)), rng.integer(1, 4),
        rng.integer(0, 6));
    const Json j = to_json(z);
    const PolyChain back = chain_from_json(Json::parse(j.dump()));
    REQUIRE(back.size() == z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      CHECK(back.pieces()[i].segment.p() == z.pieces()[i].segment.p());
      CHECK(back.pieces()[i].theta == z.pieces()[i].theta);
    }
    CHECK(back.alpha_param() == z.alpha_param());
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("zero chain and form round trip") {
  const ZeroChain b = boundary(testing::Example47());
  CHECK(approx_equal(zero_chain_from_json(to_json(b)), b, 0.0));
  const ConstantForm w(testing::Example47Form(), 0.5);
  const ConstantForm back = form_from_json(to_json(w));
  CHECK(back.matrix() == w.matrix());
}

TEST_CASE("readers name the offending field") {
  auto field_of = [](const Json& j) -> std::string {
    try {
      chain_from_json(j);
    } catch (const Error& e) {
      return e.field();
    }
    return "no error";
  };
  Json ok = to_json(testing::Example46());
  Json j = ok;
  j.erase("alpha");
  CHECK(field_of(j) == "alpha");
  j = ok;
  j["pieces"][2]["theta"] = Json::array({1});
  CHECK(field_of(j) == "pieces[2].theta");
  j = ok;
  j["pieces"][0]["p"][1] = "x";
  CHECK(field_of(j) == "pieces[0].p[1]");
  j = ok;
  j["alpha"] = 1.0;
  CHECK(field_of(j) == "alpha");
  j = ok;
  j["pieces"][0]["q"] = j["pieces"][0]["p"];
  CHECK_THROWS_AS(chain_from_json(j), Error);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), Error);
}

TEST_CASE("problem documents") {
  const Json doc = Json::parse(R"({"alpha": 0.5, "n": 1,
      "nodes": [[0, 0], [1, 0], [1, 1]],
      "edges": [{"u": 0, "v": 1}, {"u": 1, "v": 2, "len": 3}],
      "boundary": [{"node": 0, "eta": [-1]}, {"node": 2, "eta": [1]}]})");
  const FlowProblem p = problem_from_json(doc);
  CHECK(p.edges()[1].length == 3.0);
  CHECK(p.boundary()(2, 0) == 1.0);
  const FlowProblem again = problem_from_json(to_json(p));
  CHECK(again.boundary() == p.boundary());
  Json bad = doc;
  bad["boundary"][1]["node"] = 7;
  CHECK_THROWS_AS(problem_from_json(bad), Error);

  const Json pts = Json::parse(R"({"alpha": 0.5, "n": 1,
      "boundary": [{"x": [0.1, 0], "eta": [-1]}, {"x": [2, 1.9], "eta": [1]}]})");
  const FlowProblem g = problem_from_json(pts, GridSpec{testing::P2(0, 0), 3, 3, 1.0, 4});
  CHECK(g.boundary()(0, 0) == -1.0);
  CHECK(g.boundary()(8, 0) == 1.0);
}

TEST_CASE("svg export") {
  const std::string empty = export_svg(PolyChain(AlphaParam(0.5, 1), 2));
  CHECK(empty.find("<svg") != std::string::npos);
  CHECK(empty.find("<path") == std::string::npos);

  const std::string svg = export_svg(testing::Example46());
  const std::vector<double> w = StrokeWidths(svg);
  REQUIRE(w.size() == 5);
  std::vector<double> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted[4] / sorted[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
  CHECK(export_svg(testing::Example46()) == svg);

  const TreeChain t = build_tree(TreeSpec(4));
  CHECK_THROWS_AS(export_svg(t.chain), Error);
  SvgStyle style;
  style.x_coord = 0;
  style.y_coord = 1;
  const std::vector<double> tw = StrokeWidths(export_svg(t.chain, style, true));
  CHECK(tw.size() == 31);
  CHECK(tw.front() > tw.back());
  style.y_coord = 16;
  CHECK_THROWS_AS(export_svg(t.chain, style, true), Error);
}

}  // namespace
}  // namespace gsnet
