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

// gsnet command-line tool. Every subcommand reads JSON documents and writes
// one JSON document to stdout (or --out). Failures print
// {"error": {...}} on stderr and exit with 2 (validation), 3 (solver did
// not converge) or 4 (limits exceeded).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsnet/calibration.h"
#include "gsnet/chain.h"
#include "gsnet/convert.h"
#include "gsnet/decompose.h"
#include "gsnet/error.h"
#include "gsnet/io.h"
#include "gsnet/oracle.h"
#include "gsnet/solver.h"
#include "gsnet/tree.h"

namespace {

using gsnet::Json;

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitLimits = 4;

constexpr char kSchemas[] = R"(Documents (all numbers are JSON numbers):
  chain       {"dim": d, "n": n, "alpha": a,
               "pieces": [{"p": [d], "q": [d], "theta": [n]}, ...]}
  zero chain  {"dim": d, "n": n, "alpha": a, "atoms": [{"x": [d], "eta": [n]}, ...]}
  form        {"dim": d, "n": n, "alpha": a, "matrix": [[n] x d]}
  problem     {"alpha": a, "n": n, "nodes": [[d], ...],
               "edges": [{"u": i, "v": j, "len": optional}, ...],
               "boundary": [{"node": i, "eta": [n]}, ...]}
              with --grid, nodes/edges may be omitted and boundary entries
              use {"x": [2], "eta": [n]} snapped to the nearest grid node.
  Boundaries are sum theta (delta_q - delta_p): sources carry negative eta.
Exit codes: 0 success, 2 validation, 3 non-convergence, 4 limits exceeded.
)";

struct Failure {
  int code;
  Json body;
};

[[noreturn]] void Fail(int code, const std::string& kind, const std::string& module,
                       const std::string& field, const std::string& message) {
  throw Failure{code, {{"error",
                        {{"kind", kind},
                         {"module", module},
                         {"field", field},
                         {"message", message}}}}};
}

void Emit(const Json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) Fail(kExitValidation, "validation", "cli-io", "--out", "cannot write " + out_path);
  out << text;
}

void WriteText(const std::string& text, const std::string& path, const char* option) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(kExitValidation, "validation", "cli-io", option, "cannot write " + path);
  out << text;
}

// "a,b" or "a b" into numbers.
std::vector<double> ParseList(const std::string& text, const char* option) {
  std::string s = text;
  for (char& c : s) {
    if (c == ',' || c == 'x' || c == 'X') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) Fail(kExitValidation, "validation", "cli-io", option, "not a number list: " + text);
  return out;
}

gsnet::PolyChain ReadChain(const std::string& path) {
  return gsnet::chain_from_json(gsnet::read_json_file(path));
}

struct Options {
  std::string chain;
  std::string zero_chain;
  std::string boundary;
  std::string form;
  std::string problem;
  std::string out;
  std::optional<double> alpha;
  std::string mode = "lift";
  int rescale = 0;
  int competitors = 0;
  std::uint64_t seed = 1;
  int depth = 0;
  bool lifted = false;
  std::string emit;
  std::string svg;
  std::string project;
  double base_width = 0.02;
  std::string grid;
  double spacing = 1.0;
  std::string origin = "0,0";
  int connectivity = 8;
  int max_iter = 200000;
  double gap_tol = 1e-7;
  double feas_tol = 1e-9;
  int check_every = 100;
  std::string emit_chain;
  int max_units = 6;
  int max_path_edges = 64;
  std::int64_t max_tuples = 10'000'000;
  double tol = gsnet::kDefaultTol;
};

CLI::Validator OpenUnitInterval() {
  return CLI::Validator(
      [](std::string& text) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(text, v) || !(v > 0.0 && v < 1.0)) {
          return "must lie strictly between 0 and 1";
        }
        return {};
      },
      "(0,1)");
}

Json RunEnergy(const Options& o) {
  const gsnet::PolyChain t = ReadChain(o.chain);
  const double alpha = o.alpha.value_or(t.alpha_param().alpha());
  return {{"energy", gsnet::gs_energy(t, alpha, o.tol)}, {"alpha", alpha}};
}

Json RunMass(const Options& o) {
  if (!o.zero_chain.empty()) {
    return {{"mass", gsnet::mass(gsnet::zero_chain_from_json(gsnet::read_json_file(o.zero_chain)))}};
  }
  if (o.chain.empty()) Fail(kExitValidation, "validation", "cli-io", "--chain", "need --chain or --zero-chain");
  return {{"mass", gsnet::mass(ReadChain(o.chain), o.tol)}};
}

std::optional<gsnet::ZeroChain> ReadBoundary(const Options& o) {
  if (o.boundary.empty()) return std::nullopt;
  return gsnet::zero_chain_from_json(gsnet::read_json_file(o.boundary));
}

Json RunDecompose(const Options& o) {
  const gsnet::PolyChain t = ReadChain(o.chain);
  const auto b = ReadBoundary(o);
  return gsnet::to_json(b ? gsnet::decompose(t, *b, o.tol) : gsnet::decompose(t, o.tol));
}

Json RunConvert(const Options& o) {
  const gsnet::PolyChain z = ReadChain(o.chain);
  const auto b = ReadBoundary(o);
  if (o.mode == "collapse") {
    if (o.rescale > 0) {
      return gsnet::to_json(gsnet::collapse_rescaled(
          z, gsnet::RescaleContext(o.rescale, z.alpha_param().alpha()), o.tol));
    }
    return gsnet::to_json(gsnet::collapse(z, o.tol));
  }
  gsnet::LiftResult r = [&] {
    if (o.rescale > 0) {
      return gsnet::lift_rescaled(z, gsnet::RescaleContext(o.rescale, z.alpha_param().alpha()),
                                  b, o.tol);
    }
    return b ? gsnet::lift(z, *b, o.tol) : gsnet::lift(z, o.tol);
  }();
  return {{"chain", gsnet::to_json(r.chain)}, {"pairing", r.pairing}};
}

Json RunCalibrate(const Options& o) {
  const gsnet::PolyChain z = ReadChain(o.chain);
  const gsnet::ConstantForm w = gsnet::form_from_json(gsnet::read_json_file(o.form));
  const gsnet::CalibrationReport report = gsnet::check_calibration(w, z);
  Json doc = gsnet::to_json(report);
  doc["mass"] = gsnet::mass(z, o.tol);
  doc["flux"] = gsnet::flux(w, z);
  if (o.competitors > 0 && report.pass) {
    const gsnet::ZeroChain b = gsnet::boundary(z, o.tol);
    std::vector<gsnet::PolyChain> list;
    for (int k = 0; k < o.competitors; ++k) {
      list.push_back(gsnet::random_competitor(b, o.seed + static_cast<std::uint64_t>(k)));
    }
    const gsnet::Certificate cert = gsnet::certify(w, z, list);
    double min_mass = cert.mass;
    for (const auto& c : cert.competitors) min_mass = std::min(min_mass, c.mass);
    doc["competitors"] = {{"count", o.competitors},
                          {"min_mass", min_mass},
                          {"all_dominated", cert.all_dominated}};
  }
  return doc;
}

gsnet::SvgStyle ProjectionStyle(const Options& o, int dim) {
  gsnet::SvgStyle style;
  style.base_width = o.base_width;
  if (!o.project.empty()) {
    const std::vector<double> c = ParseList(o.project, "--project");
    // A single number k means coordinates (k-1, k); two numbers select the
    // axes explicitly. Both are 1-based.
    if (c.size() == 1) {
      style.x_coord = static_cast<int>(c[0]) - 2;
      style.y_coord = static_cast<int>(c[0]) - 1;
    } else if (c.size() == 2) {
      style.x_coord = static_cast<int>(c[0]) - 1;
      style.y_coord = static_cast<int>(c[1]) - 1;
    } else {
      Fail(kExitValidation, "validation", "cli-io", "--project", "expected k or i,j");
    }
    if (style.x_coord < 0 || style.y_coord >= dim || style.x_coord == style.y_coord) {
      Fail(kExitValidation, "validation", "cli-io", "--project", "coordinates out of range");
    }
  }
  return style;
}

Json RunTree(const Options& o) {
  const gsnet::TreeChain t = gsnet::build_tree(gsnet::TreeSpec(o.depth));
  const gsnet::PolyChain chain = o.lifted ? gsnet::lift_tree(t) : t.chain;
  const Json chain_doc = gsnet::to_json(chain);
  if (!o.emit.empty()) WriteText(chain_doc.dump(2) + "\n", o.emit, "--emit");
  if (!o.svg.empty()) {
    const gsnet::SvgStyle style = ProjectionStyle(o, t.chain.dim());
    WriteText(gsnet::export_svg(t.chain, style, true), o.svg, "--svg");
  }
  if (!o.emit.empty()) {
    return {{"depth", o.depth},
            {"dim", t.chain.dim()},
            {"pieces", t.chain.size()},
            {"energy", gsnet::gs_energy(t.chain)},
            {"mass", gsnet::mass(t.chain)},
            {"emitted", o.emit}};
  }
  return chain_doc;
}

gsnet::FlowProblem ReadProblem(const Options& o) {
  const Json doc = gsnet::read_json_file(o.problem);
  if (o.grid.empty()) return gsnet::problem_from_json(doc);
  const std::vector<double> size = ParseList(o.grid, "--grid");
  const std::vector<double> origin = ParseList(o.origin, "--origin");
  if (size.size() != 2 || size[0] < 2 || size[1] < 2 || size[0] != static_cast<int>(size[0]) ||
      size[1] != static_cast<int>(size[1])) {
    Fail(kExitValidation, "validation", "cli-io", "--grid", "expected WxH with integers >= 2");
  }
  if (origin.size() != 2) Fail(kExitValidation, "validation", "cli-io", "--origin", "expected x,y");
  gsnet::GridSpec grid{gsnet::Point(Eigen::Vector2d(origin[0], origin[1])),
                       static_cast<int>(size[0]), static_cast<int>(size[1]), o.spacing,
                       o.connectivity};
  return gsnet::problem_from_json(doc, grid);
}

int RunSolve(const Options& o, Json& doc) {
  const gsnet::FlowProblem p = ReadProblem(o);
  gsnet::SolverParams params;
  params.max_iter = o.max_iter;
  params.gap_tol = o.gap_tol;
  params.feas_tol = o.feas_tol;
  params.check_every = o.check_every;
  const gsnet::FlowSolution s = gsnet::solve(p, params);
  doc = gsnet::to_json(s);
  doc["certificate"] = gsnet::to_json(gsnet::dual_certificate(s, p));
  if (!o.emit_chain.empty()) {
    WriteText(gsnet::to_json(gsnet::flow_chain(s, p)).dump(2) + "\n", o.emit_chain, "--emit-chain");
  }
  return s.converged ? 0 : kExitNonConvergence;
}

Json RunOracle(const Options& o) {
  const gsnet::FlowProblem p = gsnet::problem_from_json(gsnet::read_json_file(o.problem));
  gsnet::OracleLimits limits{o.max_units, o.max_path_edges, o.max_tuples};
  const gsnet::OracleInstance inst = gsnet::oracle_instance(p, limits);
  const gsnet::OracleResult r = gsnet::oracle_min(inst);
  Json doc = gsnet::to_json(r);
  doc["chain"] = gsnet::to_json(gsnet::oracle_chain(inst, r));
  return doc;
}

Json RunExportSvg(const Options& o) {
  const gsnet::PolyChain z = ReadChain(o.chain);
  const gsnet::SvgStyle style = ProjectionStyle(o, z.dim());
  const std::string svg = gsnet::export_svg(z, style, !o.project.empty());
  if (o.out.empty()) {
    std::cout << svg;
  } else {
    WriteText(svg, o.out, "--out");
  }
  return nullptr;
}

const char* KindName(gsnet::ErrorKind kind) {
  switch (kind) {
    case gsnet::ErrorKind::kValidation: return "validation";
    case gsnet::ErrorKind::kNonConvergence: return "non_convergence";
    case gsnet::ErrorKind::kLimitsExceeded: return "limits_exceeded";
  }
  return "validation";
}

int KindCode(gsnet::ErrorKind kind) {
  switch (kind) {
    case gsnet::ErrorKind::kValidation: return kExitValidation;
    case gsnet::ErrorKind::kNonConvergence: return kExitNonConvergence;
    case gsnet::ErrorKind::kLimitsExceeded: return kExitLimits;
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Discrete Gilbert-Steiner networks and group-coefficient chains"};
  app.footer(kSchemas);
  app.require_subcommand(1);
  app.add_option("--out", o.out, "Write the result here instead of stdout");
  app.add_option("--tol", o.tol, "Geometric tolerance")->check(CLI::Range(1e-15, 1e-3));

  auto* energy = app.add_subcommand("energy", "Gilbert-Steiner energy of a scalar chain");
  energy->add_option("--chain", o.chain, "Chain JSON")->required()->check(CLI::ExistingFile);
  energy->add_option("--alpha", o.alpha, "Exponent, 0 < alpha < 1")
      ->check(OpenUnitInterval());

  auto* mass = app.add_subcommand("mass", "Mass of a chain or zero chain");
  mass->add_option("--chain", o.chain, "Chain JSON")->check(CLI::ExistingFile);
  mass->add_option("--zero-chain", o.zero_chain, "Zero chain JSON")->check(CLI::ExistingFile);

  auto* boundary = app.add_subcommand("boundary", "Boundary zero chain");
  boundary->add_option("--chain", o.chain, "Chain JSON")->required()->check(CLI::ExistingFile);

  auto* decompose = app.add_subcommand("decompose", "Unit path and cycle decomposition");
  decompose->add_option("--chain", o.chain, "Scalar lattice chain JSON")
      ->required()->check(CLI::ExistingFile);
  decompose->add_option("--boundary", o.boundary, "Boundary zero chain JSON")
      ->check(CLI::ExistingFile);

  auto* convert = app.add_subcommand("convert", "Lift a scalar chain or collapse a group chain");
  convert->add_option("--mode", o.mode, "lift or collapse")
      ->check(CLI::IsMember({"lift", "collapse"}));
  convert->add_option("--chain", o.chain, "Chain JSON")->required()->check(CLI::ExistingFile);
  convert->add_option("--boundary", o.boundary, "Boundary zero chain JSON")
      ->check(CLI::ExistingFile);
  convert->add_option("--rescale", o.rescale, "Use the n^-1 / n^-alpha rescaled maps")
      ->check(CLI::Range(1, 1 << 20));

  auto* calibrate = app.add_subcommand("calibrate", "Check a constant calibration form");
  calibrate->add_option("--chain", o.chain, "Chain JSON")->required()->check(CLI::ExistingFile);
  calibrate->add_option("--form", o.form, "Form JSON")->required()->check(CLI::ExistingFile);
  calibrate->add_option("--competitors", o.competitors, "Random same-boundary competitors")
      ->check(CLI::Range(0, 1000000));
  calibrate->add_option("--seed", o.seed, "Competitor seed");

  auto* tree = app.add_subcommand("tree", "Truncated self-similar tree");
  tree->add_option("--depth", o.depth, "Depth n")->required()->check(CLI::Range(0, 10));
  tree->add_flag("--lifted", o.lifted, "Emit the group-coefficient lift");
  tree->add_option("--emit", o.emit, "Write the chain JSON here and print a summary");
  tree->add_option("--svg", o.svg, "Write a projected SVG rendering");
  tree->add_option("--project", o.project, "Coordinates shown: k (axes k-1,k) or i,j; 1-based");
  tree->add_option("--width", o.base_width, "Stroke width at unit norm")
      ->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Convex relaxation on a graph");
  solve->add_option("--problem", o.problem, "Problem JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--grid", o.grid, "Build a WxH node grid");
  solve->add_option("--spacing", o.spacing, "Grid spacing")->check(CLI::PositiveNumber);
  solve->add_option("--origin", o.origin, "Grid origin x,y");
  solve->add_option("--connectivity", o.connectivity, "4 or 8")->check(CLI::IsMember({4, 8}));
  solve->add_option("--max-iter", o.max_iter, "Iteration cap")->check(CLI::Range(1, 100000000));
  solve->add_option("--gap-tol", o.gap_tol, "Duality gap target")->check(CLI::Range(1e-15, 1.0));
  solve->add_option("--feas-tol", o.feas_tol, "Feasibility target")->check(CLI::Range(1e-15, 1.0));
  solve->add_option("--check-every", o.check_every, "Iterations between certificate checks")
      ->check(CLI::Range(1, 1000000));
  solve->add_option("--emit-chain", o.emit_chain, "Write the flow as a chain JSON");

  auto* oracle = app.add_subcommand("oracle", "Exact integral optimum by enumeration");
  oracle->add_option("--problem", o.problem, "Problem JSON (scalar, integral boundary)")
      ->required()->check(CLI::ExistingFile);
  oracle->add_option("--max-units", o.max_units, "Unit cap")->check(CLI::Range(1, 12));
  oracle->add_option("--max-path-edges", o.max_path_edges, "Path length cap")
      ->check(CLI::Range(1, 100000));
  oracle->add_option("--max-tuples", o.max_tuples, "Enumeration cap")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));

  auto* svg = app.add_subcommand("export-svg", "Render a chain as SVG");
  svg->add_option("--chain", o.chain, "Chain JSON")->required()->check(CLI::ExistingFile);
  svg->add_option("--project", o.project, "Coordinates shown: k (axes k-1,k) or i,j; 1-based");
  svg->add_option("--width", o.base_width, "Stroke width at unit norm")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error",
                       {{"kind", "validation"},
                        {"module", "cli-io"},
                        {"field", ""},
                        {"message", e.what()}}}}
                     .dump()
              << "\n";
    return kExitValidation;
  }

  int code = 0;
  try {
    Json doc;
    if (*energy) doc = RunEnergy(o);
    else if (*mass) doc = RunMass(o);
    else if (*boundary) doc = gsnet::to_json(gsnet::boundary(ReadChain(o.chain), o.tol));
    else if (*decompose) doc = RunDecompose(o);
    else if (*convert) doc = RunConvert(o);
    else if (*calibrate) doc = RunCalibrate(o);
    else if (*tree) doc = RunTree(o);
    else if (*solve) code = RunSolve(o, doc);
    else if (*oracle) doc = RunOracle(o);
    else if (*svg) doc = RunExportSvg(o);
    if (!doc.is_null()) Emit(doc, o.out);
  } catch (const Failure& f) {
    std::cerr << f.body.dump() << "\n";
    return f.code;
  } catch (const gsnet::Error& e) {
    std::cerr << Json{{"error",
                       {{"kind", KindName(e.kind())},
                        {"module", e.module()},
                        {"field", e.field()},
                        {"message", e.what()}}}}
                     .dump()
              << "\n";
    return KindCode(e.kind());
  } catch (const std::exception& e) {
    std::cerr << Json{{"error",
                       {{"kind", "internal"}, {"module", "cli-io"}, {"field", ""},
                        {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  }
  if (code == kExitNonConvergence) {
    std::cerr << Json{{"error",
                       {{"kind", "non_convergence"},
                        {"module", "solver"},
                        {"field", "max_iter"},
                        {"message", "iteration cap reached; best iterate emitted"}}}}
                     .dump()
              << "\n";
  }
  return code;
}
