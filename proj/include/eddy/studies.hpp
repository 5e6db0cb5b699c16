// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_STUDIES_HPP
#define EDDY_STUDIES_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>
#include <json.hpp>
#include "eddy/analytic.hpp"
#include "eddy/mesh.hpp"
#include "eddy/wirtinger.hpp"

namespace eddy
{

// One mesh of a study: a generator call or a Gmsh file.
struct MeshSpec
{
  std::string generator = "cylinder"; // "cylinder", "cube" or "file"
  std::array<int, 3> divisions = {2, 12, 4}; // cylinder (n_r, n_theta, n_z); cube uses [0]
  double radius = 0.5, height = 1.0;
  std::string path;

  Mesh Build() const;
  std::string Label() const;
};

//
// Batch configuration. JSON layout:
//
//   {
//     "mesh": {"generator": "cylinder", "levels": [[2, 12, 4], [3, 18, 6]]},
//     "order": 1,
//     "electrode": {"current": [1, 0], "omega": 1, "mu": 1, "sigma": 1,
//                   "radius": 0.5, "height": 1},
//     "target": "electrode" | "zero",
//     "source": null | [[re, im], [re, im], [re, im]],
//     "alpha": 1e-3, "beta": 0, "solver_tolerance": 1e-10,
//     "validate": {"min_slope": 0.9},
//     "gradcheck": {"level": 0, "direction": "radial", "t": [...], "scale": 1},
//     "optimize": {"tolerance": 1e-9, "max_iterations": 20000},
//     "vtk": false
//   }
//
// "mesh" may instead hold {"files": ["a.msh", ...]}. Cube levels are integers.
//
struct RunConfig
{
  std::vector<MeshSpec> levels;
  int order = 0;
  ElectrodeParams electrode;
  std::string target = "electrode";
  CVec3 constant = CVec3::Zero(); // target "constant"
  std::optional<CVec3> source;
  double alpha = 1e-3, beta = 0.0, solver_tolerance = 1e-10;
  unsigned long seed = 1;
  int threads = 1;
  bool vtk = false;

  std::optional<double> min_slope; // default 0.9 (k + 1)

  int gradcheck_level = 0;
  std::string gradcheck_direction = "radial";
  std::vector<double> gradcheck_t;
  double gradcheck_scale = 1.0;

  BfgsOptions bfgs;

  static RunConfig FromJson(const nlohmann::json &j);
  static RunConfig FromFile(const std::filesystem::path &path);

  // Problem data on one mesh: mu = sigma, kappa = mu for the H formulation.
  ProblemConfig Problem() const;
  // Exact field and its curl, for error norms.
  VectorField ExactH() const;
  VectorField ExactCurlH() const;
  double MinSlope() const;
};

// Pass/fail record of an internal assertion.
struct Check
{
  std::string name;
  bool passed = false;
  std::string detail;
};

struct StudyOutput
{
  nlohmann::json summary;
  std::vector<Check> checks;
  bool Passed() const;
};

// Least-squares slope of log(y) against log(x).
double LogLogSlope(const std::vector<double> &x, const std::vector<double> &y);

//
// Studies. Each writes deterministic CSV tables into out_dir (created if needed) plus
// summary.json with timings, and returns the summary and checks.
//
struct ConvergenceRow
{
  int level;
  double h;
  int dofs;
  double error;
  double setup_seconds, solve_seconds;
};

struct ConvergenceResult
{
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
};

ConvergenceResult RunConvergence(const RunConfig &config);
StudyOutput CmdValidate(const RunConfig &config, const std::filesystem::path &out_dir);

FdReport RunGradientCheck(const RunConfig &config);
StudyOutput CmdGradCheck(const RunConfig &config, const std::filesystem::path &out_dir);

struct OptimizationLevel
{
  int level;
  double h;
  int dofs, controls;
  OptimizationResult result;
  double seconds;
};

struct OptimizationStudy
{
  std::vector<OptimizationLevel> levels; // the last level is the reference
  std::vector<double> gap_J, gap_J1, gap_J2; // one entry per non-reference level
};

OptimizationStudy RunOptimization(const RunConfig &config);
StudyOutput CmdOptimize(const RunConfig &config, const std::filesystem::path &out_dir);

StudyOutput CmdGenMesh(const RunConfig &config, const std::filesystem::path &out_dir);

// True if every entry is strictly below its predecessor.
bool StrictlyDecreasing(const std::vector<double> &v);

} // namespace eddy

#endif // EDDY_STUDIES_HPP
