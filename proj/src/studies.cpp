// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/studies.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace eddy
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since)
{
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Shortest round-trip representation, independent of stream state.
std::string Fmt(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Complex ParseComplex(const json &j)
{
  if (j.is_number())
  {
    return j.get<double>();
  }
  if (j.is_array() && j.size() == 2)
  {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

CVec3 ParseComplexVector(const json &j)
{
  if (!j.is_array() || j.size() != 3)
  {
    throw std::invalid_argument("expected three components, got " + j.dump());
  }
  return CVec3(ParseComplex(j[0]), ParseComplex(j[1]), ParseComplex(j[2]));
}

void Log(const std::string &msg)
{
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  std::cerr << msg << std::endl;
}

struct ParallelStatus
{
  int completed; // leading indices that ran without error
  std::exception_ptr error; // first failure by index
  void Rethrow() const
  {
    if (error)
    {
      std::rethrow_exception(error);
    }
  }
};

// Runs body(i) for i in [0, n) on up to threads workers.
ParallelStatus ParallelFor(int n, int threads, const std::function<void(int)> &body)
{
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](int i) {
    try
    {
      body(i);
    }
    catch (...)
    {
      errors[i] = std::current_exception();
    }
  };
  if (threads <= 1 || n <= 1)
  {
    for (int i = 0; i < n && !(i > 0 && errors[i - 1]); i++)
    {
      run(i);
    }
  }
  else
  {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(threads, n); w++)
    {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++)
        {
          run(i);
        }
      });
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  for (int i = 0; i < n; i++)
  {
    if (errors[i])
    {
      return {i, errors[i]};
    }
  }
  return {n, nullptr};
}

std::ofstream OpenOutput(const fs::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void WriteSummary(const StudyOutput &output, const fs::path &out_dir)
{
  json s = output.summary;
  json checks = json::array();
  for (const auto &c : output.checks)
  {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  s["checks"] = checks;
  s["passed"] = output.Passed();
  OpenOutput(out_dir / "summary.json") << s.dump(2) << "\n";
}

json ConfigJson(const RunConfig &config)
{
  json levels = json::array();
  for (const auto &m : config.levels)
  {
    levels.push_back(m.Label());
  }
  return {{"order", config.order},
          {"levels", levels},
          {"target", config.target},
          {"alpha", config.alpha},
          {"beta", config.beta},
          {"seed", config.seed},
          {"threads", config.threads},
          {"solver", StateOperator::Backend()}};
}

// Everything needed to solve on one mesh. Members reference each other, so it is pinned.
struct Discretization
{
  Mesh mesh;
  ControlSpace control;
  FESpace space;
  ProblemConfig problem;
  StateOperator op;

  Discretization(Mesh m, int order, const ProblemConfig &p)
    : mesh(std::move(m)), control(mesh), space(mesh, order), problem(p),
      op(space, control, problem)
  {
  }
};

} // namespace

Mesh MeshSpec::Build() const
{
  if (generator == "cylinder")
  {
    return GenerateCylinder(radius, height, divisions[0], divisions[1], divisions[2]);
  }
  if (generator == "cube")
  {
    return GenerateCube(divisions[0]);
  }
  if (generator == "file")
  {
    return ReadMsh(path);
  }
  throw std::invalid_argument("unknown mesh generator '" + generator + "'");
}

std::string MeshSpec::Label() const
{
  if (generator == "cylinder")
  {
    return "cylinder(" + std::to_string(divisions[0]) + "," + std::to_string(divisions[1]) +
           "," + std::to_string(divisions[2]) + ")";
  }
  if (generator == "cube")
  {
    return "cube(" + std::to_string(divisions[0]) + ")";
  }
  return path;
}

RunConfig RunConfig::FromJson(const json &j)
{
  RunConfig c;
  if (j.contains("electrode"))
  {
    const json &e = j["electrode"];
    c.electrode.current = ParseComplex(e.value("current", json(1.0)));
    c.electrode.omega = e.value("omega", c.electrode.omega);
    c.electrode.mu = e.value("mu", c.electrode.mu);
    c.electrode.sigma = e.value("sigma", c.electrode.sigma);
    c.electrode.radius = e.value("radius", c.electrode.radius);
    c.electrode.height = e.value("height", c.electrode.height);
  }
  c.electrode.Validate();

  const json mesh = j.value("mesh", json::object());
  if (mesh.contains("files"))
  {
    for (const auto &f : mesh["files"])
    {
      MeshSpec s;
      s.generator = "file";
      s.path = f.get<std::string>();
      c.levels.push_back(s);
    }
  }
  else
  {
    const std::string generator = mesh.value("generator", std::string("cylinder"));
    for (const auto &l : mesh.value("levels", json::array()))
    {
      MeshSpec s;
      s.generator = generator;
      s.radius = mesh.value("radius", c.electrode.radius);
      s.height = mesh.value("height", c.electrode.height);
      if (generator == "cube")
      {
        s.divisions = {l.get<int>(), 0, 0};
      }
      else
      {
        s.divisions = l.get<std::array<int, 3>>();
      }
      c.levels.push_back(s);
    }
  }
  if (c.levels.empty())
  {
    throw std::invalid_argument("config: mesh.levels or mesh.files must list at least one mesh");
  }

  c.order = j.value("order", c.order);
  if (j.contains("target"))
  {
    const json &t = j["target"];
    if (t.is_string())
    {
      c.target = t.get<std::string>();
    }
    else if (t.is_object() && t.contains("constant"))
    {
      c.target = "constant";
      c.constant = ParseComplexVector(t["constant"]);
    }
    else
    {
      throw std::invalid_argument("config: target must be \"electrode\", \"zero\" or "
                                  "{\"constant\": [...]}");
    }
  }
  if (c.target != "electrode" && c.target != "zero" && c.target != "constant")
  {
    throw std::invalid_argument("config: unknown target '" + c.target + "'");
  }
  if (j.contains("source") && !j["source"].is_null())
  {
    c.source = ParseComplexVector(j["source"]);
  }
  c.alpha = j.value("alpha", c.alpha);
  c.beta = j.value("beta", c.beta);
  c.solver_tolerance = j.value("solver_tolerance", c.solver_tolerance);
  c.seed = j.value("seed", c.seed);
  c.vtk = j.value("vtk", c.vtk);

  const json v = j.value("validate", json::object());
  if (v.contains("min_slope"))
  {
    c.min_slope = v["min_slope"].get<double>();
  }
  const json g = j.value("gradcheck", json::object());
  c.gradcheck_level = g.value("level", c.gradcheck_level);
  c.gradcheck_direction = g.value("direction", c.gradcheck_direction);
  c.gradcheck_scale = g.value("scale", c.gradcheck_scale);
  if (g.contains("t"))
  {
    c.gradcheck_t = g["t"].get<std::vector<double>>();
  }
  else
  {
    for (int p = 1; p <= 20; p++)
    {
      c.gradcheck_t.push_back(std::pow(10.0, -0.5 * p));
    }
  }
  const json o = j.value("optimize", json::object());
  c.bfgs.tolerance = o.value("tolerance", c.bfgs.tolerance);
  c.bfgs.max_iterations = o.value("max_iterations", 20000);
  return c;
}

RunConfig RunConfig::FromFile(const fs::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot open config " + path.string());
  }
  try
  {
    return FromJson(json::parse(in));
  }
  catch (const json::exception &e)
  {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
}

ProblemConfig RunConfig::Problem() const
{
  ProblemConfig p;
  p.mu = TensorField::Scalar(electrode.sigma);
  p.kappa = TensorField::Scalar(electrode.mu);
  p.omega = electrode.omega;
  p.alpha = alpha;
  p.beta = beta;
  p.solver_tolerance = solver_tolerance;
  if (source)
  {
    const CVec3 j = *source;
    p.current = [j](const Vec3 &) { return j; };
  }
  else if (target == "constant")
  {
    // curl curl c = 0, so the constant solves the state equation with j = i omega kappa c.
    const CVec3 j = Complex(0.0, electrode.omega * electrode.mu) * constant;
    p.current = [j](const Vec3 &) { return j; };
  }
  p.desired = ExactH();
  p.Validate();
  return p;
}

VectorField RunConfig::ExactH() const
{
  if (target == "electrode")
  {
    auto sol = std::make_shared<ElectrodeSolution>(electrode);
    return [sol](const Vec3 &x) { return CVec3(sol->H(x)); };
  }
  if (target == "constant")
  {
    const CVec3 c = constant;
    return [c](const Vec3 &) { return c; };
  }
  return {};
}

VectorField RunConfig::ExactCurlH() const
{
  if (target == "electrode")
  {
    auto sol = std::make_shared<ElectrodeSolution>(electrode);
    return [sol](const Vec3 &x) { return CVec3(sol->CurlH(x)); };
  }
  return [](const Vec3 &) { return CVec3(CVec3::Zero()); };
}

double RunConfig::MinSlope() const
{
  return min_slope ? *min_slope : 0.9 * (order + 1);
}

bool StudyOutput::Passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

double LogLogSlope(const std::vector<double> &x, const std::vector<double> &y)
{
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
  {
    return 0.0;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool StrictlyDecreasing(const std::vector<double> &v)
{
  for (std::size_t i = 1; i < v.size(); i++)
  {
    if (!(v[i] < v[i - 1]))
    {
      return false;
    }
  }
  return true;
}

//
// Convergence against the exact field. The boundary carries the full moment interpolant
// of the exact field; the source is whatever the target requires.
//

namespace
{

ConvergenceRow SolveLevel(const RunConfig &config, int level, ComplexVector *u_out,
                          std::unique_ptr<Discretization> *keep)
{
  const auto t0 = Clock::now();
  auto d = std::make_unique<Discretization>(config.levels[level].Build(), config.order,
                                            config.Problem());
  const double setup = Seconds(t0);
  const auto t1 = Clock::now();
  const VectorField H = config.ExactH() ? config.ExactH() : VectorField([](const Vec3 &) {
    return CVec3(CVec3::Zero());
  });
  const ComplexVector g = Restrict(Interpolate(d->space, H), d->space.BoundaryDofs());
  const ComplexVector u = d->op.SolveBoundaryValues(g, d->op.Load());
  const double solve = Seconds(t1);
  ConvergenceRow row{level, d->mesh.MeshSize(), d->space.Size(),
                     HcurlError(d->space, u, H, config.ExactCurlH()), setup, solve};
  if (u_out)
  {
    *u_out = u;
  }
  if (keep)
  {
    *keep = std::move(d);
  }
  return row;
}

} // namespace

ConvergenceResult RunConvergence(const RunConfig &config)
{
  const int n = static_cast<int>(config.levels.size());
  std::vector<ConvergenceRow> rows(n);
  auto body = [&](int i) {
    rows[i] = SolveLevel(config, i, nullptr, nullptr);
    Log("validate: level " + std::to_string(i) + " " + config.levels[i].Label() + " dofs " +
        std::to_string(rows[i].dofs) + " error " + Fmt(rows[i].error));
  };
  ParallelFor(n, config.threads, body).Rethrow();
  ConvergenceResult result;
  result.rows = rows;
  std::vector<double> h, e;
  for (const auto &r : rows)
  {
    h.push_back(r.h);
    e.push_back(r.error);
  }
  result.slope = LogLogSlope(h, e);
  return result;
}

StudyOutput CmdValidate(const RunConfig &config, const fs::path &out_dir)
{
  fs::create_directories(out_dir);
  const int n = static_cast<int>(config.levels.size());
  std::vector<std::optional<ConvergenceRow>> rows(n);
  auto body = [&](int i) {
    ComplexVector u;
    std::unique_ptr<Discretization> d;
    rows[i] = SolveLevel(config, i, config.vtk ? &u : nullptr, config.vtk ? &d : nullptr);
    Log("validate: level " + std::to_string(i) + " " + config.levels[i].Label() + " dofs " +
        std::to_string(rows[i]->dofs) + " error " + Fmt(rows[i]->error));
    if (config.vtk)
    {
      auto out = OpenOutput(out_dir / ("field_level" + std::to_string(i) + ".vtk"));
      WriteVtk(d->space, u, out);
    }
  };
  const ParallelStatus status = ParallelFor(n, config.threads, body);
  const int completed = status.completed;

  // Rows of the levels that finished, in order; a failure leaves a partial table.
  auto csv = OpenOutput(out_dir / "convergence.csv");
  csv << "level,h,dofs,error\n";
  std::vector<double> h, e;
  json timings = json::array();
  for (int i = 0; i < completed; i++)
  {
    const auto &r = *rows[i];
    csv << r.level << "," << Fmt(r.h) << "," << r.dofs << "," << Fmt(r.error) << "\n";
    h.push_back(r.h);
    e.push_back(r.error);
    timings.push_back({{"level", i}, {"setup_seconds", r.setup_seconds},
                       {"solve_seconds", r.solve_seconds}});
  }
  csv.close();
  status.Rethrow();

  StudyOutput out;
  const double slope = LogLogSlope(h, e);
  out.summary = {{"command", "validate"}, {"config", ConfigJson(config)}, {"slope", slope},
                 {"timings", timings}};
  if (config.target == "constant")
  {
    const double worst = *std::max_element(e.begin(), e.end());
    out.checks.push_back({"constant field reproduced", worst <= 1e-9,
                          "max error " + Fmt(worst)});
  }
  else
  {
    out.checks.push_back({"at least three levels", n >= 3, std::to_string(n) + " levels"});
    out.checks.push_back({"convergence slope", slope >= config.MinSlope(),
                          "slope " + Fmt(slope) + " (min " + Fmt(config.MinSlope()) + ")"});
  }
  WriteSummary(out, out_dir);
  return out;
}

//
// Gradient check: forward differences of j along real steps t.
//

FdReport RunGradientCheck(const RunConfig &config)
{
  if (config.gradcheck_level < 0 || config.gradcheck_level >= static_cast<int>(config.levels.size()))
  {
    throw std::invalid_argument("gradcheck.level out of range");
  }
  Discretization d(config.levels[config.gradcheck_level].Build(), config.order, config.Problem());
  const ReducedProblem problem(d.op, d.problem);

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal;
  auto random = [&] {
    ComplexVector v(problem.Size());
    for (Eigen::Index i = 0; i < v.size(); i++)
    {
      const double re = normal(rng);
      v(i) = Complex(re, normal(rng));
    }
    return v;
  };
  const ComplexVector z = config.gradcheck_scale * random();
  ComplexVector xi;
  if (config.gradcheck_direction == "radial")
  {
    xi = z;
  }
  else if (config.gradcheck_direction == "random")
  {
    xi = random();
  }
  else if (config.gradcheck_direction == "imaginary")
  {
    xi = Complex(0.0, 1.0) * random();
  }
  else
  {
    throw std::invalid_argument("gradcheck.direction must be radial, random or imaginary");
  }
  const ReducedGradient g = problem.Gradient(z);
  auto j = [&](const ComplexVector &x) { return problem.Cost(x).J; };
  return FdCheck(j, RealDerivative(g.G, xi), z, xi, config.gradcheck_t);
}

StudyOutput CmdGradCheck(const RunConfig &config, const fs::path &out_dir)
{
  fs::create_directories(out_dir);
  const auto t0 = Clock::now();
  const FdReport fd = RunGradientCheck(config);
  auto csv = OpenOutput(out_dir / "gradcheck.csv");
  csv << "t,quotient,error,relative\n";
  for (const auto &r : fd.rows)
  {
    csv << Fmt(r.t) << "," << Fmt(r.quotient) << "," << Fmt(r.error) << "," << Fmt(r.relative)
        << "\n";
  }
  csv.close();

  StudyOutput out;
  out.summary = {{"command", "grad-check"},
                 {"config", ConfigJson(config)},
                 {"direction", config.gradcheck_direction},
                 {"derivative", fd.derivative},
                 {"slope", fd.slope},
                 {"decay_decades", fd.decades},
                 {"decay_t", {fd.rows.empty() ? 0.0 : fd.rows[fd.decay_begin].t,
                              fd.rows.empty() ? 0.0 : fd.rows[fd.decay_end - 1].t}},
                 {"floor", fd.floor},
                 {"seconds", Seconds(t0)}};
  out.checks.push_back({"slope in [0.8, 1.2]", fd.slope >= 0.8 && fd.slope <= 1.2,
                        "slope " + Fmt(fd.slope)});
  out.checks.push_back({"decay over four decades", fd.decades >= 4.0,
                        Fmt(fd.decades) + " decades"});
  out.checks.push_back({"plateau below 1e-7", fd.floor <= 1e-7, "floor " + Fmt(fd.floor)});
  WriteSummary(out, out_dir);
  return out;
}

//
// Optimization study: BFGS from z = 0 on every level; the last level is the reference.
//

OptimizationStudy RunOptimization(const RunConfig &config)
{
  const int n = static_cast<int>(config.levels.size());
  OptimizationStudy study;
  study.levels.resize(n);
  auto body = [&](int i) {
    const auto t0 = Clock::now();
    Discretization d(config.levels[i].Build(), config.order, config.Problem());
    const ReducedProblem problem(d.op, d.problem);
    auto &lvl = study.levels[i];
    lvl.level = i;
    lvl.h = d.mesh.MeshSize();
    lvl.dofs = d.space.Size();
    lvl.controls = problem.Size();
    lvl.result = Minimize(problem, ComplexVector::Zero(problem.Size()), config.bfgs);
    lvl.seconds = Seconds(t0);
    Log("optimize: level " + std::to_string(i) + " " + config.levels[i].Label() + " dofs " +
        std::to_string(lvl.dofs) + " iterations " +
        std::to_string(lvl.result.history.size() - 1) + " J " + Fmt(lvl.result.final.J) +
        " |G| " + Fmt(lvl.result.final.grad_norm) + " (" + lvl.result.message + ")");
  };
  ParallelFor(n, config.threads, body).Rethrow();

  const CostReport &ref = study.levels.back().result.final;
  auto gap = [](double v, double r) { return r != 0.0 ? std::abs(v - r) / std::abs(r) : std::abs(v); };
  for (int i = 0; i + 1 < n; i++)
  {
    const CostReport &c = study.levels[i].result.final;
    study.gap_J.push_back(gap(c.J, ref.J));
    study.gap_J1.push_back(gap(c.J1, ref.J1));
    study.gap_J2.push_back(gap(c.J2, ref.J2));
  }
  return study;
}

StudyOutput CmdOptimize(const RunConfig &config, const fs::path &out_dir)
{
  fs::create_directories(out_dir);
  const OptimizationStudy study = RunOptimization(config);
  const int n = static_cast<int>(study.levels.size());

  auto table = OpenOutput(out_dir / "optimize.csv");
  table << "level,h,dofs,controls,iterations,J,J1,J2,J3,grad_norm,gap_J,gap_J1,gap_J2\n";
  json timings = json::array();
  bool converged = true;
  bool monotone_history = true;
  for (int i = 0; i < n; i++)
  {
    const auto &lvl = study.levels[i];
    const CostReport &c = lvl.result.final;
    const bool is_ref = i + 1 == n;
    table << i << "," << Fmt(lvl.h) << "," << lvl.dofs << "," << lvl.controls << ","
          << lvl.result.history.size() - 1 << "," << Fmt(c.J) << "," << Fmt(c.J1) << ","
          << Fmt(c.J2) << "," << Fmt(c.J3) << "," << Fmt(c.grad_norm) << ","
          << (is_ref ? "" : Fmt(study.gap_J[i])) << "," << (is_ref ? "" : Fmt(study.gap_J1[i]))
          << "," << (is_ref ? "" : Fmt(study.gap_J2[i])) << "\n";
    timings.push_back({{"level", i}, {"seconds", lvl.seconds},
                       {"evaluations", lvl.result.evaluations}, {"message", lvl.result.message}});
    converged = converged && lvl.result.converged && c.grad_norm <= config.bfgs.tolerance;

    auto hist = OpenOutput(out_dir / ("history_level" + std::to_string(i) + ".csv"));
    hist << "iter,J,J1,J2,J3,grad_norm,step\n";
    for (std::size_t k = 0; k < lvl.result.history.size(); k++)
    {
      const CostReport &r = lvl.result.history[k];
      hist << r.iteration << "," << Fmt(r.J) << "," << Fmt(r.J1) << "," << Fmt(r.J2) << ","
           << Fmt(r.J3) << "," << Fmt(r.grad_norm) << "," << Fmt(r.step) << "\n";
      if (k > 0 && !(r.J <= lvl.result.history[k - 1].J))
      {
        monotone_history = false;
      }
    }

    const Mesh mesh = config.levels[i].Build();
    auto ctrl = OpenOutput(out_dir / ("control_level" + std::to_string(i) + ".csv"));
    ctrl << "boundary_edge,v0,v1,re,im\n";
    for (int be = 0; be < mesh.NumBoundaryEdges(); be++)
    {
      const auto &e = mesh.Edge(mesh.BoundaryEdge(be));
      ctrl << be << "," << e[0] << "," << e[1] << "," << Fmt(lvl.result.z(be).real()) << ","
           << Fmt(lvl.result.z(be).imag()) << "\n";
    }
    if (config.vtk)
    {
      const Discretization d(mesh, config.order, config.Problem());
      auto vtk = OpenOutput(out_dir / ("state_level" + std::to_string(i) + ".vtk"));
      WriteVtk(d.space, d.op.Solve(lvl.result.z), vtk);
    }
  }

  StudyOutput out;
  out.summary = {{"command", "optimize"},
                 {"config", ConfigJson(config)},
                 {"reference_level", n - 1},
                 {"gap_J", study.gap_J},
                 {"gap_J1", study.gap_J1},
                 {"gap_J2", study.gap_J2},
                 {"timings", timings}};
  out.checks.push_back({"all levels reach the gradient tolerance", converged,
                        "tolerance " + Fmt(config.bfgs.tolerance)});
  out.checks.push_back({"cost histories nonincreasing", monotone_history, ""});
  if (n >= 4)
  {
    out.checks.push_back({"J gaps decrease", StrictlyDecreasing(study.gap_J), ""});
    out.checks.push_back({"J1 gaps decrease", StrictlyDecreasing(study.gap_J1), ""});
  }
  WriteSummary(out, out_dir);
  return out;
}

StudyOutput CmdGenMesh(const RunConfig &config, const fs::path &out_dir)
{
  fs::create_directories(out_dir);
  StudyOutput out;
  json meshes = json::array();
  auto csv = OpenOutput(out_dir / "meshes.csv");
  csv << "level,vertices,tets,edges,faces,boundary_faces,boundary_edges,h,volume,euler\n";
  for (std::size_t i = 0; i < config.levels.size(); i++)
  {
    const Mesh mesh = config.levels[i].Build();
    const std::string name = "mesh_level" + std::to_string(i) + ".msh";
    auto msh = OpenOutput(out_dir / name);
    WriteMsh(mesh, msh);
    csv << i << "," << mesh.NumVertices() << "," << mesh.NumTets() << "," << mesh.NumEdges()
        << "," << mesh.NumFaces() << "," << mesh.NumBoundaryFaces() << ","
        << mesh.NumBoundaryEdges() << "," << Fmt(mesh.MeshSize()) << ","
        << Fmt(mesh.TotalVolume()) << "," << mesh.BoundaryEulerCharacteristic() << "\n";
    meshes.push_back({{"file", name}, {"label", config.levels[i].Label()}});
    out.checks.push_back({"closed boundary for " + config.levels[i].Label(),
                          mesh.BoundaryEulerCharacteristic() == 2,
                          "Euler characteristic " +
                              std::to_string(mesh.BoundaryEulerCharacteristic())});
  }
  out.summary = {{"command", "gen-mesh"}, {"config", ConfigJson(config)}, {"meshes", meshes}};
  WriteSummary(out, out_dir);
  return out;
}

} // namespace eddy
