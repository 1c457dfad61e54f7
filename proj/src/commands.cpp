#include "pseudoroll/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>

#include "pseudoroll/charts.hpp"
#include "pseudoroll/csv.hpp"
#include "pseudoroll/distribution.hpp"
#include "pseudoroll/expression.hpp"
#include "pseudoroll/intrinsic.hpp"
#include "pseudoroll/reachability.hpp"
#include "pseudoroll/scenario.hpp"

namespace pseudoroll {

namespace {

using nlohmann::json;

std::string out_path(const RunOptions& opts, const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + opts.out_dir + ": " +
                  ec.message());
  return (fs::path(opts.out_dir) / name).string();
}

// Assemble-then-write, like CsvTable::write: a throwing computation never
// leaves a truncated artifact behind.
void write_json_file(const std::string& path, const json& j) {
  const std::string body = j.dump(2) + "\n";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write to " + path + " failed");
}

json to_json(const VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Scenario load(const RunOptions& opts) {
  if (opts.scenario_path.empty())
    throw ParseError("this command needs --scenario <file>");
  Scenario sc = load_scenario(opts.scenario_path);
  if (opts.step > 0) sc.step = opts.step;
  if (opts.grid > 0) {
    sc.grid_na = opts.grid;
    sc.grid_nb = opts.grid;
  }
  return sc;
}

RollingTrajectory roll_scenario(const Scenario& sc, const Hyperquadric& hq) {
  if (!sc.has_control)
    throw ParseError("the scenario needs a 'control' section for this command");
  return integrate_kinematics(hq, sc.x0, sc.control,
                              uniform_grid(0.0, sc.t_end, sc.step));
}

double group_defect(const Eigen::MatrixXd& r, const Eigen::MatrixXd& jg) {
  return (r.transpose() * jg * r - jg).cwiseAbs().maxCoeff();
}

int cmd_roll(const RunOptions& opts) {
  const Scenario sc = load(opts);
  const Hyperquadric hq(sc.sig, sc.level);
  const RollingTrajectory traj = roll_scenario(sc, hq);
  const int n = sc.sig.n;
  const Eigen::MatrixXd jg = sc.sig.gram();
  const CurveSamples rolling = traj.rolling_curve();
  const CurveSamples development = traj.development_curve();

  CsvTable table;
  table.header.push_back("t");
  for (int i = 0; i < n; ++i) table.header.push_back("u_" + std::to_string(i));
  for (int i = 0; i < n; ++i) table.header.push_back("x_" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    table.header.push_back("xhat_" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table.header.push_back("r_" + std::to_string(i) + "_" +
                             std::to_string(j));
  table.header.push_back("drift");

  double max_drift = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.reserve(table.header.size());
    row.push_back(traj.times[k]);
    for (int i = 0; i < n; ++i) row.push_back(traj.controls[k](i));
    for (int i = 0; i < n; ++i) row.push_back(rolling.points[k](i));
    for (int i = 0; i < n; ++i) row.push_back(development.points[k](i));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) row.push_back(traj.rot[k](i, j));
    const double drift = group_defect(traj.rot[k], jg);
    max_drift = std::max(max_drift, drift);
    row.push_back(drift);
    table.add_row(row);
  }
  table.write(out_path(opts, "trajectory.csv"));
  std::cout << "roll: " << traj.times.size() << " samples, max drift "
            << format_number(max_drift) << "\n";
  return 0;
}

int cmd_verify(const RunOptions& opts) {
  const Scenario sc = load(opts);
  const Hyperquadric hq(sc.sig, sc.level);
  const RollingTrajectory traj = roll_scenario(sc, hq);
  const VerificationReport report = verify_rolling(traj, opts.tol);

  json j;
  j["contact"] = report.contact;
  j["tangency"] = report.tangency;
  j["orientation"] = report.orientation;
  j["no_slip"] = report.no_slip;
  j["no_twist_tangent"] = report.no_twist_tangent;
  j["no_twist_normal"] = report.no_twist_normal;
  j["max_residual"] = report.max_residual();
  j["tol"] = report.tol;
  j["pass"] = report.pass();
  write_json_file(out_path(opts, "verification.json"), j);

  std::cout << report.summary() << "\n";
  if (!report.pass()) {
    std::cerr << "verify: worst residual " << format_number(report.max_residual())
              << " exceeds tol " << format_number(report.tol) << "\n";
    return 1;
  }
  return 0;
}

int cmd_transport(const RunOptions& opts) {
  const Scenario sc = load(opts);
  if (!sc.has_transport)
    throw ParseError("the scenario needs a 'transport' section");
  const Hyperquadric hq(sc.sig, sc.level);
  const RollingTrajectory traj = roll_scenario(sc, hq);
  const std::vector<VectorXd> y =
      rolling_transport(traj, sc.transport_y0, sc.transport_flavor);

  CsvTable table;
  table.header.push_back("t");
  for (int i = 0; i < sc.sig.n; ++i)
    table.header.push_back("y_" + std::to_string(i));
  table.header.push_back("q");

  const double q0 = j_inner(sc.transport_y0, sc.transport_y0, sc.sig);
  double worst = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.push_back(traj.times[k]);
    for (int i = 0; i < sc.sig.n; ++i) row.push_back(y[k](i));
    const double q = j_inner(y[k], y[k], sc.sig);
    row.push_back(q);
    worst = std::max(worst, std::abs(q - q0));
    table.add_row(row);
  }
  table.write(out_path(opts, "transport.csv"));
  std::cout << "transport: <y,y> drift " << format_number(worst) << "\n";
  if (worst > opts.tol) {
    std::cerr << "transport: scalar product drift exceeds tol\n";
    return 1;
  }
  return 0;
}

int cmd_reach(const RunOptions& opts) {
  const Scenario sc = load(opts);
  if (!sc.has_target) throw ParseError("the scenario needs a 'target' vector");
  const Hyperquadric hq(sc.sig, sc.level);
  const ReachabilityResult res = classify(hq, sc.x0, sc.target);
  const HyperplaneRegion region = hyperplane_test(hq, sc.x0, sc.target);

  json j;
  j["kind"] = to_string(res.kind);
  j["inner"] = res.inner;
  j["region"] = to_string(region);
  j["region_consistent"] = region_of_kind(res.kind) == region;

  bool pass = true;
  if (res.u && res.t1) {
    j["u"] = to_json(*res.u);
    j["t1"] = *res.t1;
    const VectorXd end = hq.geodesic(sc.x0, *res.u, *res.t1);
    const double endpoint_error = (end - sc.target).cwiseAbs().maxCoeff();
    j["endpoint_error"] = endpoint_error;

    // Round trip through the kinematic integrator: a geodesic is the rolling
    // curve of the constant control u.
    const RollingTrajectory traj =
        integrate_kinematics(hq, sc.x0, Control::constant(*res.u),
                             uniform_grid(0.0, *res.t1, sc.step));
    const double roundtrip_error =
        (traj.rolling_curve().points.back() - sc.target).cwiseAbs().maxCoeff();
    j["roundtrip_error"] = roundtrip_error;
    pass = std::max(endpoint_error, roundtrip_error) <= opts.tol;
  }
  if (res.broken) {
    j["broken"] = {{"midpoint", to_json(res.broken->midpoint)},
                   {"first_leg", to_string(res.broken->first_leg)}};
  }
  write_json_file(out_path(opts, "reach.json"), j);
  std::cout << "reach: " << to_string(res.kind) << " (inner "
            << format_number(res.inner) << ")\n";
  if (!pass) {
    std::cerr << "reach: constructed geodesic misses the target beyond tol\n";
    return 1;
  }
  return 0;
}

// Stable label codes for the partition CSV (independent of enum order).
int partition_code(ReachKind k) {
  switch (k) {
    case ReachKind::TimelikeGeodesic: return 1;
    case ReachKind::NullGeodesic: return 2;
    case ReachKind::SpacelikeGeodesic: return 3;
    case ReachKind::Antipodal: return 4;
    default: return 5;
  }
}

int cmd_partition(const RunOptions& opts) {
  const Scenario sc = load(opts);
  const Hyperquadric hq(sc.sig, sc.level);
  const std::vector<PartitionPoint> pts =
      sample_partition(hq, sc.x0, sc.grid_na, sc.grid_nb, sc.a_max);

  CsvTable table;
  table.header = {"a", "b", "x_0", "x_1", "x_2", "inner", "kind"};
  std::map<int, std::size_t> counts;
  for (const auto& p : pts) {
    table.add_row({p.a, p.b, p.x(0), p.x(1), p.x(2), p.inner,
                   double(partition_code(p.kind))});
    ++counts[partition_code(p.kind)];
  }
  table.write(out_path(opts, "partition.csv"));

  json legend;
  for (const ReachKind k :
       {ReachKind::TimelikeGeodesic, ReachKind::NullGeodesic,
        ReachKind::SpacelikeGeodesic, ReachKind::Antipodal,
        ReachKind::NotSingleGeodesic})
    legend[std::to_string(partition_code(k))] = to_string(k);
  write_json_file(out_path(opts, "partition_legend.json"), legend);

  std::cout << "partition: " << pts.size() << " labeled points over a "
            << sc.grid_na << "x" << sc.grid_nb << " grid\n";
  for (const auto& [code, count] : counts)
    std::cout << "  kind " << code << ": " << count << "\n";
  return 0;
}

// Worst pointwise deviation of the sampled fields from the expected Gram
// matrix diag(signs) at sample k (tangent and normal fields together).
double frame_deviation_at(const Signature& sig,
                          const std::vector<const ParallelFrame*>& frames,
                          std::size_t k) {
  std::vector<const VectorXd*> fields;
  std::vector<double> want;
  for (const ParallelFrame* f : frames)
    for (int i = 0; i < f->fields(); ++i) {
      fields.push_back(&f->vectors[k][std::size_t(i)]);
      want.push_back(f->signs(i));
    }
  double worst = 0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? want[i] : 0.0;
      worst = std::max(
          worst, std::abs(j_inner(*fields[i], *fields[j], sig) - expected));
    }
  return worst;
}

int cmd_frames(const RunOptions& opts) {
  const Scenario sc = load(opts);
  if (sc.frame_tangent.empty())
    throw ParseError("the scenario needs frames.tangent for this command");
  const Hyperquadric hq(sc.sig, sc.level);
  const RollingTrajectory traj = roll_scenario(sc, hq);
  const CurveSamples rolling = traj.rolling_curve();

  const ParallelFrame e =
      parallel_frame_along(hq, rolling, sc.frame_tangent, FrameFlavor::Tangent);
  std::vector<const ParallelFrame*> frames = {&e};
  ParallelFrame nf;
  if (!sc.frame_normal.empty()) {
    nf = parallel_frame_along(hq, rolling, sc.frame_normal,
                              FrameFlavor::Normal);
    frames.push_back(&nf);
  }

  CsvTable table;
  table.header.push_back("t");
  for (int i = 0; i < e.fields(); ++i)
    for (int c = 0; c < sc.sig.n; ++c)
      table.header.push_back("e" + std::to_string(i + 1) + "_" +
                             std::to_string(c));
  if (!sc.frame_normal.empty())
    for (int i = 0; i < nf.fields(); ++i)
      for (int c = 0; c < sc.sig.n; ++c)
        table.header.push_back("n" + std::to_string(i + 1) + "_" +
                               std::to_string(c));
  table.header.push_back("deviation");

  double worst = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row;
    row.push_back(traj.times[k]);
    for (int i = 0; i < e.fields(); ++i)
      for (int c = 0; c < sc.sig.n; ++c)
        row.push_back(e.vectors[k][std::size_t(i)](c));
    if (!sc.frame_normal.empty())
      for (int i = 0; i < nf.fields(); ++i)
        for (int c = 0; c < sc.sig.n; ++c)
          row.push_back(nf.vectors[k][std::size_t(i)](c));
    const double dev = frame_deviation_at(sc.sig, frames, k);
    worst = std::max(worst, dev);
    row.push_back(dev);
    table.add_row(row);
  }
  table.write(out_path(opts, "frames.csv"));
  std::cout << "frames: orthonormality deviation " << format_number(worst)
            << "\n";
  if (worst > opts.tol) {
    std::cerr << "frames: transported frame lost orthonormality beyond tol\n";
    return 1;
  }
  return 0;
}

int cmd_config_matrices(const RunOptions& opts) {
  const Scenario sc = load(opts);
  if (sc.frame_tangent.empty() || sc.frame_hat_tangent.empty())
    throw ParseError(
        "the scenario needs frames.tangent and frames_hat.tangent");
  if (sc.frame_normal.empty() != sc.frame_hat_normal.empty())
    throw ParseError(
        "give normal frames on both sides or on neither (codimension-1 "
        "normals are canonical)");
  const Hyperquadric hq(sc.sig, sc.level);
  const RollingTrajectory traj = roll_scenario(sc, hq);
  const CurveSamples rolling = traj.rolling_curve();
  const CurveSamples development = traj.development_curve();
  const AffinePlane plane = AffinePlane::tangent_plane(hq, sc.x0);

  const ParallelFrame e =
      parallel_frame_along(hq, rolling, sc.frame_tangent, FrameFlavor::Tangent);
  const ParallelFrame ehat = parallel_frame_along(
      plane, development, sc.frame_hat_tangent, FrameFlavor::Tangent);

  ParallelFrame n, nhat;
  const ParallelFrame* np = nullptr;
  const ParallelFrame* nhatp = nullptr;
  if (!sc.frame_normal.empty()) {
    n = parallel_frame_along(hq, rolling, sc.frame_normal, FrameFlavor::Normal);
    nhat = parallel_frame_along(plane, development, sc.frame_hat_normal,
                                FrameFlavor::Normal);
    np = &n;
    nhatp = &nhat;
  }

  const ConfigurationMatrices cm =
      configuration_matrices(traj, e, ehat, np, nhatp);
  const bool pass = cm.deviation <= opts.tol;

  json j;
  j["a"] = to_json(cm.a);
  j["b"] = to_json(cm.b);
  j["deviation"] = cm.deviation;
  j["tol"] = opts.tol;
  j["pass"] = pass;
  write_json_file(out_path(opts, "config_matrices.json"), j);

  std::cout << "config-matrices: deviation " << format_number(cm.deviation)
            << "\n";
  if (!pass) {
    std::cerr << "config-matrices: matrices are not constant within tol\n";
    return 1;
  }
  return 0;
}

int causal_code(CausalClass c) {
  switch (c) {
    case CausalClass::Timelike: return -1;
    case CausalClass::Null: return 0;
    default: return 1;
  }
}

int cmd_lift_check(const RunOptions& opts) {
  const Scenario sc = load(opts);
  if (sc.sig != Signature(3, 1) || sc.level != 1.0)
    throw ParseError(
        "lift-check runs on the unit hyperquadric of R^3 with index 1 "
        "(signature {n:3, nu:1}, level 1)");
  const Hyperquadric hq(sc.sig, sc.level);
  const EmbeddedChart surface_chart = lorentz_hyperquadric_chart();
  const AffinePlane plane = AffinePlane::tangent_plane(hq, sc.x0);
  const EmbeddedChart plane_chart = affine_plane_chart(plane);

  TrivializedCurve tc;
  if (!sc.input_csv.empty()) {
    tc = trivialized_from_table(read_csv(sc.input_csv));
  } else {
    const RollingTrajectory traj = roll_scenario(sc, hq);
    tc = trivialize(traj, surface_chart, plane_chart);
  }

  // Codimension 1 with the canonical unit normals: the normal connection
  // vanishes on both sides, but the B-consistency residual is still checked.
  const NormalConnection flat_normal = [](const VectorXd&) {
    return Tensor3{Eigen::MatrixXd::Zero(2, 1)};
  };
  const VectorXd normal_signs = VectorXd::Ones(1);
  const std::vector<double> resid =
      horizontality_residual(tc, surface_chart.chart, plane_chart.chart,
                             flat_normal, flat_normal, &normal_signs);

  const VectorXd signs = chart_frame(surface_chart.chart, tc.x.front()).signs;
  const std::vector<CausalTracePoint> trace =
      causal_trace(tc.times, tc.a, signs);
  const std::vector<double> formula =
      causal_trace_formula(surface_chart.chart, plane_chart.chart, tc);

  CsvTable table;
  table.header = {"t", "residual", "trace", "trace_formula", "class"};
  double max_resid = 0, max_gap = 0;
  for (std::size_t k = 0; k < tc.times.size(); ++k) {
    max_resid = std::max(max_resid, resid[k]);
    max_gap = std::max(max_gap, std::abs(trace[k].value - formula[k]));
    table.add_row({tc.times[k], resid[k], trace[k].value, formula[k],
                   double(causal_code(trace[k].cls))});
  }
  table.write(out_path(opts, "lift_check.csv"));
  std::cout << "lift-check: max horizontality residual "
            << format_number(max_resid) << ", max trace/formula gap "
            << format_number(max_gap) << "\n";
  if (max_resid > opts.tol) {
    std::cerr << "lift-check: curve is not horizontal within tol\n";
    return 1;
  }
  return 0;
}

int cmd_selftest(const RunOptions&) {
  int failures = 0;
  const auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };
  const auto near = [](double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
  };

  {
    const Signature sig(4, 0);
    Eigen::MatrixXd m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = std::sin(3.0 * i + j + 1.0);
    check("J-adjoint reduces to the transpose at index zero",
          (j_adjoint(m, sig) - m.transpose()).cwiseAbs().maxCoeff() == 0);
  }
  {
    const Signature sig(4, 2);
    bool ok = true;
    for (int i = 1; i <= 4 && ok; ++i)
      for (int j = i + 1; j <= 4 && ok; ++j)
        ok = is_algebra_element(lie_basis(i, j, sig).mat, sig);
    check("basis elements W_ij satisfy the algebra constraint", ok);
    check("self-commutators vanish",
          commutator_w(1, 2, 1, 2, sig).cwiseAbs().maxCoeff() == 0);
  }
  {
    const Signature sig(3, 1);
    const GroupElement id =
        GroupElement::checked(Eigen::MatrixXd::Identity(3, 3), sig);
    check("identity sits in the (+,+) component",
          orientation_component(id) == Orientation::PP);
    const GroupElement j = GroupElement::checked(sig.gram(), sig);
    check("diag(-1,1,1) flips only the time orientation",
          orientation_component(j) == Orientation::MP);
    check("zero vectors are spacelike by convention",
          classify_causal_value(0.0, true) == CausalClass::Spacelike);
    check("a pure time direction is timelike",
          causal_class(VectorXd::Unit(3, 0), sig) == CausalClass::Timelike);
  }
  {
    const Signature sig(3, 1);
    const Hyperquadric hq(sig, 1.0);
    VectorXd x0(3);
    x0 << 0, 0, 1;
    const auto traj =
        integrate_kinematics(hq, x0, Control::constant(VectorXd::Zero(3)),
                             uniform_grid(0.0, 1.0, 0.1));
    double worst = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      worst = std::max(
          worst,
          (traj.rot[k] - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
      worst = std::max(
          worst, (traj.development_curve().points[k] - x0).cwiseAbs().maxCoeff());
    }
    check("zero control parks the configuration", worst == 0);
    check("geodesics start at their base point",
          (hq.geodesic(x0, VectorXd::Unit(3, 0), 0.0) - x0)
                  .cwiseAbs()
                  .maxCoeff() == 0);
    bool threw = false;
    try {
      classify(hq, x0, x0);
    } catch (const DegenerateTargetError&) {
      threw = true;
    }
    check("classify rejects a degenerate target", threw);

    const AffinePlane plane = AffinePlane::tangent_plane(hq, x0);
    const EmbeddedChart pc = affine_plane_chart(plane);
    VectorXd pt(2);
    pt << 0.3, -0.7;
    const Tensor3 gamma = christoffel(pc.chart, pt);
    double gmax = 0;
    for (const auto& g : gamma) gmax = std::max(gmax, g.cwiseAbs().maxCoeff());
    check("constant metrics have vanishing Christoffel symbols", gmax == 0);

    // Finite-difference path on a scaled flat metric.
    MetricChart scaled;
    scaled.dim = 2;
    scaled.index = 1;
    scaled.metric = [](const VectorXd&) {
      Eigen::MatrixXd g(2, 2);
      g << -2.5, 0, 0, 2.5;
      return g;
    };
    const Tensor3 gs = christoffel(scaled, pt);
    gmax = 0;
    for (const auto& g : gs) gmax = std::max(gmax, g.cwiseAbs().maxCoeff());
    check("scaled constant metrics keep vanishing Christoffel symbols",
          gmax <= 1e-9);

    const EmbeddedChart mc = lorentz_hyperquadric_chart();
    VectorXd cp(2);
    cp << 0.4, 0.2;
    const Eigen::MatrixXd w0 = lift(mc.chart, mc.chart, cp, cp,
                                    Eigen::MatrixXd::Identity(2, 2),
                                    VectorXd::Zero(2));
    check("lifting the zero vector gives zero coefficients",
          w0.cwiseAbs().maxCoeff() == 0);

    Eigen::MatrixXd boost(2, 2);
    boost << std::cosh(0.3), std::sinh(0.3), std::sinh(0.3), std::cosh(0.3);
    VectorXd v(2);
    v << 0.8, -0.1;
    const Eigen::MatrixXd wf =
        lift(pc.chart, pc.chart, pt, pt, boost, v);
    check("flat-over-flat lifts vanish identically",
          wf.cwiseAbs().maxCoeff() == 0);

    TrivializedCurve still;
    for (int k = 0; k < 6; ++k) {
      still.times.push_back(0.1 * k);
      still.x.push_back(cp);
      still.xhat.push_back(pt);
      still.a.push_back(boost);
      still.b.push_back(Eigen::MatrixXd::Identity(1, 1));
    }
    const auto resid = horizontality_residual(still, mc.chart, pc.chart);
    double rmax = 0;
    for (double r : resid) rmax = std::max(rmax, r);
    check("a stationary curve is horizontal", rmax <= 1e-12);

    VectorXd trace_signs(2);
    trace_signs << -1, 1;
    const auto trace = causal_trace(still.times, still.a, trace_signs);
    bool all_spacelike = true;
    for (const auto& p : trace)
      all_spacelike = all_spacelike && p.cls == CausalClass::Spacelike &&
                      std::abs(p.value) <= 1e-12;
    check("a constant configuration curve is spacelike by the zero convention",
          all_spacelike);

    TrivializedCurve moving = still;
    for (int k = 0; k < 6; ++k) {
      moving.x[std::size_t(k)] = VectorXd::Zero(2);
      moving.x[std::size_t(k)](0) = 0.1 * k;
      moving.xhat[std::size_t(k)] = moving.x[std::size_t(k)];
    }
    const auto formula = causal_trace_formula(pc.chart, pc.chart, moving);
    double fmax = 0;
    for (double f : formula) fmax = std::max(fmax, std::abs(f));
    check("flat charts zero the causal-trace expression", fmax == 0);
  }
  {
    check("expression compiler honors precedence",
          near(parse_expression("2+3*t")(2.0), 8.0));
    check("expression compiler knows the hyperbolic identity",
          near(parse_expression("cosh(t)*cosh(t)-sinh(t)*sinh(t)")(0.7), 1.0,
               1e-12));
    check("expression compiler handles unary minus",
          near(parse_expression("-t/2")(3.0), -1.5));
    check("numeric formatting is 17-digit stable",
          format_number(0.1) == "0.10000000000000001");
    const auto grid = uniform_grid(0.0, 2.0, 1e-3);
    check("uniform grids land exactly on both endpoints",
          grid.size() == 2001 && grid.front() == 0.0 && grid.back() == 2.0);
  }

  std::cout << (failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: failures present\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_command(const std::string& command, const RunOptions& opts) {
  if (command == "roll") return cmd_roll(opts);
  if (command == "verify") return cmd_verify(opts);
  if (command == "transport") return cmd_transport(opts);
  if (command == "reach") return cmd_reach(opts);
  if (command == "partition") return cmd_partition(opts);
  if (command == "frames") return cmd_frames(opts);
  if (command == "config-matrices") return cmd_config_matrices(opts);
  if (command == "lift-check") return cmd_lift_check(opts);
  if (command == "selftest") return cmd_selftest(opts);
  throw ParseError("unknown command '" + command + "'");
}

}  // namespace pseudoroll
