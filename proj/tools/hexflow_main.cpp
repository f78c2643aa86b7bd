#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hexflow/curvature.hpp"
#include "hexflow/flows.hpp"
#include "hexflow/hexagon.hpp"
#include "hexflow/numerics.hpp"
#include "hexflow/surface_io.hpp"

namespace {

using namespace hexflow;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotAdmissible:
    case ErrorKind::DomainError:
    case ErrorKind::PathLeavesAdmissible:
      return 3;
    default:
      return 1;
  }
}

std::vector<double> factors_to_u(const io::SurfaceDocument& doc, const std::string& path) {
  io::FactorAssignment fa = io::load_factors(path, doc.tri.n_boundaries);
  return fa.to_u(doc.scheme);
}

int cmd_validate(const std::string& surface_path) {
  io::SurfaceDocument doc = io::load_surface(surface_path);
  const IdealTriangulation& tri = doc.tri;
  int chi = tri.euler_char();
  std::cout << "N=" << tri.n_boundaries << " |E|=" << tri.edges.size()
            << " |F|=" << tri.faces.size() << " chi=" << chi << "\n";
  std::cout << "chi_surface=" << chi - tri.n_boundaries << "\n";
  std::cout << "scheme=" << to_string(doc.config.kind) << "\n";
  if (doc.scheme.is_mixed()) {
    std::string cls;
    for (int i = 0; i < tri.n_boundaries; ++i) cls += doc.scheme.sign_class(i) > 0 ? '+' : '-';
    std::cout << "classes=" << cls << "\n";
  }
  std::string why;
  bool cap = doc.scheme.solver_supported(&why);
  std::cout << "solver=" << (cap ? "supported" : "unsupported (" + why + ")") << "\n";
  std::cout << "globally_convergent="
            << (doc.scheme.global_convergence_certified() ? "yes" : "no") << "\n";
  std::cout << "constraints=ok\n";
  return 0;
}

int cmd_curvature(const std::string& surface_path, const std::string& factors_path) {
  io::SurfaceDocument doc = io::load_surface(surface_path);
  std::vector<double> u = factors_to_u(doc, factors_path);

  AdmissibilityReport rep = check_admissible(doc.tri, doc.scheme, u);
  if (!rep.admissible) {
    std::cout << "admissible=no\n";
    for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
    return 3;
  }
  std::cout << "admissible=yes\n";

  SurfaceEval eval = evaluate_surface(doc.tri, doc.scheme, u, false);
  for (size_t i = 0; i < eval.k.size(); ++i) std::cout << "K[" << i << "]=" << fmt(eval.k[i]) << "\n";

  std::vector<double> f(u.size());
  for (size_t i = 0; i < u.size(); ++i)
    f[i] = doc.scheme.f_from_u(static_cast<int>(i), u[i]);
  for (size_t e = 0; e < doc.tri.edges.size(); ++e) {
    const IdealEdge& ed = doc.tri.edges[e];
    double l = doc.scheme.edge_length(static_cast<int>(e), f[ed.ends[0]], f[ed.ends[1]]);
    std::cout << "l[" << e << "]=" << fmt(l) << " ends=(" << ed.ends[0] << "," << ed.ends[1]
              << ")\n";
  }
  for (size_t t = 0; t < doc.tri.faces.size(); ++t) {
    const HexFace& face = doc.tri.faces[t];
    std::array<double, 3> ft{f[face.corners[0]], f[face.corners[1]], f[face.corners[2]]};
    FaceEval fe = evaluate_face(doc.tri, doc.scheme, static_cast<int>(t), ft, false);
    for (int s = 0; s < 3; ++s)
      std::cout << "theta[" << t << "][" << s << "]=" << fmt(fe.theta[s]) << " boundary="
                << face.corners[s] << "\n";
  }
  return 0;
}

int cmd_flow(const std::string& surface_path, const std::string& target_path,
             const std::string& method_name, const std::string& start, SolverConfig cfg,
             std::uint64_t seed, const std::string& trace_path, const std::string& report_path) {
  io::SurfaceDocument doc = io::load_surface(surface_path);
  std::vector<double> kbar = io::load_target(target_path, doc.tri.n_boundaries);

  auto method = flow_method_from_string(method_name);
  if (!method)
    throw Error(ErrorKind::BadInput, "unknown method '" + method_name + "'");
  cfg.method = *method;

  std::vector<double> u0 = start == "random"
                               ? random_admissible_start(doc.tri, doc.scheme, seed)
                               : factors_to_u(doc, start);

  FlowResult res = run_solver(doc.tri, doc.scheme, u0, kbar, cfg);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::BadInput, trace_path + ": cannot open for writing");
    io::write_trace_csv(out, res, doc.tri.n_boundaries);
  }
  if (!report_path.empty())
    io::write_file(report_path, io::render_report(doc.tri, doc.scheme, res, *method));

  std::cout << "outcome=" << to_string(res.outcome) << " steps=" << res.steps
            << " residual=" << fmt(res.residual) << " wall_seconds=" << fmt(res.wall_seconds)
            << "\n";
  if (res.near_zero_warning)
    std::cout << "warning: trajectory approached the u=0 wall (min |u_i| = "
              << fmt(res.min_abs_u) << ")\n";
  switch (res.outcome) {
    case FlowOutcome::Converged: return 0;
    case FlowOutcome::MaxSteps: return 2;
    case FlowOutcome::LeftAdmissible: return 3;
  }
  return 1;
}

int cmd_check(const std::string& surface_path, const std::string& factors_path, double h,
              bool corrupt_chart) {
  io::SurfaceDocument doc = io::load_surface(surface_path);
  const IdealTriangulation& tri = doc.tri;
  const Scheme& scheme = doc.scheme;
  std::vector<double> u = factors_to_u(doc, factors_path);

  AdmissibilityReport rep = check_admissible(tri, scheme, u);
  if (!rep.admissible) {
    for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
    return 3;
  }

  const int n = tri.n_boundaries;
  auto face_f = [&](int t, const std::vector<double>& uu) {
    std::array<double, 3> ft;
    for (int s = 0; s < 3; ++s)
      ft[s] = scheme.f_from_u(tri.faces[t].corners[s], uu[tri.faces[t].corners[s]]);
    return ft;
  };

  // Per-face: A-quantity permutation residual and analytic-vs-FD Jacobian, plus a
  // Laplacian assembled here from the face blocks (the corruption hook scales the
  // columns belonging to boundary 0, which must show up as a symmetry failure).
  double a_res = 0.0, face_fd_rel = 0.0;
  std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
  for (size_t t = 0; t < tri.faces.size(); ++t) {
    FaceEval fe = evaluate_face(tri, scheme, static_cast<int>(t), face_f(static_cast<int>(t), u),
                                true);
    std::array<double, 3> l = fe.l;
    double a0 = fe.a;
    a_res = std::max(a_res, std::abs(a_quantity(l[1], l[0], l[2]) - a0));
    a_res = std::max(a_res, std::abs(a_quantity(l[2], l[1], l[0]) - a0));

    Mat3 jac = fe.jacobian;
    if (corrupt_chart)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          if (tri.faces[t].corners[c] == 0) jac[r][c] *= 1.01;

    double scale = 0.0, diff = 0.0;
    for (int c = 0; c < 3; ++c) {
      std::vector<double> up = u, um = u;
      up[tri.faces[t].corners[c]] += h;
      um[tri.faces[t].corners[c]] -= h;
      FaceEval fp = evaluate_face(tri, scheme, static_cast<int>(t),
                                  face_f(static_cast<int>(t), up), false);
      FaceEval fm = evaluate_face(tri, scheme, static_cast<int>(t),
                                  face_f(static_cast<int>(t), um), false);
      for (int r = 0; r < 3; ++r) {
        double fd = (fp.theta[r] - fm.theta[r]) / (2.0 * h);
        diff = std::max(diff, std::abs(fe.jacobian[r][c] - fd));
        scale = std::max(scale, std::abs(fe.jacobian[r][c]));
      }
    }
    face_fd_rel = std::max(face_fd_rel, diff / std::max(1.0, scale));

    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        lap[tri.faces[t].corners[r]][tri.faces[t].corners[c]] += jac[r][c];
  }

  double lap_scale = 0.0, sym_res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lap_scale = std::max(lap_scale, std::abs(lap[i][j]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      sym_res = std::max(sym_res, std::abs(lap[i][j] - lap[j][i]) / std::max(1.0, lap_scale));

  num::SparseSymMatrix delta = laplacian(tri, scheme, u);
  std::vector<std::vector<double>> fd = num::fd_jacobian(
      [&](const std::vector<double>& uu) { return curvature_K(tri, scheme, uu); }, u, h);
  double lap_fd_rel = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lap_fd_rel =
          std::max(lap_fd_rel, std::abs(delta.get(i, j) - fd[i][j]) / std::max(1.0, lap_scale));

  double max_eig = num::max_eigenvalue(delta);

  std::printf("A permutation residual = %.3e\n", a_res);
  std::printf("face jacobian vs finite differences = %.3e\n", face_fd_rel);
  std::printf("laplacian symmetry residual = %.3e\n", sym_res);
  std::printf("laplacian vs finite differences = %.3e\n", lap_fd_rel);
  std::printf("laplacian max eigenvalue = %.6g\n", max_eig);

  bool ok = true;
  if (a_res > 1e-12) ok = false;
  if (face_fd_rel > 1e-6) ok = false;
  if (sym_res > 1e-9) {
    std::printf("FAIL: symmetry residual %.3e exceeds 1e-9\n", sym_res);
    ok = false;
  }
  if (lap_fd_rel > 1e-6) ok = false;
  if (!(max_eig < 0.0)) ok = false;
  std::printf("check: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prescribed boundary curvature solver for ideally triangulated surfaces"};
  app.require_subcommand(1);

  std::string surface, factors, target, method = "newton", start, trace, report;
  double h = 1e-5;
  bool corrupt_chart = false;
  std::uint64_t seed = 1;
  hexflow::SolverConfig cfg;

  CLI::App* v = app.add_subcommand("validate", "Parse a surface file and check all constraints");
  v->add_option("surface", surface, "surface JSON file")->required();

  CLI::App* c = app.add_subcommand("curvature", "Report curvatures, lengths and arcs at a point");
  c->add_option("surface", surface, "surface JSON file")->required();
  c->add_option("factors", factors, "factor JSON file")->required();

  CLI::App* fl = app.add_subcommand("flow", "Run a solver toward a prescribed curvature target");
  fl->add_option("surface", surface, "surface JSON file")->required();
  fl->add_option("target", target, "target JSON file")->required();
  fl->add_option("--method", method, "ricci | calabi | newton");
  fl->add_option("--tol", cfg.tol, "residual tolerance");
  fl->add_option("--dt0", cfg.dt0, "initial step size");
  fl->add_option("--max-steps", cfg.max_steps, "accepted-step budget");
  fl->add_option("--seed", seed, "seed for --start random");
  fl->add_option("--start", start, "factor file path, or 'random'")->required();
  fl->add_option("--trace", trace, "write per-step CSV here");
  fl->add_option("--report", report, "write run report JSON here");

  CLI::App* ck = app.add_subcommand("check", "Cross-validate Jacobians against finite differences");
  ck->set_help_flag("--help", "print help");  // frees -h for the step-size option
  ck->add_option("surface", surface, "surface JSON file")->required();
  ck->add_option("factors", factors, "factor JSON file")->required();
  ck->add_option("--h", h, "finite-difference step");
  ck->add_flag("--corrupt-chart", corrupt_chart)->group("");  // test hook, hidden

  try {
    app.parse(argc, argv);
    if (v->parsed()) return cmd_validate(surface);
    if (c->parsed()) return cmd_curvature(surface, factors);
    if (fl->parsed()) return cmd_flow(surface, target, method, start, cfg, seed, trace, report);
    if (ck->parsed()) return cmd_check(surface, factors, h, corrupt_chart);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const hexflow::Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
