#include "hexflow/flows.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace hexflow {

const char* to_string(FlowMethod m) {
  switch (m) {
    case FlowMethod::Ricci: return "ricci";
    case FlowMethod::Calabi: return "calabi";
    case FlowMethod::Newton: return "newton";
  }
  return "?";
}

const char* to_string(FlowOutcome o) {
  switch (o) {
    case FlowOutcome::Converged: return "converged";
    case FlowOutcome::MaxSteps: return "max-steps";
    case FlowOutcome::LeftAdmissible: return "left-admissible";
  }
  return "?";
}

std::optional<FlowMethod> flow_method_from_string(std::string_view name) {
  for (FlowMethod m : {FlowMethod::Ricci, FlowMethod::Calabi, FlowMethod::Newton})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

namespace {

constexpr double kStepSlack = 1e-13;  // monotonicity allowance per accepted step

// Uniform double in [0, 1) from the raw engine stream; the standard library
// distributions are implementation-defined, this keeps seeds portable.
double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

double normal(std::mt19937_64& rng) {
  double a = u01(rng), b = u01(rng);
  while (a == 0.0) a = u01(rng);
  return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * M_PI * b);
}

bool is_reject_kind(ErrorKind k) {
  return k == ErrorKind::NotAdmissible || k == ErrorKind::DomainError ||
         k == ErrorKind::PathLeavesAdmissible;
}

struct Driver {
  const IdealTriangulation& tri;
  const Scheme& scheme;
  const std::vector<double>& kbar;
  const SolverConfig& cfg;
  FlowResult res;
  std::vector<double> u, k;
  double residual = 0.0, t = 0.0, e_acc = 0.0, c_curr = 0.0;

  Driver(const IdealTriangulation& tri_, const Scheme& scheme_, const std::vector<double>& u0,
         const std::vector<double>& kbar_, const SolverConfig& cfg_)
      : tri(tri_), scheme(scheme_), kbar(kbar_), cfg(cfg_), u(u0) {
    k = curvature_K(tri, scheme, u);
    residual = residual_of(k);
    c_curr = c_of(k);
    res.min_abs_u = num::norm_inf(u);
    note_state(u);
    push_row(0, 0.0);
  }

  double residual_of(const std::vector<double>& kv) const {
    double r = 0.0;
    for (size_t i = 0; i < kv.size(); ++i) r = std::max(r, std::abs(kv[i] - kbar[i]));
    return r;
  }

  double c_of(const std::vector<double>& kv) const {
    double c = 0.0;
    for (size_t i = 0; i < kv.size(); ++i) c += (kv[i] - kbar[i]) * (kv[i] - kbar[i]);
    return 0.5 * c;
  }

  void note_state(const std::vector<double>& uv) {
    double m = std::abs(uv[0]);
    for (double c : uv) m = std::min(m, std::abs(c));
    res.min_abs_u = std::min(res.min_abs_u, m);
    if (res.min_abs_u < 1e-8) res.near_zero_warning = true;
  }

  void push_row(long step, double dt) {
    res.trace.push_back({step, t, dt, residual, e_acc, c_curr, u});
  }

  void accept(const std::vector<double>& u_next, const std::vector<double>& k_next, double dt,
              double de, double c_next, long step) {
    u = u_next;
    k = k_next;
    t += dt;
    e_acc += de;
    c_curr = c_next;
    residual = residual_of(k);
    note_state(u);
    push_row(step, dt);
  }

  std::vector<double> vector_field(const std::vector<double>& uv) const {
    std::vector<double> kv = curvature_K(tri, scheme, uv);
    std::vector<double> r(kv.size());
    for (size_t i = 0; i < kv.size(); ++i) r[i] = kv[i] - kbar[i];
    if (cfg.method == FlowMethod::Ricci) return r;
    // Calabi: -Laplacian (K - kbar)
    std::vector<double> lr = laplacian(tri, scheme, uv).matvec(r);
    for (double& c : lr) c = -c;
    return lr;
  }

  std::vector<double> rk4_step(const std::vector<double>& from, double dt) const {
    const size_t n = from.size();
    std::vector<double> s1 = vector_field(from), stage(n);
    for (size_t i = 0; i < n; ++i) stage[i] = from[i] + 0.5 * dt * s1[i];
    std::vector<double> s2 = vector_field(stage);
    for (size_t i = 0; i < n; ++i) stage[i] = from[i] + 0.5 * dt * s2[i];
    std::vector<double> s3 = vector_field(stage);
    for (size_t i = 0; i < n; ++i) stage[i] = from[i] + dt * s3[i];
    std::vector<double> s4 = vector_field(stage);
    std::vector<double> to(n);
    for (size_t i = 0; i < n; ++i)
      to[i] = from[i] + dt / 6.0 * (s1[i] + 2.0 * s2[i] + 2.0 * s3[i] + s4[i]);
    return to;
  }

  void run_flow() {
    double dt = cfg.dt0;
    const double dt_cap = 10.0 * cfg.dt0;
    const double dt_floor = cfg.dt0 * 1e-14;
    long step = 0;
    while (true) {
      if (residual <= cfg.tol) {
        res.outcome = FlowOutcome::Converged;
        return;
      }
      if (step >= cfg.max_steps) {
        res.outcome = FlowOutcome::MaxSteps;
        return;
      }
      bool ok = false;
      std::vector<double> u_next, k_next;
      double de = 0.0, c_next = 0.0;
      try {
        // Step doubling: compare one full step against two half steps. The
        // Richardson error estimate keeps dt inside the stability region at
        // every residual scale; monotonicity alone cannot, since near the
        // solution an unstable step moves E and C by less than any fixed
        // slack. The two-half-step state is the more accurate one; keep it.
        std::vector<double> big = rk4_step(u, dt);
        std::vector<double> half = rk4_step(u, 0.5 * dt);
        u_next = rk4_step(half, 0.5 * dt);
        double err = 0.0, moved = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
          err = std::max(err, std::abs(u_next[i] - big[i]) / 15.0);
          moved = std::max(moved, std::abs(u_next[i] - u[i]));
        }
        if ((moved == 0.0 || err <= 1e-3 * moved) &&
            check_admissible(tri, scheme, u_next).admissible) {
          de = energy_segment(tri, scheme, u, u_next, kbar);
          k_next = curvature_K(tri, scheme, u_next);
          c_next = c_of(k_next);
          ok = de <= kStepSlack && c_next - c_curr <= kStepSlack;
        }
      } catch (const Error& err) {
        if (!is_reject_kind(err.kind())) throw;
        ok = false;
      }
      if (!ok) {
        dt *= cfg.shrink;
        if (dt < dt_floor) {
          res.outcome = FlowOutcome::LeftAdmissible;
          return;
        }
        continue;
      }
      ++step;
      accept(u_next, k_next, dt, de, c_next, step);
      dt = std::min(dt * cfg.grow, dt_cap);
    }
  }

  void run_newton() {
    long step = 0;
    while (true) {
      if (residual <= cfg.tol) {
        res.outcome = FlowOutcome::Converged;
        return;
      }
      if (step >= cfg.max_steps) {
        res.outcome = FlowOutcome::MaxSteps;
        return;
      }
      num::SparseSymMatrix neg = laplacian(tri, scheme, u).scaled(-1.0);
      std::vector<double> rhs(u.size());
      for (size_t i = 0; i < u.size(); ++i) rhs[i] = k[i] - kbar[i];
      std::vector<double> delta = num::cg_solve(neg, rhs, cfg.cg_tol);

      double lambda = 1.0;
      bool ok = false;
      std::vector<double> u_next, k_next;
      double de = 0.0, c_next = 0.0;
      while (lambda >= 1e-12) {
        u_next.resize(u.size());
        for (size_t i = 0; i < u.size(); ++i) u_next[i] = u[i] + lambda * delta[i];
        try {
          if (check_admissible(tri, scheme, u_next).admissible) {
            de = energy_segment(tri, scheme, u, u_next, kbar);
            if (de <= kStepSlack) {
              k_next = curvature_K(tri, scheme, u_next);
              c_next = c_of(k_next);
              ok = true;
              break;
            }
          }
        } catch (const Error& err) {
          if (!is_reject_kind(err.kind())) throw;
        }
        lambda *= cfg.shrink;
      }
      if (!ok) {
        res.outcome = FlowOutcome::MaxSteps;  // line search stalled; no progress possible
        return;
      }
      ++step;
      accept(u_next, k_next, lambda, de, c_next, step);
    }
  }
};

}  // namespace

FlowResult run_solver(const IdealTriangulation& tri, const Scheme& scheme,
                      const std::vector<double>& u0, const std::vector<double>& kbar,
                      const SolverConfig& cfg) {
  if (static_cast<int>(u0.size()) != tri.n_boundaries ||
      static_cast<int>(kbar.size()) != tri.n_boundaries)
    throw Error(ErrorKind::BadInput, "factor or target vector length mismatch");
  for (size_t i = 0; i < kbar.size(); ++i)
    if (!(kbar[i] > 0.0))
      throw Error(ErrorKind::BadInput, "target curvature component " + std::to_string(i) +
                                           " is not strictly positive");
  if (!(cfg.tol > 0.0) || !(cfg.dt0 > 0.0) || !(cfg.shrink > 0.0) || !(cfg.shrink < 1.0) ||
      !(cfg.grow > 1.0) || cfg.max_steps < 0)
    throw Error(ErrorKind::BadInput, "solver configuration out of range");
  std::string why;
  if (!scheme.solver_supported(&why)) throw Error(ErrorKind::Unsupported, why);
  AdmissibilityReport rep = check_admissible(tri, scheme, u0);
  if (!rep.admissible)
    throw Error(ErrorKind::NotAdmissible, "start is not admissible: " + rep.violations.front());

  auto t0 = std::chrono::steady_clock::now();
  Driver drv(tri, scheme, u0, kbar, cfg);
  if (cfg.method == FlowMethod::Newton)
    drv.run_newton();
  else
    drv.run_flow();

  FlowResult out = std::move(drv.res);
  out.u_final = drv.u;
  out.k_final = drv.k;
  out.residual = drv.residual;
  out.steps = out.trace.back().step;
  out.min_edge_length = evaluate_surface(tri, scheme, drv.u, false).min_edge_length;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<double> random_admissible_start(const IdealTriangulation& tri, const Scheme& scheme,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = tri.n_boundaries;
  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Interval dom = scheme.domain_of_u(i);
    if (std::isinf(dom.lo) && std::isinf(dom.hi)) {
      lo[i] = -3.0;
      hi[i] = 3.0;
    } else if (std::isinf(dom.lo)) {
      hi[i] = dom.hi - 1e-3;
      lo[i] = dom.hi - 3.0;
    } else if (std::isinf(dom.hi)) {
      lo[i] = dom.lo + 1e-3;
      hi[i] = dom.lo + 3.0;
    } else {
      double w = dom.hi - dom.lo;
      lo[i] = dom.lo + 0.02 * w;
      hi[i] = dom.hi - 0.02 * w;
    }
  }
  std::vector<double> u(n);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int i = 0; i < n; ++i) u[i] = lo[i] + (hi[i] - lo[i]) * u01(rng);
    if (check_admissible(tri, scheme, u).admissible) return u;
  }
  throw Error(ErrorKind::NoConvergence, "no admissible start found in 100000 draws");
}

bool local_basin_check(const IdealTriangulation& tri, const Scheme& scheme,
                       const std::vector<double>& u_star, double perturbation_size,
                       FlowMethod method, std::uint64_t seed, const SolverConfig& base) {
  std::vector<double> kbar = curvature_K(tri, scheme, u_star);
  SolverConfig cfg = base;
  cfg.method = method;

  std::vector<double> u0 = u_star;
  if (perturbation_size > 0.0) {
    std::mt19937_64 rng(seed);
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      std::vector<double> dir(u_star.size());
      for (double& c : dir) c = normal(rng);
      double nn = num::norm_2(dir);
      if (nn == 0.0) continue;
      for (size_t i = 0; i < dir.size(); ++i)
        u0[i] = u_star[i] + perturbation_size * dir[i] / nn;
      found = check_admissible(tri, scheme, u0).admissible;
    }
    if (!found)
      throw Error(ErrorKind::NoConvergence, "no admissible perturbation found in 100 draws");
  }

  FlowResult res = run_solver(tri, scheme, u0, kbar, cfg);
  if (res.outcome != FlowOutcome::Converged) return false;
  double dist = 0.0;
  for (size_t i = 0; i < u_star.size(); ++i)
    dist = std::max(dist, std::abs(res.u_final[i] - u_star[i]));
  return dist <= 1e-8;
}

}  // namespace hexflow
