#include "hexflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hexflow::num {

void SparseSymMatrix::add(int i, int j, double v) {
  if (i > j) std::swap(i, j);
  entries[{i, j}] += v;
}

void SparseSymMatrix::set(int i, int j, double v) {
  if (i > j) std::swap(i, j);
  entries[{i, j}] = v;
}

double SparseSymMatrix::get(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = entries.find({i, j});
  return it == entries.end() ? 0.0 : it->second;
}

std::vector<double> SparseSymMatrix::matvec(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n)
    throw Error(ErrorKind::BadInput, "matvec dimension mismatch");
  std::vector<double> y(n, 0.0);
  for (const auto& [key, v] : entries) {
    auto [i, j] = key;
    y[i] += v * x[j];
    if (i != j) y[j] += v * x[i];
  }
  return y;
}

std::vector<std::vector<double>> SparseSymMatrix::dense() const {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (const auto& [key, v] : entries) {
    auto [i, j] = key;
    d[i][j] = v;
    if (i != j) d[j][i] = v;
  }
  return d;
}

SparseSymMatrix SparseSymMatrix::scaled(double factor) const {
  SparseSymMatrix r(n);
  for (const auto& [key, v] : entries) r.entries[key] = factor * v;
  return r;
}

std::vector<double> cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol) {
  const int n = a.n;
  if (static_cast<int>(b.size()) != n)
    throw Error(ErrorKind::BadInput, "cg_solve dimension mismatch");

  std::vector<double> inv_diag(n);
  for (int i = 0; i < n; ++i) {
    double d = a.get(i, i);
    if (d <= 0.0)
      throw Error(ErrorKind::LinearSolveFailure,
                  "diagonal entry " + std::to_string(i) + " is not positive; matrix is not SPD");
    inv_diag[i] = 1.0 / d;
  }

  const double target = tol * std::max(1.0, norm_2(b));
  std::vector<double> x(n, 0.0), r = b, z(n), p(n);
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  const int max_iter = 20 * n;
  for (int iter = 0; iter < max_iter && norm_2(r) > target; ++iter) {
    std::vector<double> ap = a.matvec(p);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (pap <= 0.0)
      throw Error(ErrorKind::LinearSolveFailure, "non-positive curvature direction; matrix is not SPD");
    double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    double rz_next = 0.0;
    for (int i = 0; i < n; ++i) rz_next += r[i] * z[i];
    double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  // Recompute the residual explicitly; the recurrence can drift.
  std::vector<double> ax = a.matvec(x);
  double res = 0.0;
  for (int i = 0; i < n; ++i) res += (ax[i] - b[i]) * (ax[i] - b[i]);
  if (std::sqrt(res) > target)
    throw Error(ErrorKind::LinearSolveFailure, "CG stagnated above the residual target");
  return x;
}

static void jacobi_rotate(std::vector<std::vector<double>>& m, int p, int q) {
  double app = m[p][p], aqq = m[q][q], apq = m[p][q];
  double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
  double c = std::cos(phi), s = std::sin(phi);
  const int n = static_cast<int>(m.size());
  for (int k = 0; k < n; ++k) {
    double mkp = m[k][p], mkq = m[k][q];
    m[k][p] = c * mkp - s * mkq;
    m[k][q] = s * mkp + c * mkq;
  }
  for (int k = 0; k < n; ++k) {
    double mpk = m[p][k], mqk = m[q][k];
    m[p][k] = c * mpk - s * mqk;
    m[q][k] = s * mpk + c * mqk;
  }
}

std::vector<double> dense_sym_eigenvalues(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale += a[i][j] * a[i][j];
  scale = std::sqrt(scale);
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (std::sqrt(off) <= 1e-14 * scale) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a[p][q]) > 1e-300) jacobi_rotate(a, p, q);
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

double max_eigenvalue(const SparseSymMatrix& a) {
  if (a.n == 0) throw Error(ErrorKind::BadInput, "max_eigenvalue of an empty matrix");
  if (a.n <= 32) {
    auto ev = dense_sym_eigenvalues(a.dense());
    return ev.back();
  }

  // Gershgorin shift makes the matrix PSD so the power iteration's dominant
  // eigenvalue is the largest one, not the largest in magnitude.
  std::vector<double> radius(a.n, 0.0), diag(a.n, 0.0);
  for (const auto& [key, v] : a.entries) {
    auto [i, j] = key;
    if (i == j) {
      diag[i] = v;
    } else {
      radius[i] += std::abs(v);
      radius[j] += std::abs(v);
    }
  }
  double lo = diag[0] - radius[0];
  for (int i = 1; i < a.n; ++i) lo = std::min(lo, diag[i] - radius[i]);

  std::vector<double> v(a.n);
  for (int i = 0; i < a.n; ++i) v[i] = 1.0 + 1.0 / (i + 2.0);  // deterministic, no zero pattern
  double nv = norm_2(v);
  for (auto& c : v) c /= nv;

  for (int iter = 0; iter < 200000; ++iter) {
    std::vector<double> w = a.matvec(v);
    for (int i = 0; i < a.n; ++i) w[i] -= lo * v[i];
    double nw = norm_2(w);
    if (nw == 0.0) return lo;  // v is an exact null vector of the shifted matrix
    double mu = 0.0;
    for (int i = 0; i < a.n; ++i) mu += v[i] * w[i];
    // For symmetric matrices the eigenvalue error is bounded by the residual
    // norm ||Bv - mu v||, so this stop is a guarantee, not a heuristic.
    double rr = 0.0;
    for (int i = 0; i < a.n; ++i) {
      double r = w[i] - mu * v[i];
      rr += r * r;
    }
    for (int i = 0; i < a.n; ++i) v[i] = w[i] / nw;
    if (std::sqrt(rr) <= 1e-8 * std::max(1.0, std::abs(mu + lo))) return mu + lo;
  }
  throw Error(ErrorKind::NoConvergence, "power iteration exhausted its budget");
}

std::vector<std::vector<double>> fd_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> cols(n);
  int m = -1;
  for (int j = 0; j < n; ++j) {
    std::vector<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    std::vector<double> fp = fn(xp), fm = fn(xm);
    if (fp.size() != fm.size())
      throw Error(ErrorKind::BadInput, "fd_jacobian: inconsistent output dimension");
    if (m < 0) m = static_cast<int>(fp.size());
    cols[j].resize(m);
    for (int r = 0; r < m; ++r) cols[j][r] = (fp[r] - fm[r]) / (2.0 * h);
  }
  std::vector<std::vector<double>> jac(m, std::vector<double>(n));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < n; ++j) jac[r][j] = cols[j][r];
  return jac;
}

std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0)
      throw Error(ErrorKind::LinearSolveFailure, "singular matrix in dense_solve");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

const QuadRule16& gauss16() {
  // Nodes are the roots of the degree-16 Legendre polynomial, found by Newton
  // iteration from the Chebyshev estimates; beats transcribing 17-digit tables.
  static const QuadRule16 rule = [] {
    QuadRule16 r;
    const int n = 16;
    for (int k = 0; k < n; ++k) {
      double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.x[k] = 0.5 * (x + 1.0);
      r.w[k] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

double norm_2(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double arccosh(double x) {
  if (x < 1.0) throw Error(ErrorKind::DomainError, "arccosh argument below 1");
  if (std::isinf(x)) return x;
  if (x >= 1e8) return std::log(x) + 0.6931471805599453;  // dropped term < 1/(4x^2)
  double y = x - 1.0;
  return std::log1p(y + std::sqrt(y * (y + 2.0)));
}

}  // namespace hexflow::num
