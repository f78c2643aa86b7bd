#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hexflow/errors.hpp"

namespace hexflow::num {

// Symmetric matrix stored as its upper triangle keyed by (row, col), row <= col.
struct SparseSymMatrix {
  int n = 0;
  std::map<std::pair<int, int>, double> entries;

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(int dim) : n(dim) {}

  void add(int i, int j, double v);
  void set(int i, int j, double v);
  double get(int i, int j) const;
  std::vector<double> matvec(const std::vector<double>& x) const;
  std::vector<std::vector<double>> dense() const;
  SparseSymMatrix scaled(double factor) const;
};

// Jacobi-preconditioned conjugate gradients; A must be SPD. Residual target is
// ||Ax - b|| <= tol * max(1, ||b||), iteration cap 20 n.
std::vector<double> cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol);

// Largest eigenvalue. Dense Jacobi sweeps for n <= 32, otherwise a
// Gershgorin-shifted power iteration at relative tolerance 1e-8.
double max_eigenvalue(const SparseSymMatrix& a);

std::vector<std::vector<double>> fd_jacobian(
    const std::function<std::vector<double>(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h);

// Dense helpers used as oracles.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b);
std::vector<double> dense_sym_eigenvalues(std::vector<std::vector<double>> a);  // ascending

// 16-point Gauss-Legendre rule on [0, 1].
struct QuadRule16 {
  std::array<double, 16> x{}, w{};
};
const QuadRule16& gauss16();

double norm_inf(const std::vector<double>& v);
double norm_2(const std::vector<double>& v);

// log1p-based arccosh, stable for arguments near 1 and exact for huge ones.
double arccosh(double x);

}  // namespace hexflow::num
