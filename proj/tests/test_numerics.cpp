#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "hexflow/numerics.hpp"

using namespace hexflow;
using namespace hexflow::num;

TEST_CASE("sparse symmetric storage mirrors entries") {
  SparseSymMatrix a(3);
  a.set(0, 1, 2.0);
  a.add(1, 0, 0.5);
  a.set(2, 2, -1.0);
  CHECK(a.get(0, 1) == 2.5);
  CHECK(a.get(1, 0) == 2.5);
  CHECK(a.get(2, 2) == -1.0);
  CHECK(a.get(0, 2) == 0.0);
  std::vector<double> y = a.matvec({1.0, 1.0, 1.0});
  CHECK(y[0] == 2.5);
  CHECK(y[1] == 2.5);
  CHECK(y[2] == -1.0);
}

TEST_CASE("cg solves identity and a pinned SPD system") {
  SparseSymMatrix eye(3);
  for (int i = 0; i < 3; ++i) eye.set(i, i, 1.0);
  std::vector<double> x = cg_solve(eye, {3.0, -1.0, 2.0}, 1e-12);
  CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-12));

  // [[4,1],[1,3]] x = [1,2] -> x = (1/11, 7/11)
  SparseSymMatrix a(2);
  a.set(0, 0, 4.0);
  a.set(0, 1, 1.0);
  a.set(1, 1, 3.0);
  x = cg_solve(a, {1.0, 2.0}, 1e-14);
  CHECK(std::abs(x[0] - 1.0 / 11.0) < 1e-12);
  CHECK(std::abs(x[1] - 7.0 / 11.0) < 1e-12);
}

TEST_CASE("cg rejects indefinite input") {
  SparseSymMatrix a(2);
  a.set(0, 0, 1.0);
  a.set(1, 1, -1.0);
  CHECK_THROWS_AS((void)cg_solve(a, {1.0, 1.0}, 1e-12), Error);
}

TEST_CASE("cg at larger size against the dense solver") {
  const int n = 40;
  std::mt19937_64 rng(11);
  auto u01 = [&] { return (rng() >> 11) * 0x1.0p-53; };
  SparseSymMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a.set(i, i, 4.0 + u01());
    if (i + 1 < n) a.set(i, i + 1, u01() - 0.5);
  }
  std::vector<double> b(n);
  for (double& v : b) v = 2.0 * u01() - 1.0;
  std::vector<double> x = cg_solve(a, b, 1e-13);
  std::vector<double> y = dense_solve(a.dense(), b);
  double diff = 0.0;
  for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(x[i] - y[i]));
  CHECK(diff < 1e-10);
}

TEST_CASE("dense eigenvalues of a pinned 2x2 and 3x3") {
  // [[2,1],[1,2]] -> 1, 3
  std::vector<double> ev = dense_sym_eigenvalues({{2.0, 1.0}, {1.0, 2.0}});
  CHECK(std::abs(ev[0] - 1.0) < 1e-13);
  CHECK(std::abs(ev[1] - 3.0) < 1e-13);
  // graph Laplacian of a path: 0, 1, 3
  ev = dense_sym_eigenvalues({{1.0, -1.0, 0.0}, {-1.0, 2.0, -1.0}, {0.0, -1.0, 1.0}});
  CHECK(std::abs(ev[0] - 0.0) < 1e-13);
  CHECK(std::abs(ev[1] - 1.0) < 1e-13);
  CHECK(std::abs(ev[2] - 3.0) < 1e-13);
}

TEST_CASE("max eigenvalue agrees across the dense and power paths") {
  // Same tridiagonal family at n = 20 (dense path) and n = 40 (power path):
  // eigenvalues of the (-1, 2, -1) matrix are 2 - 2 cos(k pi / (n + 1)).
  for (int n : {20, 40}) {
    SparseSymMatrix a(n);
    for (int i = 0; i < n; ++i) {
      a.set(i, i, 2.0);
      if (i + 1 < n) a.set(i, i + 1, -1.0);
    }
    double want = 2.0 - 2.0 * std::cos(n * M_PI / (n + 1.0));
    CHECK(std::abs(max_eigenvalue(a) - want) < 1e-6 * want);
  }
}

TEST_CASE("max eigenvalue of a negative definite matrix is negative") {
  SparseSymMatrix a(40);
  for (int i = 0; i < 40; ++i) {
    a.set(i, i, -2.0);
    if (i + 1 < 40) a.set(i, i + 1, 0.5);
  }
  double top = max_eigenvalue(a);
  CHECK(top < 0.0);
  CHECK(std::abs(top - (-2.0 + std::cos(M_PI / 41.0))) < 1e-6);
}

TEST_CASE("16-node rule integrates polynomials up to degree 31 exactly") {
  const QuadRule16& q = gauss16();
  double wsum = 0.0;
  for (double w : q.w) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-15);
  for (int d : {5, 16, 31}) {
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += q.w[i] * std::pow(q.x[i], d);
    CHECK(std::abs(s - 1.0 / (d + 1)) < 1e-14);
  }
  // degree 32 must show truncation error: the rule is not a lookup of a wider rule
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += q.w[i] * std::pow(2.0 * q.x[i] - 1.0, 32);
  CHECK(std::abs(s - 1.0 / 33.0) > 1e-12);
}

TEST_CASE("finite-difference jacobian of a known map") {
  auto fn = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] * x[0], x[0] * x[1]};
  };
  auto j = fd_jacobian(fn, {2.0, 3.0}, 1e-6);
  CHECK(std::abs(j[0][0] - 4.0) < 1e-8);
  CHECK(std::abs(j[0][1] - 0.0) < 1e-8);
  CHECK(std::abs(j[1][0] - 3.0) < 1e-8);
  CHECK(std::abs(j[1][1] - 2.0) < 1e-8);
}

TEST_CASE("arccosh is accurate near 1 and for huge arguments") {
  CHECK(arccosh(1.0) == 0.0);
  // arccosh(1 + e) ~ sqrt(2 e) for small e; compare against the stored
  // double, since 1 + 1e-12 itself rounds.
  double x = 1.0 + 1e-12;
  CHECK(std::abs(arccosh(x) - std::sqrt(2.0 * (x - 1.0))) < 1e-12);
  CHECK(std::abs(arccosh(2.0) - 1.3169578969248166) < 1e-15);
  CHECK(std::abs(arccosh(1e300) - (std::log(1e300) + M_LN2)) < 1e-12);
  CHECK(std::isinf(arccosh(std::numeric_limits<double>::infinity())));
}

TEST_CASE("norms") {
  CHECK(norm_inf({1.0, -3.0, 2.0}) == 3.0);
  CHECK(std::abs(norm_2({3.0, 4.0}) - 5.0) < 1e-15);
}
