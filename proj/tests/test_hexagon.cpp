#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hexflow/hexagon.hpp"
#include "hexflow/numerics.hpp"

using namespace hexflow;

namespace {

double u01_of(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Closed forms for the entries of the corner Jacobian of the two families
// that admit them, written independently of the library's chain of factors.
// C is the per-corner chart factor: sqrt(1 + alpha e^{2f}) or e^f.
Mat3 closed_form_jacobian(const std::array<double, 3>& c, const std::array<double, 3>& ch,
                          const std::array<double, 3>& sh, double a) {
  Mat3 j{};
  for (int i = 0; i < 3; ++i) {
    int p = (i + 1) % 3, q = (i + 2) % 3;
    j[i][i] = -(1.0 / a) *
              ((1.0 / (sh[p] * sh[p])) * (c[q] + c[i] * ch[p]) * (ch[q] + ch[i] * ch[p]) +
               (1.0 / (sh[q] * sh[q])) * (c[p] + c[i] * ch[q]) * (ch[p] + ch[i] * ch[q]));
    j[i][p] = -(1.0 / a) * (1.0 / (sh[q] * sh[q])) *
              (-c[q] * sh[q] * sh[q] + c[p] * (ch[i] + ch[p] * ch[q]) +
               c[i] * (ch[p] + ch[i] * ch[q]));
    j[i][q] = -(1.0 / a) * (1.0 / (sh[p] * sh[p])) *
              (-c[p] * sh[p] * sh[p] + c[q] * (ch[i] + ch[p] * ch[q]) +
               c[i] * (ch[q] + ch[i] * ch[p]));
  }
  return j;
}

}  // namespace

TEST_CASE("self-dual hexagon: cosh l = 2 gives theta = l") {
  double l = fx::kAcosh2;
  std::array<double, 3> theta = angles_from_lengths(l, l, l);
  for (double t : theta) CHECK(std::abs(t - l) < 1e-12);
}

TEST_CASE("a-quantity at the equilateral point and its identities") {
  double l = fx::kAcosh2;
  CHECK(std::abs(a_quantity(l, l, l) - std::sqrt(27.0)) < 1e-12);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    double li = 0.1 + 4.9 * u01_of(rng);
    double lj = 0.1 + 4.9 * u01_of(rng);
    double lk = 0.1 + 4.9 * u01_of(rng);
    double a = a_quantity(li, lj, lk);
    CHECK(a > 2.0);
    double scale = std::max(1.0, a);
    CHECK(std::abs(a_quantity(lj, lk, li) - a) < 1e-12 * scale);
    CHECK(std::abs(a_quantity(lk, li, lj) - a) < 1e-12 * scale);
    CHECK(std::abs(a_quantity(lj, li, lk) - a) < 1e-12 * scale);

    // A = sinh l_j sinh l_k sinh theta_i for every corner
    std::array<double, 3> theta = angles_from_lengths(li, lj, lk);
    CHECK(std::abs(std::sinh(lj) * std::sinh(lk) * std::sinh(theta[0]) - a) < 1e-10 * scale);
    CHECK(std::abs(std::sinh(lk) * std::sinh(li) * std::sinh(theta[1]) - a) < 1e-10 * scale);
    CHECK(std::abs(std::sinh(li) * std::sinh(lj) * std::sinh(theta[2]) - a) < 1e-10 * scale);
  }
}

TEST_CASE("nonpositive side lengths are a domain error") {
  CHECK_THROWS_AS((void)angles_from_lengths(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS((void)a_quantity(1.0, -1.0, 1.0), Error);
}

TEST_CASE("equilateral corner jacobian has the pinned entries") {
  IdealTriangulation tri = fx::tetra();
  Scheme scheme = fx::tetra_scheme(SchemeKind::Exponential, 3.0);
  Mat3 j = corner_jacobian(tri, scheme, 0, {0.0, 0.0, 0.0});
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double want = r == c ? fx::kTetraExpJDiag : fx::kTetraExpJOff;
      CHECK(std::abs(j[r][c] - want) < 1e-12);
    }
}

TEST_CASE("jacobian chain matches the closed-form entries") {
  IdealTriangulation tri = fx::tetra();
  std::mt19937_64 rng(17);

  SUBCASE("hyperbolic family, alpha mixed over {0,1}") {
    Scheme scheme = [&] {
      SchemeConfig c = fx::uniform_config(SchemeKind::Hyperbolic, 4, 6, 3.0);
      c.alpha = {1, 0, 1, 0};
      return Scheme::build(tri, c);
    }();
    int used = 0;
    while (used < 100) {
      std::array<double, 3> f;
      for (double& v : f) v = -1.5 + 3.0 * u01_of(rng);
      FaceEval fe;
      try {
        fe = evaluate_face(tri, scheme, 0, f, true);
      } catch (const Error&) {
        continue;
      }
      ++used;
      std::array<double, 3> c;
      for (int s = 0; s < 3; ++s) {
        int boundary = tri.faces[0].corners[s];
        int a = scheme.alpha(boundary);
        c[s] = a == 0 ? 1.0 : std::sqrt(1.0 + std::exp(2.0 * f[s]));
      }
      Mat3 want = closed_form_jacobian(c, fe.cosh_l, fe.sinh_l, fe.a);
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
          CHECK(std::abs(fe.jacobian[r][s] - want[r][s]) <
                1e-10 * std::max(1.0, std::abs(want[r][s])));
    }
  }

  SUBCASE("exponential family: same forms with C = e^f") {
    Scheme scheme = fx::tetra_scheme(SchemeKind::Exponential, 3.0);
    int used = 0;
    while (used < 100) {
      std::array<double, 3> f;
      for (double& v : f) v = -1.0 + 2.5 * u01_of(rng);
      FaceEval fe;
      try {
        fe = evaluate_face(tri, scheme, 0, f, true);
      } catch (const Error&) {
        continue;
      }
      ++used;
      std::array<double, 3> c = {std::exp(f[0]), std::exp(f[1]), std::exp(f[2])};
      Mat3 want = closed_form_jacobian(c, fe.cosh_l, fe.sinh_l, fe.a);
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
          CHECK(std::abs(fe.jacobian[r][s] - want[r][s]) <
                1e-10 * std::max(1.0, std::abs(want[r][s])));
    }
  }
}

TEST_CASE("analytic jacobian matches finite differences for every kind") {
  IdealTriangulation tri = fx::tetra();
  struct Case {
    Scheme scheme;
    std::array<double, 3> f;
  };
  std::vector<Case> cases;
  cases.push_back({fx::tetra_scheme(SchemeKind::Exponential, 3.0), {0.2, -0.3, 0.1}});
  cases.push_back({fx::tetra_scheme(SchemeKind::Hyperbolic, 2.0), {0.4, -0.2, 0.3}});
  cases.push_back({fx::tetra_scheme(SchemeKind::Hyperbolic, 2.0, 1), {1.0, 0.8, 1.2}});
  cases.push_back({fx::tetra_scheme(SchemeKind::Circular, -0.5), {1.0, 1.2, 0.9}});
  cases.push_back({fx::tetra_scheme(SchemeKind::HyperbolicMixed, 2.0, 0, true), {0.3, 0.3, 0.3}});
  cases.push_back(
      {fx::tetra_scheme(SchemeKind::CircularMixed, 1.5, 0, true), {0.1, 2.2, 2.2}});
  cases.push_back({fx::tetra_scheme(SchemeKind::ExponentialMixed, 2.0, 0, true),
                   {fx::kMixedExpF0, fx::kMixedExpF1, fx::kMixedExpF1}});

  const double h = 1e-5;
  for (const Case& cs : cases) {
    FaceEval fe = evaluate_face(tri, cs.scheme, 0, cs.f, true);
    double scale = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) scale = std::max(scale, std::abs(fe.jacobian[r][c]));
    for (int c = 0; c < 3; ++c) {
      int boundary = tri.faces[0].corners[c];
      double u = cs.scheme.u_from_f(boundary, cs.f[c]);
      auto theta_at = [&](double uu) {
        std::array<double, 3> f = cs.f;
        f[c] = cs.scheme.f_from_u(boundary, uu);
        return evaluate_face(tri, cs.scheme, 0, f, false).theta;
      };
      std::array<double, 3> tp = theta_at(u + h), tm = theta_at(u - h);
      for (int r = 0; r < 3; ++r) {
        double fd = (tp[r] - tm[r]) / (2.0 * h);
        CHECK(std::abs(fe.jacobian[r][c] - fd) < 1e-6 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("corner jacobian is symmetric at generic admissible points") {
  IdealTriangulation tri = fx::tetra();
  std::mt19937_64 rng(23);
  std::vector<Scheme> schemes;
  schemes.push_back(fx::tetra_scheme(SchemeKind::Exponential, 3.0));
  schemes.push_back(fx::tetra_scheme(SchemeKind::Hyperbolic, 2.0, 1));
  schemes.push_back(fx::tetra_scheme(SchemeKind::Circular, -0.5));
  schemes.push_back(fx::tetra_scheme(SchemeKind::ExponentialMixed, 2.0, 0, true));
  schemes.push_back(fx::tetra_scheme(SchemeKind::HyperbolicMixed, 2.0, 0, true));
  schemes.push_back(fx::tetra_scheme(SchemeKind::CircularMixed, 1.5, 0, true));
  for (const Scheme& scheme : schemes) {
    bool circular_family = scheme.kind() == SchemeKind::Circular ||
                           scheme.kind() == SchemeKind::CircularMixed;
    double lo = circular_family ? 0.1 : -1.5;
    int used = 0;
    while (used < 200) {
      std::array<double, 3> f;
      for (double& v : f) v = lo + 3.0 * u01_of(rng);
      FaceEval fe;
      try {
        fe = evaluate_face(tri, scheme, 0, f, true);
      } catch (const Error&) {
        continue;
      }
      if (fe.cosh_l[0] < 1.0 + 1e-4 || fe.cosh_l[1] < 1.0 + 1e-4 || fe.cosh_l[2] < 1.0 + 1e-4)
        continue;
      ++used;
      const Mat3& j = fe.jacobian;
      double scale = 1.0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) scale = std::max(scale, std::abs(j[r][c]));
      for (int r = 0; r < 3; ++r)
        for (int c = r + 1; c < 3; ++c) CHECK(std::abs(j[r][c] - j[c][r]) < 1e-9 * scale);
    }
  }
}

TEST_CASE("arcs vanish as the corner factor grows") {
  IdealTriangulation tri = fx::tetra();
  Scheme scheme = fx::tetra_scheme(SchemeKind::Exponential, 3.0);
  FaceEval fe = evaluate_face(tri, scheme, 0, {20.0, 0.0, 0.0}, false);
  CHECK(fe.theta[0] < 1e-3);
  // and the remaining arcs stay bounded away from zero
  CHECK(fe.theta[1] > 0.1);
  CHECK(fe.theta[2] > 0.1);

  // the vanishing-arc corner decouples: its row is dominated by the diagonal
  Mat3 j = corner_jacobian(tri, scheme, 0, {25.0, 0.0, 0.0});
  CHECK(std::abs(j[0][0]) > 1000.0 * std::abs(j[0][1]));
  CHECK(std::abs(j[0][0]) > 1000.0 * std::abs(j[0][2]));
}

TEST_CASE("degenerate face input names the edge") {
  IdealTriangulation tri = fx::tetra();
  Scheme scheme = fx::tetra_scheme(SchemeKind::Exponential, 3.0);
  try {
    evaluate_face(tri, scheme, 0, {-0.25, -0.25, 2.0}, false);
    FAIL("expected NotAdmissible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAdmissible);
    CHECK(std::string(e.what()).find("face 0") != std::string::npos);
  }
}
