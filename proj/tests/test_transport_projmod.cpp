#include "nceh/projmod.hpp"
#include "nceh/transport.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace nceh;

namespace {

std::vector<Point> sample(const ManifoldParams& p, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) out.push_back(random_interior_point(p, rng));
  return out;
}

}  // namespace

TEST_SUITE("transport") {
  TEST_CASE("propagators are unitary") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 41, 6)) {
      CHECK(unitarity_defect(transport_psi(p, x, 1.3).U) < 1e-12);
      CHECK(unitarity_defect(transport_phi(p, x, 2.1).U) < 1e-8);
    }
  }

  TEST_CASE("psi propagator solves its transport equation") {
    const ManifoldParams p{1.0};
    const Point x(Chart::N, 1.8, 1.2, 0.4, 0.0);
    const double h = 1e-5, t = 0.7;
    const Mat4 dU = (transport_psi(p, x, t + h).U - transport_psi(p, x, t - h).U) / (2 * h);
    CHECK(max_abs(dU - a_matrix(p, x, kPsi) * transport_psi(p, x, t).U) < 1e-8);
  }

  TEST_CASE("closed A_4 is omega_4 with its blocks exchanged") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 42, 6)) {
      const Mat4 w = a_matrix(p, x, kPsi), c = a_matrix_closed(p, x, kPsi);
      Mat4 swapped = Mat4::Zero();
      swapped.block<2, 2>(0, 0) = w.block<2, 2>(2, 2);
      swapped.block<2, 2>(2, 2) = w.block<2, 2>(0, 0);
      CHECK(max_abs(w.block<2, 2>(0, 2)) < 1e-14);
      CHECK(max_abs(c - swapped) < 1e-12);
      CHECK(max_abs(a_matrix_closed(p, x, kPhi) - a_matrix(p, x, kPhi)) < 1e-12);
    }
  }

  TEST_CASE("psi loop holonomy: -1 on the upper block; the diag(e^{-i pi eps}, e^{i pi eps}, -1, -1) ordering needs the closed A_4") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 43, 6)) {
      const Mat4 U = transport_psi(p, x, two_pi).U;
      CHECK(std::abs(U(0, 0) + 1.0) < 1e-10);
      CHECK(std::abs(U(1, 1) + 1.0) < 1e-10);
      CHECK(std::abs(U(2, 2) * U(3, 3) - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(U(2, 2)) - 1.0) < 1e-10);
      const Mat4 C = (two_pi * a_matrix_closed(p, x, kPsi)).exp();
      CHECK(std::abs(C(0, 0) - U(2, 2)) < 1e-10);
      CHECK(std::abs(C(2, 2) + 1.0) < 1e-10);
      CHECK(std::abs(C(3, 3) + 1.0) < 1e-10);
    }
  }

  TEST_CASE("spin lift obeys the group law and commutes with D") {
    const ManifoldParams p{1.0};
    const double th = 0.3;
    const Mode r = Mode::whole(1, 0), s = Mode::whole(-1, 2);
    for (const auto& x : sample(p, 44, 5)) {
      const VData vs = v_data(p, x, th, s, Lift::Spin);
      const VData vr = v_data(p, vs.pullback, th, r, Lift::Spin);
      const VData vrs = v_data(p, x, th, r + s, Lift::Spin);
      CHECK(max_abs(vs.U * vr.U - vrs.U) < 1e-12);
      CHECK(std::abs(wrap_angle(vr.pullback.phi - vrs.pullback.phi + 1.0) - 1.0) < 1e-12);
    }
    const auto corpus = spinor_corpus(p.a, 9, 2);
    for (const auto& f : corpus)
      for (const auto& x : sample(p, 45, 2)) CHECK(dirac_v_commutator(p, th, r, f, x, Lift::Spin) < 1e-6);
  }

  TEST_CASE("spin rotation carries the charges (1, -1, -1, 1)") {
    const Mat4 R = spin_rotation(0.8);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(R(a, a) - std::exp(0.4 * I * double(kSpinCharge[a]))) < 1e-15);
  }
}

TEST_SUITE("projmod") {
  TEST_CASE("patch functions form partitions of unity") {
    for (const double t : {0.0, 0.4, pi / 2, 2.5, pi}) {
      const auto f = patch_functions(t);
      CHECK(f.h_N + f.h_S == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(f.k_N + f.k_S == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(patch_functions(pi).k_N == 0.0);
    CHECK(patch_functions(0.0).k_S == 0.0);
  }

  TEST_CASE("projection is idempotent of rank four; the unsymmetrized one is not self-adjoint") {
    std::mt19937_64 rng(51);
    const ManifoldParams p{1.0};
    for (int k = 0; k < 20; ++k) {
      const Point x = random_interior_point(p, rng);
      const Mat8 P = projection_matrix(x), H = projection_hermitian(x);
      CHECK(max_abs(P * P - P) < 1e-14);
      CHECK(std::abs(P.trace() - 4.0) < 1e-14);
      CHECK(max_abs(H * H - H) < 1e-14);
      CHECK(max_abs(H - H.adjoint()) < 1e-15);
      CHECK(std::abs(H.trace() - 4.0) < 1e-14);
    }
    const Point eq(Chart::N, 2.0, 1.0, 0.3, 0.0);  // k_N != k_S away from the equator
    CHECK(max_abs(projection_matrix(eq) - projection_matrix(eq).adjoint()) > 0.1);
  }

  TEST_CASE("projection is regular at the poles") {
    for (const double t : {0.0, pi}) {
      const Mat8 P = projection_matrix(Point(Chart::N, 2.0, t, 0.7, 0.0));
      CHECK(max_abs(P * P - P) == 0.0);
    }
  }

  TEST_CASE("mode-function entries reproduce the matrix") {
    const auto e = projection_entries();
    const Point x(Chart::N, 2.0, 1.1, 0.9, 0.2);
    const Mat8 P = projection_matrix(x);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) CHECK(std::abs(e[8 * i + j].eval(1.0, x) - P(i, j)) < 1e-14);
  }

  TEST_CASE("deformed idempotency holds") {
    std::mt19937_64 rng(52);
    std::vector<Point> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(random_interior_point(ManifoldParams{1.0}, rng));
    for (const double th : {0.0, 0.25, 0.3}) CHECK(deformed_idempotency_residual(th, pts) < 1e-12);
  }

  TEST_CASE("module round trip and its consistency guard") {
    const Point x(Chart::N, 2.0, 1.0, 0.4, 0.0);
    const Vec4 psi(cplx(1, 0.5), cplx(-0.2, 0.3), cplx(0.7, 0), cplx(0, -1));
    const auto t = spin_transition(x);
    CHECK(module_roundtrip(psi, t.Q * psi, x).residual < 1e-14);
    CHECK_THROWS_AS(module_roundtrip(psi, psi, x), InconsistentSection);
  }
}
