#include "nceh/dirac.hpp"
#include "nceh/frames.hpp"
#include "nceh/geometry.hpp"
#include "nceh/spinbundle.hpp"

#include <doctest.h>

#include <random>

using namespace nceh;

namespace {

std::vector<Point> sample(const ManifoldParams& p, std::uint64_t seed, int n, Chart c = Chart::N) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) out.push_back(random_interior_point(p, rng, {}, c));
  return out;
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("coframe reproduces the metric in both charts") {
    const ManifoldParams p{1.3};
    for (const Chart c : {Chart::N, Chart::S})
      for (const auto& x : sample(p, 11, 25, c)) {
        const auto h = coframe(p, x);
        CHECK(max_abs(h.H.transpose() * h.H - metric(p, x).g) < 1e-12);
        CHECK(max_abs(h.H * h.Hinv - RMat4::Identity()) < 1e-12);
      }
  }

  TEST_CASE("closed-form inverse coframe") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 12, 25)) CHECK(max_abs(coframe_inverse_closed(p, x) - coframe(p, x).Hinv) < 1e-12);
  }

  TEST_CASE("chart transition is a rotation and matches the coframes") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 13, 25)) {
      const auto t = cotangent_transition(x);
      CHECK(max_abs(t.F_SN.transpose() * t.F_SN - RMat4::Identity()) < 1e-14);
      CHECK(t.F_SN.determinant() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(max_abs(t.F_SN * t.F_NS - RMat4::Identity()) < 1e-14);
      CHECK(max_abs(transition_from_coframes(p, x) - t.F_SN) < 1e-12);
    }
  }

  TEST_CASE("coframe derivatives agree with central differences") {
    const ManifoldParams p{1.0};
    const Point x(Chart::N, 1.7, 1.1, 0.6, 2.0);
    const auto d = coframe_derivatives(p, x);
    const double h = 1e-5;
    for (int i = 0; i < 4; ++i) {
      auto sh = [&](double s) {
        auto c = x.coords();
        c[i] += s;
        return coframe(p, Point(Chart::N, c[0], c[1], c[2], c[3])).H;
      };
      CHECK(max_abs((sh(h) - sh(-h)) / (2 * h) - d[i]) < 1e-8);
    }
  }
}

TEST_SUITE("spinbundle") {
  TEST_CASE("Clifford relations and chirality") {
    const auto& G = gamma_set();
    for (int a = 0; a < 4; ++a) {
      CHECK(max_abs(G.g[a].adjoint() + G.g[a]) < 1e-15);
      for (int b = 0; b < 4; ++b)
        CHECK(max_abs(G.g[a] * G.g[b] + G.g[b] * G.g[a] + 2.0 * (a == b ? 1.0 : 0.0) * Mat4::Identity()) < 1e-15);
      CHECK(max_abs(G.chi * G.g[a] + G.g[a] * G.chi) < 1e-15);
    }
    CHECK(max_abs(G.chi * G.chi - Mat4::Identity()) < 1e-15);
  }

  TEST_CASE("spin transition is unitary with the stated inverse") {
    for (const double phi : {0.0, 0.3, 2.0, 5.5}) {
      const auto t = spin_transition_phi(phi);
      CHECK(max_abs(t.P * t.Q - Mat4::Identity()) < 1e-15);
      CHECK(max_abs(t.P.adjoint() * t.P - Mat4::Identity()) < 1e-15);
      const cplx e = std::exp(I * phi);
      Mat4 want = Mat4::Zero();
      want.diagonal() << -I * e, I / e, I / e, -I * e;
      CHECK(max_abs(t.P - want) < 1e-15);
    }
  }

  TEST_CASE("real structures are antiunitary involutions up to sign") {
    const Mat4 C = charge_conjugation_matrix();
    const Mat4 Jp = real_structure_matrix();
    CHECK(max_abs(C * C.conjugate() + Mat4::Identity()) < 1e-15);
    CHECK(max_abs(Jp * Jp.conjugate() + Mat4::Identity()) < 1e-15);
    const Vec4 s(cplx(1, 2), cplx(-0.5, 0.1), cplx(0.3, -1), cplx(2, 0));
    CHECK(max_abs(charge_conjugation(s) - C * s.conjugate()) < 1e-15);
    CHECK(max_abs(real_structure(s) - Jp * s.conjugate()) < 1e-15);
  }

  TEST_CASE("frame-derived spin connection is antisymmetric") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 21, 25)) CHECK(spin_connection_antisymmetry(spin_connection_from_frame(p, x)) < 1e-10);
  }

  TEST_CASE("closed spin connection table differs from the frame only by the sign of the pair Gt^3_22, Gt^2_23") {
    const ManifoldParams p{1.0};
    for (const auto& x : sample(p, 22, 10)) {
      const Table3 c = spin_connection_closed(p, x), f = spin_connection_from_frame(p, x);
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 4; ++i)
          for (int a = 0; a < 4; ++a) {
            if (i == 1 && ((b == 2 && a == 1) || (b == 1 && a == 2))) continue;
            CHECK(std::abs(c[b][i][a] - f[b][i][a]) < 1e-10);
          }
      const double sd = std::sqrt(1.0 - 1.0 / std::pow(x.r, 4));
      CHECK(c[2][1][1] == doctest::Approx(0.5 * sd * std::cos(x.phi)).epsilon(1e-12));
      CHECK(f[2][1][1] == doctest::Approx(-c[2][1][1]).epsilon(1e-10));
      CHECK(f[1][1][2] == doctest::Approx(-c[1][1][2]).epsilon(1e-10));
      CHECK(c[1][1][2] == -c[2][1][1]);
    }
  }

  TEST_CASE("coordinate gammas square to minus the inverse metric") {
    const ManifoldParams p{0.8};
    for (const auto& x : sample(p, 23, 10)) {
      const auto gm = coordinate_gammas(p, x);
      const RMat4 gi = inverse_metric(p, x);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          CHECK(max_abs(gm[i] * gm[j] + gm[j] * gm[i] + 2.0 * gi(i, j) * Mat4::Identity()) < 1e-13 * (1.0 + max_abs(gi)));
    }
  }
}

TEST_SUITE("dirac") {
  TEST_CASE("principal symbol squares to minus the cometric") {
    const ManifoldParams p{1.0};
    const Point x(Chart::N, 2.2, 0.9, 1.0, 0.5);
    const std::array<double, 4> xi = {0.3, -1.2, 0.7, 2.0};
    const RMat4 gi = inverse_metric(p, x);
    double q = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) q += gi(i, j) * xi[i] * xi[j];
    CHECK(max_abs(symbol_d_squared(p, x, xi) + q * Mat4::Identity()) < 1e-12);
  }

  TEST_CASE("chirality anticommutes with D and J' commutes with it") {
    const ManifoldParams p{1.0};
    const auto corpus = spinor_corpus(p.a, 5, 4);
    for (const auto& f : corpus)
      for (const auto& x : sample(p, 31, 3)) {
        CHECK(dirac_chi_anticommutator(p, f, x) < 1e-8);
        CHECK(dirac_j_commutator(p, f, x, real_structure_matrix()) < 1e-7);
      }
  }

  TEST_CASE("negative control: the block-swapping charge conjugation does not commute with D") {
    const ManifoldParams p{1.0};
    const auto corpus = spinor_corpus(p.a, 5, 4);
    double worst = 0.0;
    for (const auto& f : corpus)
      for (const auto& x : sample(p, 32, 3)) worst = std::max(worst, dirac_j_commutator(p, f, x));
    CHECK(worst > 1e-2);
  }

  TEST_CASE("commutator with a multiplier is Clifford multiplication by its differential") {
    const ManifoldParams p{1.0};
    const ModeFunction f = ModeFunction::exp_mode(1, -1) * ModeFunction::atom(Atom::bump(2.5, 1.0)) +
                           ModeFunction::atom(Atom::of(AtomKind::CosT), 2);
    const auto corpus = spinor_corpus(p.a, 6, 3);
    for (const auto& psi : corpus)
      for (const auto& x : sample(p, 33, 4)) {
        const Vec4 lhs = multiplier_commutator(p, f, psi, x);
        const Vec4 rhs = -I * (clifford_differential(p, f, x) * psi->value(x));
        CHECK(max_abs(lhs - rhs) < 1e-8);
      }
  }
}
