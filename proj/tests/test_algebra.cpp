#include "nceh/modealg.hpp"
#include "nceh/opalg.hpp"

#include <doctest.h>

#include <random>

using namespace nceh;

namespace {

ModeFunction random_mode_function(std::mt19937_64& rng, int n_terms, int max_mode) {
  std::uniform_int_distribution<int> um(-max_mode, max_mode);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  const Profile profiles[] = {Profile::one(), Profile::atom(Atom::of(AtomKind::CosT)),
                              Profile::atom(Atom::bump(2.5, 1.0)), Profile::atom(Atom::of(AtomKind::R), 2)};
  ModeFunctionBuilder b;
  for (int k = 0; k < n_terms; ++k)
    b.add(cplx(uc(rng), uc(rng)), Mode::whole(um(rng), um(rng)), profiles[k % 4]);
  return b.build();
}

double diff(const ModeFunction& f, const ModeFunction& g) { return (f - g).max_coeff(); }

cplx e(double x) { return std::exp(two_pi * I * x); }

}  // namespace

TEST_SUITE("modealg") {
  TEST_CASE("sigma follows the lattice formula") {
    const Mode u3 = Mode::whole(1, 0), u4 = Mode::whole(0, 1);
    CHECK(sigma_quarter_units(u3, u4) == -4);
    CHECK(sigma_quarter_units(u4, u3) == 4);
    CHECK(sigma_quarter_units(Mode{1, 0}, Mode{0, 1}) == -1);  // half modes
    for (const double th : {0.0, 0.25, 0.3, 1.0 / std::sqrt(2.0)}) {
      CHECK(std::abs(sigma(u3, u4, th) - e(-th)) < 1e-15);
      CHECK(std::abs(sigma(Mode::whole(2, -1), Mode::whole(3, 5), th) - e(th * (-1 * 3 - 2 * 5))) < 1e-13);
    }
  }

  TEST_CASE("sigma is a 2-cocycle") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> u(-6, 6);
    for (int k = 0; k < 200; ++k) {
      const Mode r{u(rng), u(rng)}, s{u(rng), u(rng)}, t{u(rng), u(rng)};
      CHECK(sigma_quarter_units(r, s) + sigma_quarter_units(r + s, t) ==
            sigma_quarter_units(r, s + t) + sigma_quarter_units(s, t));
    }
  }

  TEST_CASE("generators satisfy the torus commutation relation") {
    const double th = 0.3;
    const auto u3 = ModeFunction::exp_mode(1, 0), u4 = ModeFunction::exp_mode(0, 1);
    CHECK(diff(star_product(u3, u4, th), e(-2.0 * th) * star_product(u4, u3, th)) < 1e-14);
    CHECK(diff(star_product(u3, u4, 0.0), u3 * u4) == 0.0);
  }

  TEST_CASE("star product is associative and the involution reverses it") {
    std::mt19937_64 rng(4);
    for (const double th : {0.25, 0.3, 1.0 / std::sqrt(2.0)})
      for (int k = 0; k < 10; ++k) {
        const auto f = random_mode_function(rng, 5, 3), g = random_mode_function(rng, 5, 3),
                   h = random_mode_function(rng, 5, 3);
        CHECK(diff(star_product(star_product(f, g, th), h, th), star_product(f, star_product(g, h, th), th)) < 1e-12);
        CHECK(diff(involution(star_product(f, g, th)), star_product(involution(g), involution(f), th)) < 1e-12);
        CHECK(diff(involution(involution(f)), f) == 0.0);
      }
  }

  TEST_CASE("zero deformation gives the pointwise product") {
    std::mt19937_64 rng(5);
    const auto f = random_mode_function(rng, 6, 3), g = random_mode_function(rng, 6, 3);
    CHECK(diff(star_product(f, g, 0.0), f * g) < 1e-14);
    const Point x(Chart::N, 2.5, 1.0, 0.4, 2.2);
    CHECK(std::abs(star_product(f, g, 0.0).eval(1.0, x) - f.eval(1.0, x) * g.eval(1.0, x)) < 1e-12);
  }

  TEST_CASE("damped oscillatory integral converges to sigma for low modes") {
    const double th = 0.25;
    const Mode r = Mode::whole(1, 0), s = Mode::whole(0, 1);
    CHECK(std::abs(oscillatory_phase(r, s, th) - sigma(r, s, th)) < 1e-3);
    CHECK(std::abs(oscillatory_phase(Mode{}, s, th) - 1.0) < 1e-3);
    const Mode r3 = Mode::whole(-3, -3), s3 = Mode::whole(-3, 3);
    CHECK(std::abs(oscillatory_phase(r3, s3, th) - sigma(r3, s3, th)) < 1e-4);
  }

  TEST_CASE("damped integral matches its Gaussian closed form") {
    // One (u_i, v_i) pair: pi / sqrt(eps^2 + pi^2) exp(-pi^2 (eps (al^2 + be^2) + 2 pi i al be) / (eps^2 + pi^2)).
    auto pair = [](double al, double be, double eps) {
      const double d = eps * eps + pi * pi;
      return pi / std::sqrt(d) * std::exp(-pi * pi * (eps * (al * al + be * be) + two_pi * I * al * be) / d);
    };
    const double th = 0.25;
    for (const double eps : {0.04, 0.01})
      for (const auto& [r, s] : {std::pair{Mode::whole(1, 0), Mode::whole(0, 1)},
                                 std::pair{Mode::whole(-3, -3), Mode::whole(-3, 3)}}) {
        const cplx want = pair(-th * r.n(), s.m(), eps) * pair(th * r.m(), s.n(), eps);
        const cplx got = oscillatory_phase_damped(r, s, th, eps, 6.0 / std::sqrt(eps), 1e-12);
        CHECK(std::abs(got - want) < 1e-9);
      }
  }

  TEST_CASE("local units are steps in r") {
    const auto u = local_unit(2.0, 1.5);
    CHECK(std::abs(u.eval(1.5, 2.9, 1.0, 0.0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(u.eval(1.5, 4.6, 1.0, 0.0, 0.0)) < 1e-15);
    const double mid = u.eval(1.5, 3.75, 1.0, 0.0, 0.0).real();
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
  }

  TEST_CASE("spectral decomposition recovers band-limited data") {
    std::mt19937_64 rng(6);
    const auto f = random_mode_function(rng, 6, 2);
    const std::vector<std::pair<double, double>> nodes = {{2.0, 0.7}, {3.0, 2.0}};
    const int n = 8;
    std::vector<std::vector<cplx>> samples;
    for (const auto& [r, t] : nodes) {
      std::vector<cplx> v;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v.push_back(f.eval(1.0, r, t, i * two_pi / n, j * two_pi / n));
      samples.push_back(v);
    }
    const auto sd = spectral_decompose(nodes, samples, n, n, 2);
    for (std::size_t k = 0; k < nodes.size(); ++k)
      CHECK(std::abs(sd.reconstruct(k, 0.37, 4.1) - f.eval(1.0, nodes[k].first, nodes[k].second, 0.37, 4.1)) < 1e-12);
  }

  TEST_CASE("derivatives in the angles multiply by the mode") {
    const auto f = ModeFunction::term(cplx(0.5, 1.0), Mode::whole(2, -3), Profile::atom(Atom::of(AtomKind::SinT)));
    CHECK(diff(f.derivative(2, 1.0), f * cplx(0.0, 2.0)) < 1e-15);
    CHECK(diff(f.derivative(3, 1.0), f * cplx(0.0, -3.0)) < 1e-15);
  }
}

TEST_SUITE("opalg") {
  TEST_CASE("left representation is a homomorphism and respects the involution") {
    std::mt19937_64 rng(8);
    const double th = 0.3;
    for (int k = 0; k < 5; ++k) {
      const auto f = random_mode_function(rng, 4, 2), g = random_mode_function(rng, 4, 2);
      const auto lhs = compose(left_rep(f), left_rep(g), th);
      CHECK((lhs - left_rep(star_product(f, g, th))).max_coeff() < 1e-12);
      CHECK((adjoint(left_rep(f), th) - left_rep(involution(f))).max_coeff() < 1e-12);
    }
  }

  TEST_CASE("left and right representations commute") {
    std::mt19937_64 rng(9);
    const double th = 0.25;
    for (int k = 0; k < 5; ++k) {
      const auto f = random_mode_function(rng, 4, 2), h = random_mode_function(rng, 4, 2);
      const auto A = left_rep(f), B = right_rep(h);
      CHECK((compose(A, B, th) - compose(B, A, th)).max_coeff() < 1e-12);
    }
  }

  TEST_CASE("composition is associative and the adjoint is an involution") {
    std::mt19937_64 rng(10);
    const double th = 0.3;
    const Mat4 m = Mat4::Random();
    const auto A = left_rep(random_mode_function(rng, 3, 2)) + OperatorExpr::constant(m);
    const auto B = right_rep(random_mode_function(rng, 3, 2));
    const auto C = left_rep(random_mode_function(rng, 3, 1));
    CHECK((compose(compose(A, B, th), C, th) - compose(A, compose(B, C, th), th)).max_coeff() < 1e-12);
    CHECK((adjoint(adjoint(A, th), th) - A).max_coeff() < 1e-12);
    CHECK((adjoint(compose(A, B, th), th) - compose(adjoint(B, th), adjoint(A, th), th)).max_coeff() < 1e-12);
  }

  TEST_CASE("MFMatrix evaluation is entrywise") {
    MFMatrix m;
    m(0, 1) = ModeFunction::exp_mode(1, 0);
    m(3, 2) = ModeFunction::constant(2.0);
    const Point x(Chart::N, 2.0, 1.0, 0.5, 0.0);
    const Mat4 v = m.eval(1.0, x);
    CHECK(std::abs(v(0, 1) - std::exp(I * 0.5)) < 1e-15);
    CHECK(std::abs(v(3, 2) - 2.0) < 1e-15);
    CHECK(std::abs(v(0, 0)) == 0.0);
  }
}
