#include "nceh/geometry.hpp"
#include "nceh/hochschild.hpp"
#include "nceh/quadrature.hpp"
#include "nceh/residue.hpp"

#include <doctest.h>

#include <random>

using namespace nceh;

namespace {

ModeFunction small_function(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> um(-1, 1);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  ModeFunctionBuilder b;
  b.add(cplx(uc(rng), uc(rng)), Mode::whole(um(rng), um(rng)), Profile::one());
  b.add(cplx(uc(rng), uc(rng)), Mode::whole(um(rng), um(rng)), Profile::atom(Atom::of(AtomKind::CosT)));
  return b.build();
}

HochschildChain random_chain(std::mt19937_64& rng, int degree, int n_terms) {
  HochschildChain c(degree);
  for (int k = 0; k < n_terms; ++k) {
    std::vector<ModeFunction> legs;
    for (int i = 0; i < degree; ++i) legs.push_back(small_function(rng));
    c.add(1.0, small_function(rng), small_function(rng), legs);
  }
  return c;
}

std::vector<Point> sample(const ManifoldParams& p, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) out.push_back(random_interior_point(p, rng));
  return out;
}

RMat4 random_spd(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RMat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = u(rng);
  Eigen::HouseholderQR<RMat4> qr(a);
  const RMat4 q = qr.householderQ();
  Eigen::Vector4d l;
  for (int i = 0; i < 4; ++i) l[i] = std::pow(spread, 0.5 * (u(rng) + 1.0));
  return q * l.asDiagonal() * q.transpose();
}

}  // namespace

TEST_SUITE("hochschild") {
  TEST_CASE("b o b = 0 on random chains") {
    std::mt19937_64 rng(61);
    for (const double th : {0.0, 0.3, 1.0 / std::sqrt(2.0)})
      for (const int deg : {2, 3}) {
        const HochschildChain c = random_chain(rng, deg, 3);
        const HochschildChain bc = boundary(c, th);
        CHECK(bc.degree() == deg - 1);
        CHECK(bc.max_coeff() > 1e-3);
        CHECK(boundary(bc, th).max_coeff() < 1e-12);
      }
  }

  TEST_CASE("bimodule product reverses the opposite factor") {
    const double th = 0.3;
    const auto u3 = ModeFunction::exp_mode(1, 0), u4 = ModeFunction::exp_mode(0, 1);
    const Bimod x = {{u3, u3}}, y = {{u4, u4}};
    const Bimod xy = bimod_mul(x, y, th);
    REQUIRE(xy.size() == 1);
    CHECK((xy[0].left - star_product(u3, u4, th)).max_coeff() < 1e-15);
    CHECK((xy[0].right - star_product(u4, u3, th)).max_coeff() < 1e-15);
  }

  TEST_CASE("commutative cycle: 24 terms, closed, represented by chirality") {
    const ManifoldParams p{1.0};
    const HochschildChain c0 = cycle_c0(p);
    CHECK(c0.degree() == 4);
    CHECK(c0.size() == 24);
    CHECK(boundary(c0, 0.0).max_coeff() < 1e-12);
    CHECK(chain_is_zero(p, boundary(c0, 0.0), 8, 1).zero);
    CHECK(pi_d_chi_residual(p, represent_pi_D(p, c0, 0.0), sample(p, 62, 5)) < 1e-8);
  }

  TEST_CASE("negative control: dropping a permutation breaks closedness") {
    const ManifoldParams p{1.0};
    const HochschildChain c = cycle_c0(p, 5);
    const ZeroTest z = chain_is_zero(p, boundary(c, 0.0), 8, 1);
    CHECK_FALSE(z.zero);
    CHECK(z.residual > 1e-3);
  }

  TEST_CASE("deformed cycle reduces to the commutative one") {
    const ManifoldParams p{1.0};
    const HochschildChain c = cycle_c_theta(p, 0.0);
    CHECK(chain_is_zero(p, boundary(c, 0.0), 8, 2).zero);
    CHECK(pi_d_chi_residual(p, represent_pi_D(p, c, 0.0), sample(p, 63, 3)) < 1e-8);
  }

  TEST_CASE("leg pairing phase") {
    for (const double th : {0.0, 0.25, 0.3}) CHECK(std::abs(leg_pairing_phase(th) + 1.0) < 1e-14);
  }

  TEST_CASE("zero test separates a nonzero chain") {
    std::mt19937_64 rng(64);
    const ManifoldParams p{1.0};
    const HochschildChain c = random_chain(rng, 1, 2);
    CHECK_FALSE(chain_is_zero(p, c, 4, 3).zero);
    CHECK(chain_is_zero(p, HochschildChain(1), 4, 3).zero);
  }
}

TEST_SUITE("residue") {
  TEST_CASE("sphere integral of a quadric matches 2 pi^2 / sqrt(det Q)") {
    std::mt19937_64 rng(71);
    for (const double spread : {1.0, 10.0, 1e3, 1e6})
      for (int k = 0; k < 5; ++k) {
        const RMat4 Q = random_spd(rng, spread);
        const double exact = 2.0 * pi * pi / std::sqrt(Q.determinant());
        CHECK(sphere_quadric_integral(Q) == doctest::Approx(exact).epsilon(1e-9));
      }
  }

  TEST_CASE("indefinite quadric is rejected") {
    RMat4 Q = RMat4::Identity();
    Q(2, 2) = -1.0;
    CHECK_THROWS_AS(sphere_quadric_integral(Q), DegenerateMetric);
  }

  TEST_CASE("cosphere density is 8 pi^2 sqrt(det G)") {
    for (const double a : {0.5, 1.0, 2.0}) {
      const ManifoldParams p{a};
      for (const auto& x : sample(p, 72, 5))
        CHECK(cosphere_density(p, x) == doctest::Approx(8.0 * pi * pi * volume_density(p, x)).epsilon(1e-9));
    }
  }

  TEST_CASE("residue to integral ratio is 8 (2 pi)^2 and the trace identity holds") {
    const ResidueQuadrature q{12, 8, 8};
    for (const double a : {1.0, 2.0}) {
      const ManifoldParams p{a};
      for (const auto& f : default_residue_corpus(a)) {
        const double in = integral(p, f, q);
        CHECK(wodzicki_residue(p, f, 4.0, q) / in == doctest::Approx(8.0 * two_pi * two_pi).epsilon(1e-9));
        CHECK(trace_theorem_consistency(p, f, 4.0, q).relerr < 1e-9);
      }
    }
  }

  TEST_CASE("integral of a radial bump against the closed-form volume") {
    const ManifoldParams p{1.0};
    const ModeFunction f = ModeFunction::atom(Atom::bump(3.0, 1.5));
    // int sqrt(det G) d^4x = (2 pi)^2 * int r^3/8 dr * int sin = (2 pi)^2 / 4 * int r^3 bump dr
    const auto nodes = composite_rule(1.5, 4.5, 64, 12);
    double radial = 0.0;
    for (const auto& [r, w] : nodes) radial += w * r * r * r * f.eval(1.0, r, 1.0, 0.0, 0.0).real();
    CHECK(integral(p, f) == doctest::Approx(two_pi * two_pi / 4.0 * radial).epsilon(1e-10));
  }

  TEST_CASE("functions without compact support are rejected") {
    const ManifoldParams p{1.0};
    CHECK_THROWS_AS(integral(p, ModeFunction::constant(1.0)), NonIntegrable);
  }
}
