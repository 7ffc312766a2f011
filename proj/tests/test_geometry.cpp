#include "nceh/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace nceh;

namespace {

const ManifoldParams p1{1.0};
const Point x0(Chart::N, 2.0, pi / 3, 1.0, 0.0);

// Christoffel symbols of the metric at (a, r, theta) = (1, 2, pi/3), from
// tests/oracles/geometry_oracle.py.
struct Frozen {
  int k, i, j;
  double v;
};
constexpr Frozen kOracle[] = {
    {0, 0, 0, -0.066666666666666667}, {0, 1, 1, -0.46875},           {0, 2, 2, -0.47607421875},
    {0, 2, 3, -0.2490234375},         {0, 3, 3, -0.498046875},        {1, 0, 1, 0.5},
    {1, 2, 2, -0.027063293868263708}, {1, 2, 3, 0.40594940802395562}, {2, 0, 2, 0.5},
    {2, 1, 2, 0.30671733050698869},   {2, 1, 3, -0.54126587736527415}, {3, 0, 2, 0.033333333333333333},
    {3, 0, 3, 0.56666666666666667},   {3, 1, 2, -0.58637136714571367}, {3, 1, 3, 0.27063293868263708},
};

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("christoffel symbols from the metric match the symbolic oracle") {
    const Table3 t = christoffel_from_metric(p1, x0);
    int nonzero = 0;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (std::abs(t[k][i][j]) > 1e-14) ++nonzero;
    for (const auto& e : kOracle) {
      CHECK(t[e.k][e.i][e.j] == doctest::Approx(e.v).epsilon(1e-12));
      CHECK(t[e.k][e.j][e.i] == doctest::Approx(e.v).epsilon(1e-12));
    }
    const int off_diagonal = 10;  // entries with i != j in kOracle
    CHECK(nonzero == 15 + off_diagonal);
  }

  TEST_CASE("corrected closed table agrees with the oracle; closed G^1_11 is twice it") {
    const Table3 corr = christoffel_corrected(p1, x0);
    const Table3 closed = christoffel_closed(p1, x0);
    for (const auto& e : kOracle) CHECK(corr[e.k][e.i][e.j] == doctest::Approx(e.v).epsilon(1e-12));
    CHECK(closed[0][0][0] == doctest::Approx(2.0 * kOracle[0].v).epsilon(1e-14));
    for (const auto& e : kOracle)
      if (e.k + e.i + e.j > 0) CHECK(closed[e.k][e.i][e.j] == doctest::Approx(e.v).epsilon(1e-12));
  }

  TEST_CASE("symbol list covers the fifteen independent entries") {
    CHECK(christoffel_symbol_list().size() == 15);
  }

  TEST_CASE("volume density is r^3 sin(theta) / 8") {
    CHECK(volume_density(p1, x0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    const ManifoldParams p2{2.0};
    const Point x(Chart::N, 3.0, 0.4, 0.0, 0.0);
    CHECK(volume_density(p2, x) == doctest::Approx(27.0 * std::sin(0.4) / 8.0).epsilon(1e-14));
  }

  TEST_CASE("Ricci-flat and metric-compatible at random interior points") {
    std::mt19937_64 rng(7);
    for (const double a : {0.5, 1.0, 2.0}) {
      const ManifoldParams p{a};
      for (int n = 0; n < 20; ++n) {
        const Point x = random_interior_point(p, rng);
        CHECK(max_abs(ricci(p, x)) < 1e-8);
        CHECK(metric_compatibility(p, x, christoffel_from_metric(p, x)) < 1e-9);
        CHECK(metric_compatibility(p, x, christoffel_corrected(p, x)) < 1e-9);
      }
    }
  }

  TEST_CASE("the closed table is not metric-compatible") {
    CHECK(metric_compatibility(p1, x0, christoffel_closed(p1, x0)) > 1e-2);
  }

  TEST_CASE("curvature does not vanish although Ricci does") {
    CHECK(riemann_max_abs(p1, x0) > 1e-3);
    CHECK(std::abs(scalar_curvature(p1, x0)) < 1e-8);
  }

  TEST_CASE("inverse metric inverts the metric") {
    const RMat4 g = metric(p1, x0).g;
    CHECK(max_abs(g * inverse_metric(p1, x0) - RMat4::Identity()) < 1e-13);
  }

  TEST_CASE("points on or inside the bolt are rejected") {
    CHECK_THROWS_AS(metric(p1, Point(Chart::N, 1.0, 1.0, 0.0, 0.0)), DegenerateMetric);
    CHECK_THROWS_AS(metric(p1, Point(Chart::N, 0.5, 1.0, 0.0, 0.0)), DegenerateMetric);
    CHECK_THROWS_AS(metric(ManifoldParams{-1.0}, x0), std::invalid_argument);
  }
}
