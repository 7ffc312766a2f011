#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nceh {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using RMat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline const cplx I{0.0, 1.0};

// Rank-3 real table, index order [upper][lower1][lower2].
using Table3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

struct DegenerateMetric : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleSingularity : std::domain_error {
  using std::domain_error::domain_error;
};
struct OdeStepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AliasError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct QuadratureDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegrable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentSection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ManifoldParams {
  double a = 1.0;
  bool conifold_limit = false;  // admits a == 0

  void validate() const {
    if (!(a > 0.0) && !(conifold_limit && a == 0.0))
      throw std::invalid_argument("instanton scale a must be positive");
  }
};

enum class Chart : std::uint8_t { N, S };

inline double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

struct Point {
  Chart chart = Chart::N;
  double r = 2.0;
  double theta = pi / 2;  // polar coordinate (theta_coord)
  double phi = 0.0;
  double psi = 0.0;

  Point() = default;
  Point(Chart c, double r_, double th, double ph, double ps)
      : chart(c), r(r_), theta(th), phi(wrap_angle(ph)), psi(wrap_angle(ps)) {}

  std::array<double, 4> coords() const { return {r, theta, phi, psi}; }
};

struct SamplingBox {
  double eps_r_rel = 0.05;
  double eps_theta = 0.05;
  double r_max_rel = 10.0;
};

inline Point random_interior_point(const ManifoldParams& p, std::mt19937_64& rng,
                                   const SamplingBox& box = {}, Chart c = Chart::N) {
  std::uniform_real_distribution<double> ur(p.a * (1.0 + box.eps_r_rel), p.a * box.r_max_rel);
  std::uniform_real_distribution<double> ut(box.eps_theta, pi - box.eps_theta);
  std::uniform_real_distribution<double> ua(0.0, two_pi);
  const double r = ur(rng);
  const double t = ut(rng);
  const double f = ua(rng);
  const double s = ua(rng);
  return Point(c, r, t, f, s);
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace nceh
