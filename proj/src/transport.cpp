#include "nceh/transport.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <map>

namespace nceh {

Mat4 a_matrix_closed(const ManifoldParams& p, const Point& pt, int direction) {
  require_interior(p, pt);
  const double eps = std::pow(p.a / pt.r, 4);
  Mat4 A = Mat4::Zero();
  if (direction == kPhi) {
    const double sd = std::sqrt(1.0 - eps);
    const double dp = 1.0 + eps;
    const double c = std::cos(pt.theta), s = std::sin(pt.theta);
    A(0, 0) = I;
    A(1, 1) = -I;
    A(2, 2) = -I * (1.0 + dp * c);
    A(2, 3) = -sd * s * std::polar(1.0, pt.phi);
    A(3, 2) = sd * s * std::polar(1.0, -pt.phi);
    A(3, 3) = I * (1.0 + dp * c);
    return 0.5 * A;
  }
  if (direction == kPsi) {
    A.diagonal() << -eps, eps, -1.0, 1.0;
    return (0.5 * I) * A;
  }
  throw std::invalid_argument("transport direction must be phi (2) or psi (3)");
}

Mat4 a_matrix(const ManifoldParams& p, const Point& pt, int direction) {
  if (direction != kPhi && direction != kPsi) throw std::invalid_argument("transport direction must be phi or psi");
  return omega(p, pt, direction);
}

double unitarity_defect(const Mat4& U) { return max_abs(U.adjoint() * U - Mat4::Identity()); }

PropagatorMatrix transport_psi(const ManifoldParams& p, const Point& pt, double dt) {
  const Mat4 A = a_matrix(p, pt, kPsi);
  PropagatorMatrix out{Mat4::Zero(), kPsi, pt, dt, 0};
  out.U = (dt * A).exp();
  return out;
}

PropagatorMatrix transport_phi(const ManifoldParams& p, const Point& pt, double dt, double tol) {
  PropagatorMatrix out{Mat4::Identity(), kPhi, pt, dt, 0};
  if (dt == 0.0) return out;
  if (pt.theta <= 0.0 || pt.theta >= pi) throw PoleSingularity("phi circle degenerates at the poles");
  constexpr std::int64_t kScale = std::int64_t{1} << 22;
  constexpr int kMaxSteps = 1 << 18;
  std::map<std::int64_t, Mat4> cache;
  auto A = [&](std::int64_t key) -> const Mat4& {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double t = dt * static_cast<double>(key) / static_cast<double>(kScale);
    const Point q(pt.chart, pt.r, pt.theta, pt.phi + t, pt.psi);
    return cache.emplace(key, a_matrix(p, q, kPhi)).first->second;
  };
  auto integrate = [&](int n) {
    const double h = dt / n;
    const std::int64_t half = kScale / (2 * n);
    Mat4 U = Mat4::Identity();
    for (int s = 0; s < n; ++s) {
      const std::int64_t k0 = 2 * s * half;
      const Mat4 k1 = A(k0) * U;
      const Mat4 k2 = A(k0 + half) * (U + 0.5 * h * k1);
      const Mat4 k3 = A(k0 + half) * (U + 0.5 * h * k2);
      const Mat4 k4 = A(k0 + 2 * half) * (U + h * k3);
      U += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return U;
  };
  int n = std::max(1, static_cast<int>(std::ceil(std::abs(dt) / (two_pi / 256.0))));
  // Round up to a power of two so refinement keys stay integral.
  int pw = 1;
  while (pw < n) pw <<= 1;
  n = pw;
  Mat4 prev = integrate(n);
  while (2 * n <= kMaxSteps) {
    n *= 2;
    const Mat4 cur = integrate(n);
    if (max_abs(cur - prev) <= tol && unitarity_defect(cur) <= tol) {
      out.U = cur;
      out.steps = n;
      return out;
    }
    prev = cur;
  }
  throw OdeStepFailure("RK4 step halving could not meet the transport tolerance");
}

Mat4 spin_rotation(double t) {
  Mat4 S = Mat4::Zero();
  for (int k = 0; k < 4; ++k) S(k, k) = std::polar(1.0, 0.5 * t * kSpinCharge[k]);
  return S;
}

VData v_data(const ManifoldParams& p, const Point& x, double theta_def, Mode r, Lift lift, double tol) {
  const double d3 = two_pi * theta_def * r.n();
  const double d4 = -two_pi * theta_def * r.m();
  VData v;
  v.pullback = Point(x.chart, x.r, x.theta, x.phi + d3, x.psi + d4);
  if (lift == Lift::Spin) {
    v.U = spin_rotation(d3);
    return v;
  }
  const Point psi_start(x.chart, x.r, x.theta, x.phi + d3, x.psi + d4);
  const Point phi_start(x.chart, x.r, x.theta, x.phi + d3, x.psi);
  const Mat4 up = transport_psi(p, psi_start, -d4).U;
  const Mat4 uf = transport_phi(p, phi_start, -d3, tol).U;
  v.U = uf * up;
  return v;
}

VField::VField(ManifoldParams p, double theta_def, Mode r, Lift lift, FieldPtr inner, double tol)
    : p_(p), theta_(theta_def), r_(r), lift_(lift), inner_(std::move(inner)), tol_(tol) {}

Vec4 VField::value(const Point& x) const {
  const VData v = v_data(p_, x, theta_, r_, lift_, tol_);
  return v.U * inner_->value(v.pullback);
}

Vec4 VField::d(const Point& x, int i) const {
  if (lift_ == Lift::Spin) {
    const VData v = v_data(p_, x, theta_, r_, lift_, tol_);
    return v.U * inner_->d(v.pullback, i);
  }
  return richardson_derivative([this](const Point& y) { return value(y); }, x, i, 1e-3);
}

double dirac_v_commutator(const ManifoldParams& p, double theta_def, Mode r, const FieldPtr& field,
                          const Point& x, Lift lift) {
  const VField vpsi(p, theta_def, r, lift, field);
  const Vec4 dv = apply_dirac(p, vpsi, x);
  const VData v = v_data(p, x, theta_def, r, lift);
  const Vec4 vd = v.U * apply_dirac(p, *field, v.pullback);
  return (dv - vd).norm();
}

Mat4 symbol_L(const ManifoldParams& p, const ModeFunction& f, const Point& x, const std::array<double, 4>& xi,
              double theta_def, Lift lift) {
  Mat4 s = Mat4::Zero();
  for (const Mode r : f.modes()) {
    const cplx fr = f.component(r).eval(p.a, x);
    const Mat4 U = v_data(p, x, theta_def, r, lift).U;
    const cplx ph = std::polar(1.0, two_pi * theta_def * (r.m() * xi[3] - r.n() * xi[2]));
    s += fr * ph * U;
  }
  return s;
}

}  // namespace nceh
