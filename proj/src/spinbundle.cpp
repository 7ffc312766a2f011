#include "nceh/spinbundle.hpp"

namespace nceh {

const GammaSet& gamma_set() {
  static const GammaSet gs = [] {
    GammaSet s;
    const cplx o{0, 0}, one{1, 0}, i{0, 1};
    s.g[0] << o, o, -one, o,
              o, o, o, one,
              one, o, o, o,
              o, -one, o, o;
    s.g[1] << o, o, -i, o,
              o, o, o, -i,
              -i, o, o, o,
              o, -i, o, o;
    s.g[2] << o, o, o, -one,
              o, o, -one, o,
              o, one, o, o,
              one, o, o, o;
    s.g[3] << o, o, o, -i,
              o, o, i, o,
              o, i, o, o,
              -i, o, o, o;
    s.chi = s.g[0] * s.g[1] * s.g[2] * s.g[3];
    return s;
  }();
  return gs;
}

SpinTransition spin_transition_phi(double phi) {
  const cplx e = std::polar(1.0, phi);
  const cplx ec = std::conj(e);
  SpinTransition t;
  t.P = Vec4(-I * e, I * ec, I * ec, -I * e).asDiagonal();
  t.Q = Vec4(1.0 / (-I * e), 1.0 / (I * ec), 1.0 / (I * ec), 1.0 / (-I * e)).asDiagonal();
  return t;
}

SpinTransition spin_transition(const Point& pt) {
  if (pt.theta <= 0.0 || pt.theta >= pi) throw PoleSingularity("spin transition needs the chart overlap");
  return spin_transition_phi(pt.phi);
}

Mat4 charge_conjugation_matrix() {
  Mat4 c = Mat4::Zero();
  c(0, 2) = -1;
  c(1, 3) = -1;
  c(2, 0) = 1;
  c(3, 1) = 1;
  return c;
}

Mat4 real_structure_matrix() {
  const auto& g = gamma_set().g;
  return g[0] * g[2];
}

Vec4 charge_conjugation(const Vec4& s) { return charge_conjugation_matrix() * s.conjugate(); }
Vec4 real_structure(const Vec4& s) { return real_structure_matrix() * s.conjugate(); }

namespace {

void set_anti(Table3& t, int beta, int i, int alpha, double v) {
  t[beta][i][alpha] = v;
  t[alpha][i][beta] = -v;
}

}  // namespace

Table3 spin_connection_closed(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  const double d = 1.0 - std::pow(p.a / pt.r, 4);
  const double dp = 1.0 + std::pow(p.a / pt.r, 4);
  const double sd = std::sqrt(d);
  const double s = std::sin(pt.theta), c = std::cos(pt.theta);
  const double sf = std::sin(pt.phi), cf = std::cos(pt.phi);
  Table3 t{};
  for (auto& a : t)
    for (auto& b : a) b.fill(0.0);
  // 1-based labels (beta; i, alpha) shifted to 0-based.
  set_anti(t, 0, 1, 2, 0.5 * sd * sf);
  set_anti(t, 0, 1, 3, -0.5 * sd * cf);
  set_anti(t, 2, 1, 1, 0.5 * sd * cf);
  set_anti(t, 3, 1, 1, -0.5 * sd * sf);
  set_anti(t, 0, 2, 2, -0.5 * sd * s * cf);
  set_anti(t, 0, 2, 3, -0.5 * sd * s * sf);
  set_anti(t, 0, 2, 1, -1.0 - 0.5 * dp * c);
  set_anti(t, 2, 2, 1, -0.5 * sd * s * sf);
  set_anti(t, 3, 2, 1, 0.5 * sd * s * cf);
  set_anti(t, 3, 2, 2, -0.5 * dp * c);
  set_anti(t, 0, 3, 1, 0.5 * d);
  set_anti(t, 3, 3, 2, -0.5 * dp);
  return t;
}

Table3 spin_connection_from_frame(const ManifoldParams& p, const Point& pt) {
  Point n = pt;
  n.chart = Chart::N;
  const CoframeMatrix cf = coframe(p, n);
  const auto dh = coframe_derivatives(p, n);
  const Table3 gam = christoffel_from_metric(p, n);
  Table3 t{};
  for (int beta = 0; beta < 4; ++beta)
    for (int i = 0; i < 4; ++i)
      for (int alpha = 0; alpha < 4; ++alpha) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j) {
          double inner = -dh[i](beta, j);
          for (int k = 0; k < 4; ++k) inner += cf.H(beta, k) * gam[k][i][j];
          v += cf.Hinv(j, alpha) * inner;
        }
        t[beta][i][alpha] = v;
      }
  return t;
}

double spin_connection_antisymmetry(const Table3& t) {
  double m = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < 4; ++i)
      for (int a = 0; a < 4; ++a) m = std::max(m, std::abs(t[b][i][a] + t[a][i][b]));
  return m;
}

Mat4 omega_from_table(const Table3& t, int i) {
  const auto& g = gamma_set().g;
  Mat4 w = Mat4::Zero();
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta)
      if (t[beta][i][alpha] != 0.0) w += (0.25 * t[beta][i][alpha]) * (g[alpha] * g[beta]);
  return w;
}

Mat4 omega(const ManifoldParams& p, const Point& pt, int i) {
  return omega_from_table(spin_connection_from_frame(p, pt), i);
}

std::array<Mat4, 4> coordinate_gammas(const ManifoldParams& p, const Point& pt) {
  Point n = pt;
  n.chart = Chart::N;
  const RMat4 hinv = coframe(p, n).Hinv;
  const auto& g = gamma_set().g;
  std::array<Mat4, 4> out;
  for (int j = 0; j < 4; ++j) {
    out[j] = Mat4::Zero();
    for (int b = 0; b < 4; ++b) out[j] += hinv(j, b) * g[b];
  }
  return out;
}

}  // namespace nceh
