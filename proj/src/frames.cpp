#include "nceh/frames.hpp"

namespace nceh {

namespace {

void require_chart(const Point& pt) {
  if (pt.chart == Chart::N && pt.theta >= pi) throw PoleSingularity("chart N excludes theta = pi");
  if (pt.chart == Chart::S && pt.theta <= 0.0) throw PoleSingularity("chart S excludes theta = 0");
}

RMat4 to_mat(const Sym4<double>& h) {
  RMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = h[i][j];
  return m;
}

}  // namespace

cplx stereo(const Point& pt) {
  require_chart(pt);
  if (pt.chart == Chart::N) return std::polar(1.0 / std::tan(pt.theta / 2), -pt.phi);
  return std::polar(std::tan(pt.theta / 2), pt.phi);
}

CoframeMatrix coframe(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  require_chart(pt);
  CoframeMatrix c;
  if (pt.chart == Chart::N) {
    c.H = to_mat(coframe_t<double>(p.a, pt.coords()));
  } else {
    const Coords<double> xs{pt.r, pi - pt.theta, -pt.phi, pt.psi};
    const RMat4 jac = Eigen::Vector4d(1.0, -1.0, -1.0, 1.0).asDiagonal();
    c.H = to_mat(coframe_t<double>(p.a, xs)) * jac;
  }
  c.Hinv = c.H.inverse();
  return c;
}

RMat4 coframe_inverse_closed(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  const double r = pt.r;
  const double sd = std::sqrt(1.0 - std::pow(p.a / r, 4));
  const double s = std::sin(pt.theta), cot = std::cos(pt.theta) / s;
  const double cf = std::cos(pt.phi), sf = std::sin(pt.phi);
  RMat4 m;
  m << 0, 0, 0, sd,
      -2 * cf / r, 2 * sf / r, 0, 0,
      -2 * sf / (r * s), -2 * cf / (r * s), 0, 0,
      2 * cot * sf / r, 2 * cot * cf / r, 2 / (r * sd), 0;
  return m;
}

std::array<RMat4, 4> coframe_derivatives(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  std::array<RMat4, 4> out;
  const auto x = pt.coords();
  for (int l = 0; l < 4; ++l) {
    Coords<Dual<double>> xs;
    for (int i = 0; i < 4; ++i) xs[i] = Dual<double>(x[i], i == l ? 1.0 : 0.0);
    const auto h = coframe_t(p.a, xs);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[l](i, j) = h[i][j].d;
  }
  return out;
}

TransitionSO4 cotangent_transition(const Point& pt) {
  if (pt.theta <= 0.0 || pt.theta >= pi) throw PoleSingularity("transition needs the chart overlap");
  const double ang = 2.0 * pt.phi + pi;
  TransitionSO4 t;
  t.F_SN.setIdentity();
  t.F_SN(0, 0) = std::cos(ang);
  t.F_SN(0, 1) = -std::sin(ang);
  t.F_SN(1, 0) = std::sin(ang);
  t.F_SN(1, 1) = std::cos(ang);
  t.F_NS = t.F_SN.transpose();
  return t;
}

RMat4 transition_from_coframes(const ManifoldParams& p, const Point& pt) {
  Point n = pt, s = pt;
  n.chart = Chart::N;
  s.chart = Chart::S;
  return coframe(p, s).H * coframe(p, n).Hinv;
}

}  // namespace nceh
