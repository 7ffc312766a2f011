#include "nceh/projmod.hpp"

#include "nceh/spinbundle.hpp"

namespace nceh {

PatchFunctions patch_functions(double theta) {
  PatchFunctions f{};
  const double c = std::cos(0.5 * theta);
  f.h_N = c * c;
  f.h_S = 1.0 - f.h_N;
  const double s = std::sin(0.5 * theta);
  const double u = 0.5 * pi * s * s;
  f.k_N = theta >= pi ? 0.0 : std::cos(u) * std::cos(u);
  f.k_S = theta <= 0.0 ? 0.0 : std::sin(u) * std::sin(u);
  return f;
}

namespace {

Mat8 assemble(const Point& pt, double kn, double ks, double off_n, double off_s) {
  Mat8 p = Mat8::Zero();
  p.topLeftCorner<4, 4>() = kn * Mat4::Identity();
  p.bottomRightCorner<4, 4>() = ks * Mat4::Identity();
  if (off_n != 0.0 || off_s != 0.0) {
    const SpinTransition t = spin_transition_phi(pt.phi);
    if (off_n != 0.0) p.topRightCorner<4, 4>() = off_n * t.P;
    if (off_s != 0.0) p.bottomLeftCorner<4, 4>() = off_s * t.Q;
  }
  return p;
}

}  // namespace

Mat8 projection_matrix(const Point& pt) {
  const PatchFunctions f = patch_functions(pt.theta);
  return assemble(pt, f.k_N, f.k_S, f.k_N, f.k_S);
}

Mat8 projection_hermitian(const Point& pt) {
  const PatchFunctions f = patch_functions(pt.theta);
  const double s = std::sin(0.5 * pt.theta);
  const double u = 0.5 * pi * s * s;
  const double m = (pt.theta <= 0.0 || pt.theta >= pi) ? 0.0 : std::cos(u) * std::sin(u);
  return assemble(pt, f.k_N, f.k_S, m, m);
}

std::array<ModeFunction, 64> projection_entries() {
  const ModeFunction kn = ModeFunction::atom(Atom::of(AtomKind::CosU), 2);
  const ModeFunction ks = ModeFunction::atom(Atom::of(AtomKind::SinU), 2);
  // P = diag(-i e^{i phi}, i e^{-i phi}, i e^{-i phi}, -i e^{i phi}); Q = P^{-1} = conj(P).
  const std::array<cplx, 4> pc = {-I, I, I, -I};
  const std::array<int, 4> pm = {1, -1, -1, 1};
  std::array<ModeFunction, 64> e;
  for (int k = 0; k < 4; ++k) {
    e[8 * k + k] = kn;
    e[8 * (k + 4) + (k + 4)] = ks;
    e[8 * k + (k + 4)] = kn * ModeFunction::term(pc[k], Mode::whole(pm[k], 0));
    e[8 * (k + 4) + k] = ks * ModeFunction::term(std::conj(pc[k]), Mode::whole(-pm[k], 0));
  }
  return e;
}

double deformed_idempotency_residual(double theta_def, const std::vector<Point>& pts) {
  const auto p = projection_entries();
  double worst = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      ModeFunctionBuilder b;
      for (int k = 0; k < 8; ++k) b.add(star_product(p[8 * i + k], p[8 * k + j], theta_def));
      b.add(p[8 * i + j], -1.0);
      const ModeFunction d = b.build();
      for (const auto& x : pts) worst = std::max(worst, std::abs(d.eval(1.0, x)));
    }
  return worst;
}

RoundTrip module_roundtrip(const Vec4& psi_n, const Vec4& psi_s, const Point& pt, double consistency_tol) {
  const PatchFunctions f = patch_functions(pt.theta);
  const SpinTransition t = spin_transition_phi(pt.phi);
  const bool overlap = pt.theta > 0.0 && pt.theta < pi;
  if (overlap && max_abs(psi_s - t.Q * psi_n) > consistency_tol * std::max(1.0, max_abs(psi_n)))
    throw InconsistentSection("chart components disagree under Q on the overlap");
  const Vec4 tn = f.k_N * psi_n;
  const Vec4 ts = f.k_S * psi_s;
  RoundTrip out;
  out.A = f.k_N * (tn + t.P * ts);
  out.B = f.k_S * (ts + t.Q * tn);
  const Vec4 rec_n = out.A + t.P * out.B;
  const Vec4 rec_s = t.Q * out.A + out.B;
  double res = 0.0;
  if (pt.theta < pi) res = std::max(res, max_abs(rec_n - psi_n));
  if (pt.theta > 0.0) res = std::max(res, max_abs(rec_s - psi_s));
  out.residual = res;
  return out;
}

}  // namespace nceh
