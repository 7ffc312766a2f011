#include "nceh/dirac.hpp"

namespace nceh {

DiracFrame dirac_frame(const ManifoldParams& p, const Point& x) {
  DiracFrame fr;
  fr.gam = coordinate_gammas(p, x);
  const Table3 t = spin_connection_from_frame(p, x);
  for (int j = 0; j < 4; ++j) fr.omega[j] = omega_from_table(t, j);
  return fr;
}

Vec4 apply_dirac(const DiracFrame& fr, const SpinorField& field, const Point& x) {
  const Vec4 v = field.value(x);
  Vec4 out = Vec4::Zero();
  for (int j = 0; j < 4; ++j) out += fr.gam[j] * (field.d(x, j) - fr.omega[j] * v);
  return -I * out;
}

Vec4 apply_dirac(const ManifoldParams& p, const SpinorField& field, const Point& x) {
  return apply_dirac(dirac_frame(p, x), field, x);
}

FieldPtr dirac_field(const ManifoldParams& p, FieldPtr psi) {
  return std::make_shared<FdField>([p, psi](const Point& x) { return apply_dirac(p, *psi, x); });
}

double dirac_j_commutator(const ManifoldParams& p, const FieldPtr& field, const Point& x, const Mat4& C) {
  const DiracFrame fr = dirac_frame(p, x);
  const AntilinearField jpsi(C, field);
  const Vec4 djpsi = apply_dirac(fr, jpsi, x);
  const Vec4 jdpsi = C * apply_dirac(fr, *field, x).conjugate();
  return (djpsi - jdpsi).norm();
}

double dirac_chi_anticommutator(const ManifoldParams& p, const FieldPtr& field, const Point& x) {
  const DiracFrame fr = dirac_frame(p, x);
  const Mat4& chi = gamma_set().chi;
  const MatrixTimesField chipsi(chi, field);
  return (chi * apply_dirac(fr, *field, x) + apply_dirac(fr, chipsi, x)).norm();
}

Vec4 multiplier_commutator(const ManifoldParams& p, const ModeFunction& f, const FieldPtr& field, const Point& x) {
  const DiracFrame fr = dirac_frame(p, x);
  const ScalarTimesField fpsi(p.a, f, field);
  return apply_dirac(fr, fpsi, x) - f.eval(p.a, x) * apply_dirac(fr, *field, x);
}

Mat4 clifford_differential(const ManifoldParams& p, const ModeFunction& f, const Point& x) {
  const auto gam = coordinate_gammas(p, x);
  Mat4 c = Mat4::Zero();
  for (int j = 0; j < 4; ++j) c += f.derivative(j, p.a).eval(p.a, x) * gam[j];
  return c;
}

Mat4 symbol_d_squared(const ManifoldParams& p, const Point& x, const std::array<double, 4>& xi) {
  const auto gam = coordinate_gammas(p, x);
  Mat4 s = Mat4::Zero();
  for (int j = 0; j < 4; ++j) s += xi[j] * gam[j];
  return s * s;
}

}  // namespace nceh
