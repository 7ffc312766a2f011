#pragma once

#include "nceh/core.hpp"
#include "nceh/modealg.hpp"
#include "nceh/spinor_field.hpp"
#include "nceh/transport.hpp"

#include <map>

namespace nceh {

// 4x4 matrix of mode functions, row-major.
struct MFMatrix {
  std::array<ModeFunction, 16> e;

  ModeFunction& operator()(int i, int j) { return e[4 * i + j]; }
  const ModeFunction& operator()(int i, int j) const { return e[4 * i + j]; }

  static MFMatrix zero() { return {}; }
  static MFMatrix scalar(const ModeFunction& f);
  static MFMatrix constant(const Mat4& m);

  bool is_zero(double tol = 0.0) const;
  double max_coeff() const;
  bool is_scalar() const;  // f * identity
  Mat4 eval(double a, const Point& x) const;

  friend MFMatrix operator+(const MFMatrix& x, const MFMatrix& y);
  friend MFMatrix operator-(const MFMatrix& x, const MFMatrix& y);
  friend MFMatrix operator*(const MFMatrix& x, const MFMatrix& y);  // pointwise entries
  friend MFMatrix operator*(const MFMatrix& x, cplx s);
};

// Conjugation by the isometry lift: V_r M V_r^{-1}. Entry (a, b) with mode s
// picks up sigma(r, s + (q_ab, 0)), q_ab = (c_a - c_b)/2.
MFMatrix adjoint_action(Mode r, const MFMatrix& m, double theta_def);

// Symbolic gamma^j(x) = h~^j_beta gamma^beta (chart N).
const std::array<MFMatrix, 4>& symbolic_coordinate_gammas(double a);
// Symbolic chart-N coframe h^alpha_i (rows alpha).
MFMatrix symbolic_coframe(double a);

// Finite sum of M_C V_r.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  static OperatorExpr identity();
  static OperatorExpr term(const MFMatrix& c, Mode shift);
  static OperatorExpr constant(const Mat4& m) { return term(MFMatrix::constant(m), Mode{}); }

  const std::map<Mode, MFMatrix>& terms() const { return t_; }
  bool is_zero(double tol = 0.0) const;
  double max_coeff() const;
  bool has_integer_shifts() const;
  MFMatrix coefficient(Mode shift) const;

  OperatorExpr& operator+=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a += b * cplx(-1.0); }
  friend OperatorExpr operator*(const OperatorExpr& a, cplx s);

 private:
  std::map<Mode, MFMatrix> t_;
  void prune();
};

OperatorExpr left_rep(const ModeFunction& f);
OperatorExpr right_rep(const ModeFunction& h);
OperatorExpr compose(const OperatorExpr& A, const OperatorExpr& B, double theta_def);
OperatorExpr adjoint(const OperatorExpr& A, double theta_def);
// [D, M_h V_r] = -i c(dh) V_r; coefficients must be scalar multipliers.
OperatorExpr dirac_commutator(const OperatorExpr& A, double a);

// Evaluate on a field at x: sum_r C_r(x) (V_r psi)(x).
Vec4 evaluate(const ManifoldParams& p, const OperatorExpr& A, const SpinorField& field, const Point& x,
              double theta_def, Lift lift);

// A applied to psi as a field. Derivatives are exact for Lift::Spin and
// Richardson differences for Lift::Transport.
class OperatorField final : public SpinorField {
 public:
  OperatorField(ManifoldParams p, OperatorExpr A, FieldPtr inner, double theta_def, Lift lift);
  Vec4 value(const Point& x) const override;
  Vec4 d(const Point& x, int i) const override;

 private:
  ManifoldParams p_;
  OperatorExpr A_;
  std::map<Mode, std::array<MFMatrix, 4>> dC_;
  FieldPtr inner_;
  double theta_;
  Lift lift_;
};

}  // namespace nceh
