#pragma once

#include "nceh/core.hpp"
#include "nceh/dirac.hpp"
#include "nceh/modealg.hpp"
#include "nceh/spinbundle.hpp"
#include "nceh/spinor_field.hpp"


namespace nceh {

// Coordinate directions of the Killing circles.
inline constexpr int kPhi = 2;
inline constexpr int kPsi = 3;

// Closed-form transport matrices A(c_3), A(c_4). The closed A(c_4) has its
// 2x2 blocks in the opposite order to omega_4.
Mat4 a_matrix_closed(const ManifoldParams& p, const Point& pt, int direction);
// A(c_k) = omega_k from the frame-derived spin connection.
Mat4 a_matrix(const ManifoldParams& p, const Point& pt, int direction);

struct PropagatorMatrix {
  Mat4 U;
  int direction;
  Point start;
  double dt;
  int steps = 0;
};

double unitarity_defect(const Mat4& U);

// exp(dt A_4) in closed form; A_4 is constant along the psi circle.
PropagatorMatrix transport_psi(const ManifoldParams& p, const Point& pt, double dt);
// Path-ordered solution of dU/dt = A(c_3(t)) U, U(0) = I, by classical RK4.
// The step count doubles (from dt / (2 pi / 256)) until both the change
// between successive refinements and the unitarity defect are <= tol.
PropagatorMatrix transport_phi(const ManifoldParams& p, const Point& pt, double dt, double tol = 1e-8);

enum class Lift : std::uint8_t {
  Transport,  // parallel transport along the Killing circles
  Spin,       // isometry lift exp(1/2 d3 gamma^1 gamma^2) of the torus action
};

struct VData {
  Mat4 U;
  Point pullback;
};

// (V_r psi)(x) = U(x) psi(x + d), d = (0, 0, 2 pi theta r4, -2 pi theta r3).
// Transport: U = P_phi(from phi + d3, -d3) P_psi(-d4) (psi leg first).
VData v_data(const ManifoldParams& p, const Point& x, double theta_def, Mode r, Lift lift, double tol = 1e-8);

// exp(1/2 t gamma^1 gamma^2), diagonal with entries exp(i t c_a / 2), c = (1,-1,-1,1).
Mat4 spin_rotation(double t);
inline constexpr std::array<int, 4> kSpinCharge = {1, -1, -1, 1};

class VField final : public SpinorField {
 public:
  VField(ManifoldParams p, double theta_def, Mode r, Lift lift, FieldPtr inner, double tol = 1e-8);
  Vec4 value(const Point& x) const override;
  Vec4 d(const Point& x, int i) const override;

 private:
  ManifoldParams p_;
  double theta_;
  Mode r_;
  Lift lift_;
  FieldPtr inner_;
  double tol_;
};

// ||(D V_r - V_r D) psi|| at x.
double dirac_v_commutator(const ManifoldParams& p, double theta_def, Mode r, const FieldPtr& field,
                          const Point& x, Lift lift);

// Principal symbol of L_f: sum_r f_r(x) U_r(x) e(theta (r3 xi4 - r4 xi3)).
Mat4 symbol_L(const ManifoldParams& p, const ModeFunction& f, const Point& x, const std::array<double, 4>& xi,
              double theta_def, Lift lift);

}  // namespace nceh
