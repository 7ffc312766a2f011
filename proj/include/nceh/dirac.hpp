#pragma once

#include "nceh/core.hpp"
#include "nceh/modealg.hpp"
#include "nceh/spinbundle.hpp"
#include "nceh/spinor_field.hpp"

namespace nceh {

// Geometric data reused by every Dirac evaluation at one point.
struct DiracFrame {
  std::array<Mat4, 4> gam;    // gamma^j(x) = h~^j_beta gamma^beta
  std::array<Mat4, 4> omega;  // omega_j
};

DiracFrame dirac_frame(const ManifoldParams& p, const Point& x);

// D psi = -i gamma^j (d_j psi - omega_j psi).
Vec4 apply_dirac(const ManifoldParams& p, const SpinorField& field, const Point& x);
Vec4 apply_dirac(const DiracFrame& fr, const SpinorField& field, const Point& x);

// The field D psi; derivatives by Richardson differences.
FieldPtr dirac_field(const ManifoldParams& p, FieldPtr psi);

// ||(D J - J D) psi|| at x for J = C o conj (default: the charge conjugation).
double dirac_j_commutator(const ManifoldParams& p, const FieldPtr& field, const Point& x,
                          const Mat4& C = charge_conjugation_matrix());
// ||(chi D + D chi) psi|| at x.
double dirac_chi_anticommutator(const ManifoldParams& p, const FieldPtr& field, const Point& x);

// [D, M_f] psi at x.
Vec4 multiplier_commutator(const ManifoldParams& p, const ModeFunction& f, const FieldPtr& field, const Point& x);
// c(df)(x) = sum_j d_j f gamma^j(x).
Mat4 clifford_differential(const ManifoldParams& p, const ModeFunction& f, const Point& x);

// (gamma^j xi_j)^2. With the gammas squaring to -1 this is -g^{ij} xi_i xi_j.
Mat4 symbol_d_squared(const ManifoldParams& p, const Point& x, const std::array<double, 4>& xi);

}  // namespace nceh
