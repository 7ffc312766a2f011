#pragma once

#include "nceh/core.hpp"
#include "nceh/frames.hpp"

namespace nceh {

struct GammaSet {
  std::array<Mat4, 4> g;  // gamma^1..gamma^4 as g[0..3]
  Mat4 chi;               // gamma^1 gamma^2 gamma^3 gamma^4
};

const GammaSet& gamma_set();

struct SpinTransition {
  Mat4 P;
  Mat4 Q;
};

// P = diag(-i e^{i phi}, i e^{-i phi}, i e^{-i phi}, -i e^{i phi}), Q = P^{-1}.
SpinTransition spin_transition(const Point& pt);
SpinTransition spin_transition_phi(double phi);

// (s+, s-) -> (-conj s-, conj s+) in the block order (components 1,2 | 3,4).
Vec4 charge_conjugation(const Vec4& s);
// gamma^1 gamma^3 composed with complex conjugation.
Vec4 real_structure(const Vec4& s);
// Constant matrices C with J s = C conj(s).
Mat4 charge_conjugation_matrix();
Mat4 real_structure_matrix();

// Spin connection tables t[beta][i][alpha] = Gamma~^beta_{i alpha}.
// Closed-form list (contains Gamma~^3_22 = +1/2 sqrt(Delta) cos phi).
Table3 spin_connection_closed(const ManifoldParams& p, const Point& pt);
// Gamma~^beta_{i alpha} = h~^j_alpha (h^beta_k Gamma^k_ij - d_i h^beta_j), chart N.
Table3 spin_connection_from_frame(const ManifoldParams& p, const Point& pt);
double spin_connection_antisymmetry(const Table3& t);

// omega_i = 1/4 Gamma~^beta_{i alpha} gamma^alpha gamma_beta (frame-derived table).
Mat4 omega(const ManifoldParams& p, const Point& pt, int i);
Mat4 omega_from_table(const Table3& t, int i);

// gamma^j(x) = h~^j_beta gamma^beta for the chart-N frame.
std::array<Mat4, 4> coordinate_gammas(const ManifoldParams& p, const Point& pt);

}  // namespace nceh
