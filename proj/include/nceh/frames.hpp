#pragma once

#include "nceh/core.hpp"
#include "nceh/dual.hpp"
#include "nceh/geometry.hpp"

namespace nceh {

// Points always carry the global angles (theta, phi) of chart N; the chart tag
// selects the trivialization. Chart S uses the same construction in the
// coordinates theta' = pi - theta, phi' = -phi, psi' = psi.

// Chart-N coframe h^alpha_i (rows alpha, columns r, theta, phi, psi).
template <class T>
Sym4<T> coframe_t(double a, const Coords<T>& x) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T& r = x[0];
  const T& th = x[1];
  const T& ph = x[2];
  const double a4 = a * a * a * a;
  const T r2 = r * r;
  const T sd = sqrt(1.0 - a4 / (r2 * r2));
  const T hr = 0.5 * r;
  Sym4<T> h{};
  for (auto& row : h)
    for (auto& e : row) e = T(0.0);
  h[0][1] = -hr * cos(ph);
  h[0][2] = -hr * sin(th) * sin(ph);
  h[1][1] = hr * sin(ph);
  h[1][2] = -hr * sin(th) * cos(ph);
  h[2][2] = hr * sd * cos(th);
  h[2][3] = hr * sd;
  h[3][0] = 1.0 / sd;
  return h;
}

struct CoframeMatrix {
  RMat4 H;     // H(alpha, i) = h^alpha_i
  RMat4 Hinv;  // Hinv(i, alpha) = h~^i_alpha
};

struct TransitionSO4 {
  RMat4 F_SN;
  RMat4 F_NS;
};

cplx stereo(const Point& pt);

// Coframe of the point's chart, expressed in the global coordinate basis.
CoframeMatrix coframe(const ManifoldParams& p, const Point& pt);
// Closed-form inverse of the chart-N coframe.
RMat4 coframe_inverse_closed(const ManifoldParams& p, const Point& pt);
// d_i h^alpha_j for chart N, indexed [i](alpha, j).
std::array<RMat4, 4> coframe_derivatives(const ManifoldParams& p, const Point& pt);

// Rotation by 2 phi + pi in the (1,2) block.
TransitionSO4 cotangent_transition(const Point& pt);
// F_SN reconstructed from both coframes at the same point: H_S H_N^{-1}.
RMat4 transition_from_coframes(const ManifoldParams& p, const Point& pt);

}  // namespace nceh
