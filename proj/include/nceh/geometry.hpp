#pragma once

#include "nceh/core.hpp"
#include "nceh/dual.hpp"

#include <array>
#include <string>

namespace nceh {

template <class T>
using Coords = std::array<T, 4>;
template <class T>
using Sym4 = std::array<std::array<T, 4>, 4>;

// Eguchi-Hanson metric in (r, theta, phi, psi). Generic in the scalar type so
// that the same closed form feeds the dual-number derivative oracle.
template <class T>
Sym4<T> metric_t(double a, const Coords<T>& x) {
  using std::cos;
  const T& r = x[0];
  const T& th = x[1];
  const double a4 = a * a * a * a;
  const T r2 = r * r;
  const T r4 = r2 * r2;
  const T delta = 1.0 - a4 / r4;
  const T c = cos(th);
  const T rho = (r4 - a4 * c * c) / r2;
  Sym4<T> g{};
  for (auto& row : g)
    for (auto& e : row) e = T(0.0);
  g[0][0] = 1.0 / delta;
  g[1][1] = 0.25 * r2;
  g[2][2] = 0.25 * rho;
  g[2][3] = 0.25 * r2 * delta * c;
  g[3][2] = g[2][3];
  g[3][3] = 0.25 * r2 * delta;
  return g;
}

// Gauss-Jordan inverse without pivoting; intended for SPD input only.
template <class T>
Sym4<T> inverse_spd(Sym4<T> m) {
  Sym4<T> inv{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = T(i == j ? 1.0 : 0.0);
  for (int k = 0; k < 4; ++k) {
    const T p = 1.0 / m[k][k];
    for (int j = 0; j < 4; ++j) {
      m[k][j] = m[k][j] * p;
      inv[k][j] = inv[k][j] * p;
    }
    for (int i = 0; i < 4; ++i) {
      if (i == k) continue;
      const T f = m[i][k];
      for (int j = 0; j < 4; ++j) {
        m[i][j] = m[i][j] - f * m[k][j];
        inv[i][j] = inv[i][j] - f * inv[k][j];
      }
    }
  }
  return inv;
}

// Levi-Civita symbols from exact first derivatives of metric_t.
// Gamma[k][i][j] = Gamma^k_{ij}.
template <class T>
std::array<Sym4<T>, 4> christoffel_t(double a, const Coords<T>& x) {
  std::array<Sym4<T>, 4> dg{};  // dg[l][i][j] = d_l g_ij
  for (int l = 0; l < 4; ++l) {
    Coords<Dual<T>> xs;
    for (int i = 0; i < 4; ++i) xs[i] = Dual<T>(x[i], T(i == l ? 1.0 : 0.0));
    const auto gd = metric_t(a, xs);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dg[l][i][j] = gd[i][j].d;
  }
  const auto ginv = inverse_spd(metric_t(a, x));
  std::array<Sym4<T>, 4> G{};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        T s(0.0);
        for (int l = 0; l < 4; ++l)
          s = s + ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        G[k][i][j] = 0.5 * s;
      }
  return G;
}

struct MetricTensor {
  RMat4 g;
  double delta, delta_plus, delta_prime, rho, rho_plus;
};

void require_interior(const ManifoldParams& p, const Point& pt);

MetricTensor metric(const ManifoldParams& p, const Point& pt);
RMat4 inverse_metric(const ManifoldParams& p, const Point& pt);

// Closed-form reference table. Its Gamma^1_11 = -Delta'/Delta is twice the Levi-Civita value.
Table3 christoffel_closed(const ManifoldParams& p, const Point& pt);
// Closed-form table with Gamma^1_11 = -Delta'/(2 Delta).
Table3 christoffel_corrected(const ManifoldParams& p, const Point& pt);
Table3 christoffel_from_metric(const ManifoldParams& p, const Point& pt);

// Names of the nonzero entries of the closed table, for reporting.
struct SymbolIndex {
  int k, i, j;
  std::string name;
};
const std::vector<SymbolIndex>& christoffel_symbol_list();

// R_{ij} via Riemann contraction; second derivatives from nested duals.
RMat4 ricci(const ManifoldParams& p, const Point& pt);
// Full Riemann R^a_{bcd}, max-abs entry.
double riemann_max_abs(const ManifoldParams& p, const Point& pt);
double scalar_curvature(const ManifoldParams& p, const Point& pt);

double volume_density(const ManifoldParams& p, const Point& pt);

// Max over (i,j) of |(L_X g)_ij| for X the coordinate field d_direction,
// direction in 0..3 (r, theta, phi, psi).
double killing_check(const ManifoldParams& p, const Point& pt, int direction);

// max |nabla_k g_ij| assembled from the supplied table.
double metric_compatibility(const ManifoldParams& p, const Point& pt, const Table3& gamma);

}  // namespace nceh
