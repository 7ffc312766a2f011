#pragma once

#include "nceh/core.hpp"
#include "nceh/modealg.hpp"

namespace nceh {

struct PatchFunctions {
  double h_N, h_S, k_N, k_S;
};

// h_N = cos^2(theta/2), k_N = cos^2((pi/2) sin^2(theta/2)); S versions are the
// complements. k_N is set to exactly 0 at theta = pi.
PatchFunctions patch_functions(double theta);

// [[k_N 1, k_N P], [k_S Q, k_S 1]]; the P/Q blocks are zero where their
// k-factor vanishes, including at the poles.
Mat8 projection_matrix(const Point& pt);
// [[k_N 1, s P], [s Q, k_S 1]] with s = sqrt(k_N k_S) = cos u sin u.
Mat8 projection_hermitian(const Point& pt);

// Entries of the projection as mode functions (8x8 row-major).
std::array<ModeFunction, 64> projection_entries();
// max over points of |(p x_theta p - p)_{ij}(x)|.
double deformed_idempotency_residual(double theta_def, const std::vector<Point>& pts);

struct RoundTrip {
  double residual = 0.0;
  Vec4 A, B;  // module coordinates
};

// Section (psi on N, psi' on S) at an overlap point, with psi' = Q psi.
RoundTrip module_roundtrip(const Vec4& psi_n, const Vec4& psi_s, const Point& pt, double consistency_tol = 1e-10);

}  // namespace nceh
