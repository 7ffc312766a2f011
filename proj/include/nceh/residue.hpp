#pragma once

#include "nceh/modealg.hpp"

namespace nceh {

// Integral over the Euclidean unit 3-sphere of Q(xi)^{-2} for SPD Q.
// Product Gauss-Legendre in hyperspherical angles after rotating to the
// eigenbasis of Q; each angle is mapped by tan(t) = c tan(s) to spread the
// peak of the anisotropic integrand. The order is raised along 24, 32, 48, 64
// until two successive rules agree to rel_tol, else QuadratureDivergence.
double sphere_quadric_integral(const RMat4& Q, int order = 24, double rel_tol = 1e-9);

// Integral over |xi| = 1 of tr[(g^{ij} xi_i xi_j)^{-2} 1_4].
double cosphere_density(const ManifoldParams& p, const Point& pt, int order = 24);

struct ResidueQuadrature {
  int r_panels = 64;
  int theta_panels = 24;
  int order = 12;
  double r_max_rel = 10.0;  // used when the profile has unbounded support
  double tail_tol = 1e-8;
};

// (2 pi)^2 times the (r, theta) quadrature of f_(0,0) sqrt(det G).
double integral(const ManifoldParams& p, const ModeFunction& f, const ResidueQuadrature& q = {});

// kappa * integral of cosphere_density * f over the coordinate domain.
double wodzicki_residue(const ManifoldParams& p, const ModeFunction& f, double kappa = 4.0,
                        const ResidueQuadrature& q = {}, int sphere_order = 24);

struct TraceConsistency {
  double lhs = 0.0;  // Wres / (4 (2 pi)^4)
  double rhs = 0.0;  // 2 / (2 pi)^2 * integral
  double relerr = 0.0;
};
TraceConsistency trace_theorem_consistency(const ManifoldParams& p, const ModeFunction& f, double kappa = 4.0,
                                           const ResidueQuadrature& q = {});

// Five functions supported in 1.5 a <= r <= 4.5 a; one carries a nonzero mode.
std::vector<ModeFunction> default_residue_corpus(double a);

struct ResidueReport {
  double raw_density = 0.0;  // at the probe point
  double normalized_residue = 0.0;
  double dixmier_value = 0.0;
  double integral = 0.0;
  double kappa = 4.0;
};
ResidueReport residue_report(const ManifoldParams& p, const ModeFunction& f, const Point& probe, double kappa = 4.0,
                             const ResidueQuadrature& q = {});

}  // namespace nceh
