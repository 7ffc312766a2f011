#pragma once

#include "nceh/core.hpp"
#include "nceh/profile.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace nceh {

// Torus mode (m, n) on the half-integer lattice, stored doubled.
struct Mode {
  int m2 = 0;
  int n2 = 0;

  static constexpr Mode whole(int m, int n) { return {2 * m, 2 * n}; }
  double m() const { return 0.5 * m2; }
  double n() const { return 0.5 * n2; }
  bool is_integer() const { return m2 % 2 == 0 && n2 % 2 == 0; }
  bool is_zero() const { return m2 == 0 && n2 == 0; }

  friend Mode operator+(Mode a, Mode b) { return {a.m2 + b.m2, a.n2 + b.n2}; }
  friend Mode operator-(Mode a, Mode b) { return {a.m2 - b.m2, a.n2 - b.n2}; }
  friend Mode operator-(Mode a) { return {-a.m2, -a.n2}; }
  auto operator<=>(const Mode&) const = default;
};

// sigma(r, s) = e(theta (r4 s3 - r3 s4)) with e(x) = exp(2 pi i x). The phase is
// computed from the integer 4 (r4 s3 - r3 s4), so equal lattice data give
// bit-identical phases.
int sigma_quarter_units(Mode r, Mode s);
cplx sigma(Mode r, Mode s, double theta_def);

struct Term {
  Mode mode;
  Profile profile;
  cplx c;
};

class ModeFunction {
 public:
  ModeFunction() = default;

  static ModeFunction constant(cplx c);
  static ModeFunction term(cplx c, Mode m, const Profile& p = Profile::one());
  // e^{i(m phi + n psi)} for integer (m, n).
  static ModeFunction exp_mode(int m, int n);
  static ModeFunction atom(const Atom& a, int e = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_zero(double tol = 0.0) const;
  double max_coeff() const;
  std::vector<Mode> modes() const;
  ModeFunction component(Mode m) const;
  bool is_algebra_valued() const;  // integer modes only

  ModeFunction& operator+=(const ModeFunction& o);
  friend ModeFunction operator+(ModeFunction a, const ModeFunction& b) { return a += b; }
  friend ModeFunction operator-(ModeFunction a, const ModeFunction& b) { return a += b * cplx(-1.0); }
  friend ModeFunction operator-(const ModeFunction& a) { return a * cplx(-1.0); }
  friend ModeFunction operator*(const ModeFunction& a, cplx s);
  friend ModeFunction operator*(cplx s, const ModeFunction& a) { return a * s; }
  // Pointwise (undeformed) product.
  friend ModeFunction operator*(const ModeFunction& a, const ModeFunction& b);
  bool operator==(const ModeFunction& o) const;

  // d/dx^dir for dir in 0..3 = (r, theta, phi, psi).
  ModeFunction derivative(int dir, double a) const;

  cplx eval(double a, double r, double th, double phi, double psi) const;
  cplx eval(double a, const Point& pt) const { return eval(a, pt.r, pt.theta, pt.phi, pt.psi); }
  // Profile part of one mode (no angular phase).
  cplx eval_profile(Mode m, double a, double r, double th) const;

  double support_max() const;

 private:
  std::vector<Term> terms_;  // sorted by (mode, profile); coefficients nonzero
  void add_term(const Term& t);
  friend class ModeFunctionBuilder;
};

// Accumulates terms in a map and canonicalizes once.
class ModeFunctionBuilder {
 public:
  void add(cplx c, Mode m, const Profile& p);
  void add(const ModeFunction& f, cplx scale = 1.0);
  ModeFunction build() const;

 private:
  std::map<std::pair<Mode, Profile>, cplx> acc_;
};

ModeFunction star_product(const ModeFunction& f, const ModeFunction& g, double theta_def);
ModeFunction involution(const ModeFunction& f);

// Oscillatory-integral realization of the deformed product.
struct OscillatorySchedule {
  std::vector<double> eps = {0.04, 0.02, 0.01};
  double box_factor = 6.0;  // L = box_factor / sqrt(eps)
  double quad_tol = 1e-12;
};

// Damped integral over R^2 x R^2 of e^{-eps(|u|^2+|v|^2)} e(r.J'u + s.v + u.v)
// with J' = [[0, theta], [-theta, 0]], box [-L, L]^4.
cplx oscillatory_phase_damped(Mode r, Mode s, double theta_def, double eps, double L, double tol);
// Richardson extrapolation of log(damped phase) to eps -> 0.
cplx oscillatory_phase(Mode r, Mode s, double theta_def, const OscillatorySchedule& sch = {});
ModeFunction oscillatory_product(const ModeFunction& f, const ModeFunction& g, double theta_def,
                                 const OscillatorySchedule& sch = {});

// Local unit: torus-invariant step equal to 1 on r <= n a and 0 on r >= (n+1) a.
ModeFunction local_unit(double n, double a = 1.0);

// Spectral decomposition of sampled data on a uniform (phi, psi) grid.
struct SpectralDecomposition {
  int cutoff = 0;
  std::vector<std::pair<double, double>> nodes;  // (r, theta)
  std::map<Mode, std::vector<cplx>> coeffs;      // per node
  cplx reconstruct(std::size_t node, double phi, double psi) const;
};

// samples[node][i_phi * n_psi + i_psi], angles i * 2 pi / n.
SpectralDecomposition spectral_decompose(const std::vector<std::pair<double, double>>& nodes,
                                         const std::vector<std::vector<cplx>>& samples, int n_phi,
                                         int n_psi, int cutoff);

struct SobolevResult {
  double value = 0.0;
  double tail = 0.0;
  bool integrable = true;
  std::array<double, 3> parts{};  // L2 norms of f, |grad f|, |Hess f|
};

struct QuadratureBox {
  double r_min_rel = 1.0;   // r from a * r_min_rel
  double r_max_rel = 10.0;  // to a * r_max_rel
  int r_panels = 48;
  int theta_panels = 24;
  int order = 16;  // Gauss-Legendre nodes per panel
  double tail_tol = 1e-8;
};

SobolevResult sobolev_norm(const ManifoldParams& p, const ModeFunction& f, int k,
                           const QuadratureBox& box = {});

struct SeminormGrid {
  int n_r = 12;
  int n_theta = 13;
  int n_phi = 8;
  int n_psi = 8;
};

// max over grid points and charts of |h_chart d^alpha f|, |alpha| <= m,
// h_N = cos^2(theta/2), h_S = sin^2(theta/2).
double seminorm_q(const ManifoldParams& p, const ModeFunction& f, int m,
                  const SeminormGrid& grid = {}, const SamplingBox& box = {});

}  // namespace nceh
