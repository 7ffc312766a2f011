#include "nceh/residue.hpp"

#include "nceh/geometry.hpp"
#include "nceh/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <mutex>
#include <tuple>

namespace nceh {

namespace {

struct BaseNode {
  double c, s, w;  // cos, sin and weight of s in [0, pi/2]
};

// Angle x = atan(c tan s): returns (cos x, sin x, dx/ds).
inline std::array<double, 3> mapped(double c, const BaseNode& b) {
  const double d2 = b.c * b.c + c * c * b.s * b.s;
  const double d = std::sqrt(d2);
  return {b.c / d, c * b.s / d, c / d2};
}

// Orthant integral in hyperspherical angles (chi, vartheta, varphi) about the
// eigenbasis. Each angle is mapped with the ratio of the quadratic form's
// coefficients at that nesting level, which flattens the peak.
double orthant_rule(const Eigen::Vector4d& l, int order) {
  std::vector<BaseNode> base;
  for (const auto& [s, w] : composite_rule(0.0, 0.5 * pi, 1, order)) base.push_back({std::cos(s), std::sin(s), w});
  double sum = 0.0;
  for (const auto& bp : base) {
    const auto [cp, sp, jp] = mapped(std::sqrt(l[2] / l[3]), bp);
    const double n = l[2] * cp * cp + l[3] * sp * sp;
    for (const auto& bt : base) {
      const auto [ct, st, jt] = mapped(std::sqrt(l[1] / n), bt);
      const double m = l[1] * ct * ct + n * st * st;
      const double c1 = std::sqrt(l[0] / m);
      double acc = 0.0;
      for (const auto& bx : base) {
        const auto [cx, sx, jx] = mapped(c1, bx);
        const double q = l[0] * cx * cx + m * sx * sx;
        acc += bx.w * jx * sx * sx / (q * q);
      }
      sum += bp.w * jp * bt.w * jt * st * acc;
    }
  }
  return 16.0 * sum;
}

}  // namespace

double sphere_quadric_integral(const RMat4& Q, int order, double rel_tol) {
  if (order < 24) throw std::invalid_argument("sphere quadrature order must be at least 24");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(Q, Eigen::EigenvaluesOnly);
  const Eigen::Vector4d l = es.eigenvalues();
  if (!(l[0] > 0.0)) throw DegenerateMetric("quadric is not positive definite");
  static constexpr std::array<int, 4> menu = {24, 32, 48, 64};
  std::size_t k = 0;
  while (k + 1 < menu.size() && menu[k] < order) ++k;
  if (k + 1 == menu.size()) --k;
  double prev = orthant_rule(l, menu[k]);
  for (++k; k < menu.size(); ++k) {
    const double cur = orthant_rule(l, menu[k]);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw QuadratureDivergence("sphere quadrature did not settle under panel refinement");
}

double cosphere_density(const ManifoldParams& p, const Point& pt, int order) {
  require_interior(p, pt);
  return 4.0 * sphere_quadric_integral(inverse_metric(p, pt), order);
}

namespace {

template <class F>
double radial_angular(const ManifoldParams& p, const ModeFunction& f, const ResidueQuadrature& q, F&& weight) {
  const ModeFunction f0 = f.component(Mode{});
  if (f0.empty()) return 0.0;
  double rmax = f0.support_max();
  const bool bounded = std::isfinite(rmax);
  if (!bounded) rmax = p.a * q.r_max_rel;
  if (rmax <= p.a) return 0.0;
  const auto th = composite_rule(0.0, pi, q.theta_panels, q.order);
  auto slab = [&](double lo, double hi, int panels) {
    double s = 0.0;
    for (const auto& [r, wr] : composite_rule(lo, hi, panels, q.order))
      for (const auto& [t, wt] : th) {
        const Point x(Chart::N, r, t, 0.0, 0.0);
        s += wr * wt * f0.eval_profile(Mode{}, p.a, r, t).real() * weight(x);
      }
    return s;
  };
  const double body = slab(p.a, rmax, q.r_panels);
  if (!bounded) {
    const double tail = slab(rmax, 2.0 * rmax, q.r_panels);
    if (std::abs(tail) > q.tail_tol * std::max(1.0, std::abs(body)))
      throw NonIntegrable("radial tail beyond the quadrature box is not negligible");
  }
  return two_pi * two_pi * body;
}

}  // namespace

double integral(const ManifoldParams& p, const ModeFunction& f, const ResidueQuadrature& q) {
  p.validate();
  return radial_angular(p, f, q, [&](const Point& x) { return volume_density(p, x); });
}

double wodzicki_residue(const ManifoldParams& p, const ModeFunction& f, double kappa, const ResidueQuadrature& q,
                        int sphere_order) {
  p.validate();
  // Densities depend only on (a, r, theta); memoize across calls sharing a grid.
  static std::mutex mu;
  static std::map<std::tuple<double, double, double, int>, double> memo;
  return kappa * radial_angular(p, f, q, [&](const Point& x) {
    const auto key = std::make_tuple(p.a, x.r, x.theta, sphere_order);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    const double d = cosphere_density(p, x, sphere_order);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, d);
    return d;
  });
}

TraceConsistency trace_theorem_consistency(const ManifoldParams& p, const ModeFunction& f, double kappa,
                                           const ResidueQuadrature& q) {
  TraceConsistency t;
  t.lhs = wodzicki_residue(p, f, kappa, q) / (4.0 * std::pow(two_pi, 4));
  t.rhs = 2.0 / (two_pi * two_pi) * integral(p, f, q);
  const double scale = std::max(std::abs(t.lhs), std::abs(t.rhs));
  t.relerr = scale == 0.0 ? 0.0 : std::abs(t.lhs - t.rhs) / scale;
  return t;
}

std::vector<ModeFunction> default_residue_corpus(double a) {
  const ModeFunction bump = ModeFunction::atom(Atom::bump(3.0 * a, 1.5 * a));
  const ModeFunction c2 = ModeFunction::atom(Atom::of(AtomKind::CosT), 2);
  const ModeFunction r1 = ModeFunction::term(1.0 / a, Mode{}, Profile::atom(Atom::of(AtomKind::R)));
  const ModeFunction sd = ModeFunction::atom(Atom::of(AtomKind::SqrtDelta));
  const ModeFunction wave = ModeFunction::exp_mode(1, -1) * cplx(0.7, 0.2);
  return {bump, bump * c2, bump * (r1 + wave), bump * sd * ModeFunction::atom(Atom::of(AtomKind::SinT)),
          bump * bump * (c2 + ModeFunction::constant(0.5))};
}

ResidueReport residue_report(const ManifoldParams& p, const ModeFunction& f, const Point& probe, double kappa,
                             const ResidueQuadrature& q) {
  ResidueReport r;
  r.kappa = kappa;
  r.raw_density = cosphere_density(p, probe);
  r.integral = integral(p, f, q);
  r.normalized_residue = wodzicki_residue(p, f, kappa, q);
  r.dixmier_value = 2.0 / (two_pi * two_pi) * r.integral;
  return r;
}

}  // namespace nceh
