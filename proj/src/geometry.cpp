#include "nceh/geometry.hpp"

#include <algorithm>

namespace nceh {

namespace {

struct Aux {
  double r, c, s, a4, delta, delta_plus, delta_prime, rho, rho_plus;
};

Aux aux(const ManifoldParams& p, const Point& pt) {
  Aux x{};
  x.r = pt.r;
  x.c = std::cos(pt.theta);
  x.s = std::sin(pt.theta);
  x.a4 = std::pow(p.a, 4);
  const double r2 = x.r * x.r;
  const double r4 = r2 * r2;
  x.delta = 1.0 - x.a4 / r4;
  x.delta_plus = 1.0 + x.a4 / r4;
  x.delta_prime = 4.0 * x.a4 / (r4 * x.r);
  x.rho = (r4 - x.a4 * x.c * x.c) / r2;
  x.rho_plus = (r4 + x.a4 * x.c * x.c) / r2;
  return x;
}

void set_sym(Table3& t, int k, int i, int j, double v) {
  t[k][i][j] = v;
  t[k][j][i] = v;
}

Table3 zero_table() {
  Table3 t{};
  for (auto& a : t)
    for (auto& b : a) b.fill(0.0);
  return t;
}

Table3 closed_table(const ManifoldParams& p, const Point& pt, double g111_factor) {
  require_interior(p, pt);
  const Aux x = aux(p, pt);
  const double r = x.r;
  const double cot = x.c / x.s;
  Table3 t = zero_table();
  set_sym(t, 0, 0, 0, -g111_factor * x.delta_prime / x.delta);
  set_sym(t, 0, 1, 1, -r * x.delta / 4.0);
  set_sym(t, 0, 2, 2, -x.delta * x.rho_plus / (4.0 * r));
  set_sym(t, 0, 2, 3, -r * x.delta_plus * x.delta * x.c / 4.0);
  set_sym(t, 0, 3, 3, -r * x.delta_plus * x.delta / 4.0);
  set_sym(t, 1, 0, 1, 1.0 / r);
  set_sym(t, 1, 2, 2, -x.a4 * std::sin(2.0 * pt.theta) / (2.0 * std::pow(r, 4)));
  set_sym(t, 1, 2, 3, x.delta * x.s / 2.0);
  set_sym(t, 2, 0, 2, 1.0 / r);
  set_sym(t, 2, 1, 2, cot * x.delta_plus / 2.0);
  set_sym(t, 2, 1, 3, -x.delta / (2.0 * x.s));
  set_sym(t, 3, 0, 2, 2.0 * x.a4 * x.c / (r * (std::pow(r, 4) - x.a4)));
  set_sym(t, 3, 0, 3, x.delta_plus / (r * x.delta));
  set_sym(t, 3, 1, 2, -x.rho_plus / (2.0 * r * r * x.s));
  set_sym(t, 3, 1, 3, cot * x.delta / 2.0);
  return t;
}

Table3 to_table(const std::array<Sym4<double>, 4>& g) {
  Table3 t{};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[k][i][j] = g[k][i][j];
  return t;
}

using D1 = Dual<double>;

}  // namespace

void require_interior(const ManifoldParams& p, const Point& pt) {
  p.validate();
  if (!(pt.r > p.a)) throw DegenerateMetric("r must exceed a (Delta vanishes at r = a)");
  if (pt.theta < 0.0 || pt.theta > pi) throw std::domain_error("theta outside [0, pi]");
}

MetricTensor metric(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  const auto g = metric_t<double>(p.a, pt.coords());
  MetricTensor m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.g(i, j) = g[i][j];
  const Aux x = aux(p, pt);
  m.delta = x.delta;
  m.delta_plus = x.delta_plus;
  m.delta_prime = x.delta_prime;
  m.rho = x.rho;
  m.rho_plus = x.rho_plus;
  return m;
}

RMat4 inverse_metric(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  const auto gi = inverse_spd(metric_t<double>(p.a, pt.coords()));
  RMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = gi[i][j];
  return m;
}

Table3 christoffel_closed(const ManifoldParams& p, const Point& pt) {
  return closed_table(p, pt, 1.0);
}

Table3 christoffel_corrected(const ManifoldParams& p, const Point& pt) {
  return closed_table(p, pt, 0.5);
}

Table3 christoffel_from_metric(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  return to_table(christoffel_t<double>(p.a, pt.coords()));
}

const std::vector<SymbolIndex>& christoffel_symbol_list() {
  static const std::vector<SymbolIndex> list = {
      {0, 0, 0, "G^1_11"}, {0, 1, 1, "G^1_22"}, {0, 2, 2, "G^1_33"}, {0, 2, 3, "G^1_34"},
      {0, 3, 3, "G^1_44"}, {1, 0, 1, "G^2_12"}, {1, 2, 2, "G^2_33"}, {1, 2, 3, "G^2_34"},
      {2, 0, 2, "G^3_13"}, {2, 1, 2, "G^3_23"}, {2, 1, 3, "G^3_24"}, {3, 0, 2, "G^4_13"},
      {3, 0, 3, "G^4_14"}, {3, 1, 2, "G^4_23"}, {3, 1, 3, "G^4_24"},
  };
  return list;
}

namespace {

struct Curvature {
  Table3 gamma;
  std::array<Table3, 4> dgamma;  // dgamma[l][k][i][j] = d_l Gamma^k_ij
};

Curvature curvature_data(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  Curvature c{};
  c.gamma = to_table(christoffel_t<double>(p.a, pt.coords()));
  const auto x = pt.coords();
  for (int l = 0; l < 4; ++l) {
    Coords<D1> xs;
    for (int i = 0; i < 4; ++i) xs[i] = D1(x[i], i == l ? 1.0 : 0.0);
    const auto g = christoffel_t<D1>(p.a, xs);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.dgamma[l][k][i][j] = g[k][i][j].d;
  }
  return c;
}

// R^rho_{sigma mu nu}
double riemann(const Curvature& c, int rho, int sig, int mu, int nu) {
  double v = c.dgamma[mu][rho][nu][sig] - c.dgamma[nu][rho][mu][sig];
  for (int l = 0; l < 4; ++l)
    v += c.gamma[rho][mu][l] * c.gamma[l][nu][sig] - c.gamma[rho][nu][l] * c.gamma[l][mu][sig];
  return v;
}

}  // namespace

RMat4 ricci(const ManifoldParams& p, const Point& pt) {
  const Curvature c = curvature_data(p, pt);
  RMat4 ric = RMat4::Zero();
  for (int s = 0; s < 4; ++s)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r) ric(s, n) += riemann(c, r, s, r, n);
  return ric;
}

double riemann_max_abs(const ManifoldParams& p, const Point& pt) {
  const Curvature c = curvature_data(p, pt);
  double m = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int cc = 0; cc < 4; ++cc)
        for (int d = 0; d < 4; ++d) m = std::max(m, std::abs(riemann(c, a, b, cc, d)));
  return m;
}

double scalar_curvature(const ManifoldParams& p, const Point& pt) {
  return (inverse_metric(p, pt).cwiseProduct(ricci(p, pt))).sum();
}

double volume_density(const ManifoldParams& p, const Point& pt) {
  require_interior(p, pt);
  return std::pow(pt.r, 3) * std::abs(std::sin(pt.theta)) / 8.0;
}

double killing_check(const ManifoldParams& p, const Point& pt, int direction) {
  require_interior(p, pt);
  if (direction < 0 || direction > 3) throw std::invalid_argument("direction must be 0..3");
  const auto x = pt.coords();
  Coords<D1> xs;
  for (int i = 0; i < 4; ++i) xs[i] = D1(x[i], i == direction ? 1.0 : 0.0);
  const auto g = metric_t(p.a, xs);
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(g[i][j].d));
  return m;
}

double metric_compatibility(const ManifoldParams& p, const Point& pt, const Table3& gamma) {
  require_interior(p, pt);
  const auto x = pt.coords();
  const auto g = metric_t<double>(p.a, x);
  double m = 0.0;
  for (int k = 0; k < 4; ++k) {
    Coords<D1> xs;
    for (int i = 0; i < 4; ++i) xs[i] = D1(x[i], i == k ? 1.0 : 0.0);
    const auto gd = metric_t(p.a, xs);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double v = gd[i][j].d;
        for (int l = 0; l < 4; ++l) v -= gamma[l][k][i] * g[l][j] + gamma[l][k][j] * g[i][l];
        m = std::max(m, std::abs(v));
      }
  }
  return m;
}

}  // namespace nceh
