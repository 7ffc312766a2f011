#include "nceh/suites.hpp"

#include "nceh/dirac.hpp"
#include "nceh/frames.hpp"
#include "nceh/geometry.hpp"
#include "nceh/hochschild.hpp"
#include "nceh/modealg.hpp"
#include "nceh/opalg.hpp"
#include "nceh/projmod.hpp"
#include "nceh/residue.hpp"
#include "nceh/spinbundle.hpp"
#include "nceh/transport.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace nceh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// FNV-1a, so per-check random streams do not depend on scheduling.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (const unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Check make_check(std::string id, int crit, std::string anchor, double residual, double tol, bool gating = true,
                 std::string note = {}) {
  Check c;
  c.id = std::move(id);
  c.criterion = crit;
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.tolerance = tol;
  c.pass = std::isfinite(residual) && residual <= tol;
  c.gating = gating;
  c.note = std::move(note);
  return c;
}

std::vector<Point> sample_points(const ManifoldParams& p, std::uint64_t seed, const std::string& id, int n,
                                 Chart chart = Chart::N) {
  std::mt19937_64 rng(stream_seed(seed, id));
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) pts.push_back(random_interior_point(p, rng, {}, chart));
  return pts;
}

ModeFunction random_mode_function(std::mt19937_64& rng, int max_mode, int n_terms, double a, bool compact) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(-max_mode, max_mode);
  std::uniform_int_distribution<int> pick(0, 5);
  ModeFunctionBuilder b;
  for (int t = 0; t < n_terms; ++t) {
    Profile pr;
    switch (pick(rng)) {
      case 0: break;
      case 1: pr = Profile::atom(Atom::of(AtomKind::R), -1); break;
      case 2: pr = Profile::atom(Atom::of(AtomKind::SinT)); break;
      case 3: pr = Profile::atom(Atom::of(AtomKind::CosT)) * Profile::atom(Atom::of(AtomKind::R), -2); break;
      case 4: pr = Profile::atom(Atom::of(AtomKind::SqrtDelta)); break;
      default: pr = Profile::atom(Atom::of(AtomKind::R)) * Profile::atom(Atom::of(AtomKind::SinT), 2); break;
    }
    if (compact) pr = pr * Profile::atom(Atom::bump(3.0 * a, 1.5 * a));
    b.add(cplx(coef(rng), coef(rng)), Mode::whole(mode(rng), mode(rng)), pr);
  }
  return b.build();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string table_name(int b, int i, int a) {
  return "Gt^" + std::to_string(b + 1) + "_" + std::to_string(i + 1) + std::to_string(a + 1);
}

// ------------------------------------------------------------------ criterion 1
std::vector<Check> c1(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  const auto pts = sample_points(p, cfg.seed, "c1", 100);
  const auto& list = christoffel_symbol_list();
  std::vector<double> diff(list.size(), 0.0), diff_corr(list.size(), 0.0);
  for (const auto& x : pts) {
    const Table3 closed = christoffel_closed(p, x);
    const Table3 corr = christoffel_corrected(p, x);
    const Table3 oracle = christoffel_from_metric(p, x);
    for (std::size_t s = 0; s < list.size(); ++s) {
      const auto& e = list[s];
      diff[s] = std::max(diff[s], std::abs(closed[e.k][e.i][e.j] - oracle[e.k][e.i][e.j]));
      diff_corr[s] = std::max(diff_corr[s], std::abs(corr[e.k][e.i][e.j] - oracle[e.k][e.i][e.j]));
    }
  }
  std::vector<Check> out;
  const double tol = cfg.tolerance("christoffel");
  for (std::size_t s = 0; s < list.size(); ++s)
    out.push_back(make_check("c1.christoffel." + list[s].name, 1, "metric.christoffel_table", diff[s], tol));
  double worst_corr = 0.0;
  for (double d : diff_corr) worst_corr = std::max(worst_corr, d);
  out.push_back(make_check("c1.christoffel.corrected_table", 1, "metric.christoffel_table", worst_corr, tol, false,
                           "table with G^1_11 = -Delta'/(2 Delta)"));
  // The closed table must also be metric compatible to be a Levi-Civita table.
  double compat = 0.0;
  for (const auto& x : pts) compat = std::max(compat, metric_compatibility(p, x, christoffel_from_metric(p, x)));
  out.push_back(
      make_check("c1.oracle.metric_compatibility", 1, "metric.christoffel_table", compat, tol, false));
  return out;
}

// ------------------------------------------------------------------ criterion 2
std::vector<Check> c2(const RunConfig& cfg) {
  std::vector<Check> out;
  const double tol = cfg.tolerance("curvature");
  for (const double a : {0.5, 1.0, 2.0}) {
    const ManifoldParams p{a};
    const std::string id = "c2.ricci.a=" + fmt(a);
    double worst = 0.0, riem = 0.0;
    for (const auto& x : sample_points(p, cfg.seed, id, 50)) {
      worst = std::max(worst, max_abs(ricci(p, x)));
      riem = std::max(riem, riemann_max_abs(p, x));
    }
    out.push_back(make_check(id, 2, "metric.ricci_flat", worst, tol, true, "max |Riemann| " + fmt(riem)));
  }
  const ManifoldParams p{cfg.a};
  double kill = 0.0;
  for (const auto& x : sample_points(p, cfg.seed, "c2.killing", 20))
    kill = std::max({kill, killing_check(p, x, 2), killing_check(p, x, 3)});
  out.push_back(make_check("c2.killing.phi_psi", 2, "metric.torus_action", kill, cfg.tolerance("derivative"), false));
  return out;
}

// ------------------------------------------------------------------ criterion 3
std::vector<Check> c3(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  double frame = 0.0, fco = 0.0, pq = 0.0, fmatch = 0.0;
  for (const Chart ch : {Chart::N, Chart::S}) {
    for (const auto& x : sample_points(p, cfg.seed, ch == Chart::N ? "c3.N" : "c3.S", 100, ch)) {
      const CoframeMatrix h = coframe(p, x);
      frame = std::max(frame, max_abs(h.H.transpose() * h.H - metric(p, x).g));
      const TransitionSO4 f = cotangent_transition(x);
      fco = std::max({fco, max_abs(f.F_SN * f.F_NS - RMat4::Identity()), max_abs(f.F_NS * f.F_SN - RMat4::Identity())});
      const SpinTransition s = spin_transition(x);
      pq = std::max({pq, max_abs(s.P * s.Q - Mat4::Identity()), max_abs(s.Q * s.P - Mat4::Identity())});
      fmatch = std::max(fmatch, max_abs(transition_from_coframes(p, x) - f.F_SN));
    }
  }
  std::vector<Check> out;
  out.push_back(make_check("c3.frame.HtH=G", 3, "frames.coframe", frame, cfg.tolerance("frame")));
  out.push_back(make_check("c3.cocycle.F_SN_F_NS", 3, "frames.cotangent_transition", fco, cfg.tolerance("cocycle")));
  out.push_back(make_check("c3.cocycle.P_Q", 3, "spinbundle.spin_transition", pq, cfg.tolerance("cocycle")));
  out.push_back(make_check("c3.transition.from_coframes", 3, "frames.cotangent_transition", fmatch,
                           cfg.tolerance("frame"), false, "H_S H_N^{-1} against the closed rotation"));
  return out;
}

// ------------------------------------------------------------------ criterion 4
std::vector<Check> c4(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  const auto pts = sample_points(p, cfg.seed, "c4", 100);
  double diff[4][4][4] = {};
  bool used[4][4][4] = {};
  double anti_closed = 0.0, anti_frame = 0.0;
  for (const auto& x : pts) {
    const Table3 c = spin_connection_closed(p, x);
    const Table3 f = spin_connection_from_frame(p, x);
    anti_closed = std::max(anti_closed, spin_connection_antisymmetry(c));
    anti_frame = std::max(anti_frame, spin_connection_antisymmetry(f));
    for (int b = 0; b < 4; ++b)
      for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 4; ++a) {
          diff[b][i][a] = std::max(diff[b][i][a], std::abs(c[b][i][a] - f[b][i][a]));
          used[b][i][a] = used[b][i][a] || c[b][i][a] != 0.0 || std::abs(f[b][i][a]) > 1e-14;
        }
  }
  std::vector<Check> out;
  const double tol = cfg.tolerance("spin_connection");
  double rest = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int i = 0; i < 4; ++i)
      for (int a = b + 1; a < 4; ++a) {
        // One check per antisymmetric pair (beta < alpha); the transpose is covered by antisymmetry.
        if (used[b][i][a] || used[a][i][b])
          out.push_back(make_check("c4.spin_connection." + table_name(b, i, a) + "/" + table_name(a, i, b), 4, "spinbundle.spin_connection_list",
                                   std::max(diff[b][i][a], diff[a][i][b]), tol));
        else
          rest = std::max({rest, diff[b][i][a], diff[a][i][b]});
      }
  out.push_back(make_check("c4.spin_connection.zero_entries", 4, "spinbundle.spin_connection_list", rest, tol));
  out.push_back(make_check("c4.antisymmetry.closed_list", 4, "spinbundle.spin_connection_list", anti_closed, tol));
  out.push_back(make_check("c4.antisymmetry.frame_formula", 4, "spinbundle.spin_connection_formula", anti_frame, tol));
  return out;
}

// ------------------------------------------------------------------ criterion 5
std::vector<Check> c5(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  const auto corpus = spinor_corpus(cfg.a, cfg.seed, 10);
  double chi = 0.0, dj = 0.0, djr = 0.0, mc = 0.0;
  std::mt19937_64 rng(stream_seed(cfg.seed, "c5.f"));
  std::vector<ModeFunction> fs;
  for (int k = 0; k < 3; ++k) fs.push_back(random_mode_function(rng, 2, 3, cfg.a, k == 2));
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const FieldPtr psi = corpus[n];
    for (const auto& x : sample_points(p, cfg.seed, "c5.field" + std::to_string(n), 5)) {
      chi = std::max(chi, dirac_chi_anticommutator(p, psi, x));
      dj = std::max(dj, dirac_j_commutator(p, psi, x));
      djr = std::max(djr, dirac_j_commutator(p, psi, x, real_structure_matrix()));
      for (const auto& f : fs) {
        const Vec4 lhs = multiplier_commutator(p, f, psi, x);
        const Vec4 rhs = -I * clifford_differential(p, f, x) * psi->value(x);
        mc = std::max(mc, (lhs - rhs).norm());
      }
    }
  }
  const double tol = cfg.tolerance("dirac");
  return {
      make_check("c5.chirality.anticommutes", 5, "dirac.grading", chi, tol),
      make_check("c5.real_structure.commutes", 5, "dirac.real_structure", dj, tol, true,
                 "block-swapping charge conjugation J"),
      make_check("c5.multiplier.commutator", 5, "dirac.first_order", mc, tol),
      make_check("c5.real_structure.gamma1gamma3", 5, "dirac.real_structure", djr, tol, false,
                 "J' = gamma^1 gamma^3 o conj"),
  };
}

// ------------------------------------------------------------------ criterion 6
std::vector<Check> c6(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  std::vector<Check> out;
  std::mt19937_64 rng(stream_seed(cfg.seed, "c6"));
  std::uniform_real_distribution<double> udt(-two_pi, two_pi);
  double unit = 0.0;
  for (const auto& x : sample_points(p, cfg.seed, "c6.unitarity", 10)) {
    unit = std::max(unit, unitarity_defect(transport_phi(p, x, udt(rng), cfg.tolerance("unitarity")).U));
    unit = std::max(unit, unitarity_defect(transport_psi(p, x, udt(rng)).U));
  }
  out.push_back(make_check("c6.propagator.unitarity", 6, "transport.propagator", unit, cfg.tolerance("unitarity")));

  double hol = 0.0, hol_closed = 0.0;
  for (const double rr : {1.5, 2.0, 3.0, 5.0}) {
    const Point x(Chart::N, rr * cfg.a, 1.1, 0.4, 0.0);
    const double eps = std::pow(cfg.a / x.r, 4);
    Mat4 expected = Mat4::Zero();
    expected(0, 0) = std::polar(1.0, -pi * eps);
    expected(1, 1) = std::polar(1.0, pi * eps);
    expected(2, 2) = -1.0;
    expected(3, 3) = -1.0;
    hol = std::max(hol, max_abs(transport_psi(p, x, two_pi).U - expected));
    hol_closed = std::max(hol_closed, max_abs((two_pi * a_matrix_closed(p, x, kPsi)).exp() - expected));
  }
  out.push_back(make_check("c6.holonomy.psi_loop", 6, "transport.psi_holonomy", hol, cfg.tolerance("holonomy"), true,
                           "connection-derived A_4"));
  out.push_back(make_check("c6.holonomy.psi_loop_closed_A4", 6, "transport.psi_holonomy", hol_closed,
                           cfg.tolerance("holonomy"), false, "exponential of the closed A_4"));

  const auto corpus = spinor_corpus(cfg.a, cfg.seed, 3);
  const double th = cfg.theta;
  std::uniform_int_distribution<int> md(-2, 2);
  for (const Lift lift : {Lift::Transport, Lift::Spin}) {
    const bool gating = lift == Lift::Transport;
    const std::string tag = gating ? "transport_lift" : "spin_lift";
    double group = 0.0, exch = 0.0, dv = 0.0;
    for (std::size_t n = 0; n < corpus.size(); ++n) {
      const FieldPtr psi = corpus[n];
      for (const auto& x : sample_points(p, cfg.seed, "c6.v" + std::to_string(n), 3)) {
        const Mode r = Mode::whole(md(rng), md(rng));
        const Mode s = Mode::whole(md(rng), md(rng));
        const VField vs(p, th, s, lift, psi);
        const VField vrs(p, th, r, lift, std::make_shared<VField>(p, th, s, lift, psi));
        const VField vsum(p, th, r + s, lift, psi);
        group = std::max(group, (vrs.value(x) - vsum.value(x)).norm());

        const ModeFunction h = ModeFunction::exp_mode(s.m2 / 2, s.n2 / 2) *
                               ModeFunction::atom(Atom::of(AtomKind::SinT));
        const FieldPtr hpsi = std::make_shared<ScalarTimesField>(cfg.a, h, psi);
        const Vec4 lhs = VField(p, th, r, lift, hpsi).value(x);
        const Vec4 rhs = sigma(r, s, th) * h.eval(cfg.a, x) * VField(p, th, r, lift, psi).value(x);
        exch = std::max(exch, (lhs - rhs).norm());

        dv = std::max(dv, dirac_v_commutator(p, th, r, psi, x, lift));
      }
    }
    out.push_back(make_check("c6.v.group_law." + tag, 6, "transport.isometry_lift", group,
                             cfg.tolerance("transport_eval"), gating));
    out.push_back(make_check("c6.v.exchange." + tag, 6, "transport.isometry_lift", exch,
                             cfg.tolerance("transport_eval"), gating));
    out.push_back(make_check("c6.v.dirac_commutator." + tag, 6, "transport.isometry_lift", dv,
                             cfg.tolerance("transport_dv"), gating));
  }
  return out;
}

// ------------------------------------------------------------------ criterion 7
std::vector<Check> c7(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  const double th = cfg.theta;
  std::vector<Check> out;
  std::mt19937_64 rng(stream_seed(cfg.seed, "c7"));
  double assoc = 0.0;
  for (int k = 0; k < 6; ++k) {
    const ModeFunction f = random_mode_function(rng, 2, 3, cfg.a, false);
    const ModeFunction g = random_mode_function(rng, 2, 3, cfg.a, false);
    const ModeFunction h = random_mode_function(rng, 2, 3, cfg.a, false);
    const ModeFunction d = star_product(star_product(f, g, th), h, th) - star_product(f, star_product(g, h, th), th);
    assoc = std::max(assoc, d.max_coeff());
  }
  out.push_back(make_check("c7.star.associativity", 7, "modealg.deformed_product", assoc, cfg.tolerance("algebra")));

  const int N = cfg.modes;
  double osc = 0.0, swap = 0.0;
  std::string worst_pair;
  for (int r3 = -N; r3 <= N; ++r3)
    for (int r4 = -N; r4 <= N; ++r4)
      for (int s3 = -N; s3 <= N; ++s3)
        for (int s4 = -N; s4 <= N; ++s4) {
          const Mode r = Mode::whole(r3, r4), s = Mode::whole(s3, s4);
          swap = std::max(swap, std::abs(sigma(r, s, th) - sigma(-s, r, th)));
          double d;
          try {
            d = std::abs(oscillatory_phase(r, s, th) - sigma(r, s, th));
          } catch (const QuadratureDivergence&) {
            d = kInf;
          }
          if (!(d <= osc)) {
            osc = d;
            worst_pair = "r=(" + std::to_string(r3) + "," + std::to_string(r4) + ") s=(" + std::to_string(s3) + "," +
                         std::to_string(s4) + ")";
          }
        }
  out.push_back(make_check("c7.oscillatory.mode_formula", 7, "modealg.oscillatory_integral", osc,
                           cfg.tolerance("oscillatory"), true, "worst at " + worst_pair));
  out.push_back(make_check("c7.sigma.swap_symmetry", 7, "modealg.sigma", swap, 0.0));

  // Local units: phi_n x f = f = f x phi_n exactly when f is supported in r <= n a.
  double unit = 0.0;
  for (int k = 0; k < 5; ++k) {
    const ModeFunction f = random_mode_function(rng, 2, 3, cfg.a, true);
    const double n = std::ceil(f.support_max() / cfg.a);
    const ModeFunction u = local_unit(n, cfg.a);
    unit = std::max({unit, (star_product(u, f, th) - f).max_coeff(), (star_product(f, u, th) - f).max_coeff()});
  }
  out.push_back(make_check("c7.local_unit.absorption", 7, "modealg.local_units", unit, 0.0));

  // Evaluable utilities: Sobolev norm of a compact function, seminorms, spectral round trip.
  const ModeFunction fc = random_mode_function(rng, 1, 2, cfg.a, true);
  const SobolevResult sob = sobolev_norm(p, fc, 2);
  out.push_back(make_check("c7.sobolev.finite", 7, "modealg.sobolev_norm", sob.integrable ? 0.0 : kInf, 0.0, false,
                           "H^2 norm " + fmt(sob.value)));
  SeminormGrid sg{cfg.grid.n_r, cfg.grid.n_theta, cfg.grid.n_phi, cfg.grid.n_psi};
  const double q0 = seminorm_q(p, fc, 0, sg), q1 = seminorm_q(p, fc, 1, sg);
  out.push_back(make_check("c7.seminorm.monotone", 7, "modealg.seminorms", q0 <= q1 ? 0.0 : q0 - q1, 0.0, false,
                           "q0 " + fmt(q0) + " q1 " + fmt(q1)));
  {
    const ModeFunction g = random_mode_function(rng, std::min(N, 2), 4, cfg.a, false);
    std::vector<std::pair<double, double>> nodes = {{2.0 * cfg.a, 0.7}, {4.0 * cfg.a, 2.1}};
    std::vector<std::vector<cplx>> samples;
    for (const auto& [r, t] : nodes) {
      std::vector<cplx> row;
      for (int i = 0; i < cfg.grid.n_phi; ++i)
        for (int j = 0; j < cfg.grid.n_psi; ++j)
          row.push_back(g.eval(cfg.a, r, t, two_pi * i / cfg.grid.n_phi, two_pi * j / cfg.grid.n_psi));
      samples.push_back(std::move(row));
    }
    const auto sd = spectral_decompose(nodes, samples, cfg.grid.n_phi, cfg.grid.n_psi, std::min(N, 2));
    double err = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      err = std::max(err, std::abs(sd.reconstruct(k, 0.3, 1.7) - g.eval(cfg.a, nodes[k].first, nodes[k].second, 0.3, 1.7)));
    out.push_back(make_check("c7.spectral.round_trip", 7, "modealg.spectral", err, cfg.tolerance("derivative"), false));
  }
  return out;
}

// ------------------------------------------------------------------ criterion 8
std::vector<Check> c8(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  const double th = cfg.theta;
  std::vector<Check> out;
  std::mt19937_64 rng(stream_seed(cfg.seed, "c8"));
  double lprod = 0.0, lr = 0.0, dlr = 0.0;
  std::vector<std::array<ModeFunction, 3>> triples;
  for (int k = 0; k < 4; ++k) {
    const ModeFunction f = random_mode_function(rng, 2, 2, cfg.a, false);
    const ModeFunction g = random_mode_function(rng, 2, 2, cfg.a, false);
    const ModeFunction h = random_mode_function(rng, 2, 2, cfg.a, false);
    triples.push_back({f, g, h});
    const OperatorExpr Lf = left_rep(f), Lg = left_rep(g), Rh = right_rep(h);
    lprod = std::max(lprod, (left_rep(star_product(f, g, th)) - compose(Lf, Lg, th)).max_coeff());
    lr = std::max(lr, (compose(Lf, Rh, th) - compose(Rh, Lf, th)).max_coeff());
    const OperatorExpr dL = dirac_commutator(Lf, cfg.a);
    dlr = std::max(dlr, (compose(dL, Rh, th) - compose(Rh, dL, th)).max_coeff());
  }
  const double atol = cfg.tolerance("algebra");
  out.push_back(make_check("c8.coefficient.L_product", 8, "opalg.left_representation", lprod, atol));
  out.push_back(make_check("c8.coefficient.L_R_commute", 8, "opalg.reality", lr, atol));
  out.push_back(make_check("c8.coefficient.first_order", 8, "opalg.first_order", dlr, atol));

  const auto corpus = spinor_corpus(cfg.a, cfg.seed, 2);
  for (const Lift lift : {Lift::Transport, Lift::Spin}) {
    const bool gating = lift == Lift::Transport;
    const std::string tag = gating ? "transport_lift" : "spin_lift";
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (std::size_t n = 0; n < corpus.size(); ++n) {
      const FieldPtr psi = corpus[n];
      const auto& [f, g, h] = triples[n];
      const OperatorExpr Lf = left_rep(f), Lg = left_rep(g), Rh = right_rep(h);
      const auto fld = [&](const OperatorExpr& A, FieldPtr in) {
        return std::make_shared<OperatorField>(p, A, std::move(in), th, lift);
      };
      for (const auto& x : sample_points(p, cfg.seed, "c8.x" + std::to_string(n), 2)) {
        const Vec4 a1 = evaluate(p, left_rep(star_product(f, g, th)), *psi, x, th, lift);
        const Vec4 a2 = evaluate(p, Lf, *fld(Lg, psi), x, th, lift);
        e1 = std::max(e1, (a1 - a2).norm());

        const Vec4 b1 = evaluate(p, Lf, *fld(Rh, psi), x, th, lift);
        const Vec4 b2 = evaluate(p, Rh, *fld(Lf, psi), x, th, lift);
        e2 = std::max(e2, (b1 - b2).norm());

        // [[D, L_f], R_h] psi = D L R psi - L D R psi - R D L psi + R L D psi.
        const FieldPtr dpsi = dirac_field(p, psi);
        const Vec4 t1 = apply_dirac(p, *fld(Lf, fld(Rh, psi)), x);
        const Vec4 t2 = evaluate(p, Lf, *dirac_field(p, fld(Rh, psi)), x, th, lift);
        const Vec4 t3 = evaluate(p, Rh, *dirac_field(p, fld(Lf, psi)), x, th, lift);
        const Vec4 t4 = evaluate(p, Rh, *fld(Lf, dpsi), x, th, lift);
        e3 = std::max(e3, (t1 - t2 - t3 + t4).norm());
      }
    }
    const double stol = cfg.tolerance("transport_eval");
    out.push_back(make_check("c8.spinor.L_product." + tag, 8, "opalg.left_representation", e1, stol, gating));
    out.push_back(make_check("c8.spinor.L_R_commute." + tag, 8, "opalg.reality", e2, stol, gating));
    out.push_back(make_check("c8.spinor.first_order." + tag, 8, "opalg.first_order", e3, stol, gating));
  }
  return out;
}

// ------------------------------------------------------------------ criterion 9
std::vector<Check> c9(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  auto pts = sample_points(p, cfg.seed, "c9", 98);
  pts.emplace_back(Chart::N, 2.0 * cfg.a, 0.0, 0.5, 0.0);
  pts.emplace_back(Chart::N, 2.0 * cfg.a, pi, 0.5, 0.0);
  double idem = 0.0, herm = 0.0, tr = 0.0, hidem = 0.0, hherm = 0.0;
  for (const auto& x : pts) {
    const Mat8 pm = projection_matrix(x);
    idem = std::max(idem, max_abs(pm * pm - pm));
    herm = std::max(herm, max_abs(pm - pm.adjoint()));
    tr = std::max(tr, std::abs(pm.trace() - 4.0));
    const Mat8 ph = projection_hermitian(x);
    hidem = std::max(hidem, max_abs(ph * ph - ph));
    hherm = std::max(hherm, max_abs(ph - ph.adjoint()));
  }
  std::mt19937_64 rng(stream_seed(cfg.seed, "c9.sections"));
  std::normal_distribution<double> nd;
  double rt = 0.0;
  for (const auto& x : pts) {
    Vec4 psi;
    for (int k = 0; k < 4; ++k) psi(k) = cplx(nd(rng), nd(rng));
    const Vec4 psi_s = spin_transition_phi(x.phi).Q * psi;
    rt = std::max(rt, module_roundtrip(psi, psi_s, x).residual);
  }
  std::vector<Point> few(pts.begin(), pts.begin() + 20);
  const double deformed = deformed_idempotency_residual(cfg.theta, few);
  const double ptol = cfg.tolerance("projection");
  return {
      make_check("c9.projection.idempotent", 9, "projmod.projection", idem, ptol),
      make_check("c9.projection.selfadjoint", 9, "projmod.projection", herm, ptol),
      make_check("c9.projection.trace", 9, "projmod.projection", tr, ptol),
      make_check("c9.section.round_trip", 9, "projmod.module_section", rt, cfg.tolerance("roundtrip")),
      make_check("c9.projection_hermitian.idempotent", 9, "projmod.projection", hidem, ptol, false),
      make_check("c9.projection_hermitian.selfadjoint", 9, "projmod.projection", hherm, ptol, false),
      make_check("c9.projection.deformed_idempotent", 9, "projmod.projection", deformed, cfg.tolerance("algebra"), false),
  };
}

// ------------------------------------------------------------------ criterion 10
std::vector<Check> c10(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  std::vector<Check> out;
  const double ztol = cfg.tolerance("zero_test");
  const double otol = cfg.tolerance("orientation");
  const auto pts = sample_points(p, cfg.seed, "c10.points", 50);
  const std::uint64_t zseed = stream_seed(cfg.seed, "c10.tuples");

  const HochschildChain c0 = cycle_c0(p);
  const ZeroTest b0 = chain_is_zero(p, boundary(c0, 0.0), 200, zseed, ztol);
  out.push_back(make_check("c10.boundary.c0", 10, "hochschild.boundary", b0.residual, ztol, true,
                           std::to_string(c0.size()) + " elementary terms"));
  out.push_back(make_check("c10.pi_D.c0.theta=0", 10, "hochschild.pi_D",
                           pi_d_chi_residual(p, represent_pi_D(p, c0, 0.0), pts), otol));
  out.push_back(make_check("c10.pi_D.c0.theta=0.3", 10, "hochschild.pi_D",
                           pi_d_chi_residual(p, represent_pi_D(p, c0, 0.3), pts), otol, false,
                           "commutative cycle under the deformed representation"));
  for (const double th : {0.0, 0.3}) {
    const HochschildChain c = cycle_c_theta(p, th);
    const ZeroTest bz = chain_is_zero(p, boundary(c, th), 200, zseed, ztol);
    const OperatorExpr e = represent_pi_D(p, c, th);
    out.push_back(make_check("c10.boundary.c.theta=" + fmt(th), 10, "hochschild.boundary", bz.residual, ztol));
    out.push_back(make_check("c10.pi_D.c.theta=" + fmt(th), 10, "hochschild.pi_D", pi_d_chi_residual(p, e, pts), otol));
    bool only_zero = e.has_integer_shifts();
    for (const auto& [s, m] : e.terms()) only_zero = only_zero && s.is_zero();
    out.push_back(make_check("c10.pi_D.c.shifts.theta=" + fmt(th), 10, "hochschild.pi_D", only_zero ? 0.0 : 1.0, 0.0,
                             false, "all shifts integer and zero"));
  }
  for (const double th : {0.25, 1.0 / std::sqrt(2.0)}) {
    const ZeroTest bz = chain_is_zero(p, boundary(cycle_c_theta(p, th), th), 200, zseed, ztol);
    out.push_back(make_check("c10.boundary.c.theta=" + fmt(th), 10, "hochschild.boundary", bz.residual, ztol, false));
  }

  // pi_D(kappa(u3)) = M_{cos phi}.
  HochschildChain k(0);
  const ModeFunction s = ModeFunction::term(1.0, Mode{1, 0});
  const ModeFunction sb = ModeFunction::term(1.0, Mode{-1, 0});
  k.add(0.5, s, s, {});
  k.add(0.5, sb, sb, {});
  const ModeFunction cosphi = ModeFunction::term(0.5, Mode::whole(1, 0)) + ModeFunction::term(0.5, Mode::whole(-1, 0));
  const OperatorExpr m_cos = OperatorExpr::term(MFMatrix::scalar(cosphi), Mode{});
  const double kap = (represent_pi_D(p, k, cfg.theta) - m_cos).max_coeff();
  out.push_back(make_check("c10.pi_D.kappa_u3", 10, "hochschild.kappa", kap, 0.0));

  const double leg = std::abs(leg_pairing_phase(cfg.theta) + 1.0);
  out.push_back(make_check("c10.leg_pairing", 10, "hochschild.leg_pairing", leg, cfg.tolerance("algebra"), false));
  const HochschildChain cs = cycle_c0(p, 0);
  out.push_back(make_check("c10.negative_control.boundary", 10, "hochschild.boundary",
                           chain_is_zero(p, boundary(cs, 0.0), 200, zseed, ztol).residual > ztol ? 0.0 : 1.0, 0.0,
                           false, "one permutation dropped: b must be nonzero"));
  return out;
}

// ------------------------------------------------------------------ criterion 11
std::vector<Check> c11(const RunConfig& cfg) {
  std::vector<Check> out;
  const double kappa = 4.0;
  const ResidueQuadrature q{12, 8, 8};
  double dens = 0.0;
  std::vector<double> ratios_all;
  double trace_worst = 0.0, spread_worst = 0.0;
  for (const double a : {0.5, 1.0, 2.0}) {
    const ManifoldParams p{a};
    for (const auto& x : sample_points(p, cfg.seed, "c11.density.a=" + fmt(a), 20))
      dens = std::max(dens, std::abs(cosphere_density(p, x) / (8.0 * pi * pi * volume_density(p, x)) - 1.0));
    std::vector<double> ratios;
    for (const auto& f : default_residue_corpus(a)) {
      const double w = wodzicki_residue(p, f, kappa, q);
      const double in = integral(p, f, q);
      ratios.push_back(w / in);
      const TraceConsistency t = trace_theorem_consistency(p, f, kappa, q);
      trace_worst = std::max(trace_worst, t.relerr);
    }
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    spread_worst = std::max(spread_worst, (*mx - *mn) / std::abs(*mn));
    ratios_all.insert(ratios_all.end(), ratios.begin(), ratios.end());
  }
  const auto [mn, mx] = std::minmax_element(ratios_all.begin(), ratios_all.end());
  const double a_spread = (*mx - *mn) / std::abs(*mn);
  const double expected = 8.0 * two_pi * two_pi;
  out.push_back(make_check("c11.cosphere.density", 11, "residue.cosphere_density", dens, cfg.tolerance("density")));
  out.push_back(make_check("c11.ratio.f_independent", 11, "residue.wodzicki_proportionality", spread_worst,
                           cfg.tolerance("ratio"), true, "ratio " + fmt(*mn)));
  out.push_back(make_check("c11.ratio.a_independent", 11, "residue.wodzicki_proportionality", a_spread,
                           cfg.tolerance("ratio")));
  out.push_back(make_check("c11.trace_theorem.consistency", 11, "residue.trace_theorem", trace_worst,
                           cfg.tolerance("trace")));
  out.push_back(make_check("c11.normalization.kappa", 11, "residue.wodzicki_normalization",
                           std::abs(*mn - expected) / expected, cfg.tolerance("ratio"), true,
                           "kappa = 4 calibrates raw 8 pi^2 to 8 (2 pi)^2"));
  const double consts = std::abs(8.0 * two_pi * two_pi / (4.0 * std::pow(two_pi, 4)) - 2.0 / (two_pi * two_pi));
  out.push_back(make_check("c11.dixmier.coefficient", 11, "residue.dixmier_value", consts, 1e-15, false,
                           "no eigenvalue-based Dixmier trace is computed"));
  return out;
}

using SuiteFn = std::vector<Check> (*)(const RunConfig&);
constexpr std::array<SuiteFn, 11> kSuites = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"derivative", 1e-9},  {"curvature", 1e-6},   {"transport_eval", 1e-7}, {"unitarity", 1e-8},
      {"quadrature", 1e-5},  {"algebra", 1e-12},    {"christoffel", 1e-9},    {"frame", 1e-10},
      {"cocycle", 1e-12},    {"spin_connection", 1e-9}, {"dirac", 1e-8},      {"holonomy", 1e-10},
      {"transport_dv", 1e-6}, {"oscillatory", 1e-3}, {"projection", 1e-12},   {"roundtrip", 1e-10},
      {"zero_test", 1e-10},  {"orientation", 1e-8}, {"density", 1e-6},       {"ratio", 1e-6},
      {"trace", 1e-5},
  };
  return t;
}

void RunConfig::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("a must be positive");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (grid.n_r < 8 || grid.n_theta < 8 || grid.n_phi < 8 || grid.n_psi < 8)
    throw std::invalid_argument("grid sizes must be at least 8");
  if (modes < 0) throw std::invalid_argument("mode cutoff must be non-negative");
  if (2 * modes + 1 > std::min(grid.n_phi, grid.n_psi))
    throw std::invalid_argument("mode cutoff exceeds the angular grid Nyquist limit");
  for (const auto& [k, v] : tol) {
    if (k != "all" && !default_tolerances().contains(k)) throw std::invalid_argument("unknown tolerance key: " + k);
    if (!(v >= 0.0)) throw std::invalid_argument("tolerance must be non-negative: " + k);
  }
  if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
}

double RunConfig::tolerance(const std::string& key) const {
  if (auto it = tol.find(key); it != tol.end()) return it->second;
  if (auto it = tol.find("all"); it != tol.end()) return it->second;
  return default_tolerances().at(key);
}

const std::string& criterion_title(int k) {
  static const std::array<std::string, kCriteria> t = {
      "Christoffel validation",  "Ricci-flatness",          "Frame/metric coherence",
      "Spin connection",         "Dirac identities",        "Transport",
      "Deformed algebra",        "Representation/reality/first-order", "Projective module",
      "Orientation",             "Residue/trace",           "Determinism",
  };
  return t.at(static_cast<std::size_t>(k - 1));
}

std::vector<Check> criterion_checks(int k, const RunConfig& cfg) {
  if (k < 1 || k > static_cast<int>(kSuites.size())) throw std::invalid_argument("criterion out of range");
  try {
    return kSuites[static_cast<std::size_t>(k - 1)](cfg);
  } catch (const std::exception& e) {
    return {make_check("c" + std::to_string(k) + ".error", k, "suite", kInf, 0.0, true, e.what())};
  }
}

std::vector<Check> commutative_reduction_checks(const RunConfig& cfg) {
  const ManifoldParams p{cfg.a};
  std::mt19937_64 rng(stream_seed(cfg.seed, "c0.commutative"));
  double prod = 0.0;
  for (int k = 0; k < 5; ++k) {
    const ModeFunction f = random_mode_function(rng, 2, 3, cfg.a, false);
    const ModeFunction g = random_mode_function(rng, 2, 3, cfg.a, false);
    prod = std::max(prod, (star_product(f, g, 0.0) - f * g).max_coeff());
  }
  const auto pts = sample_points(p, cfg.seed, "c0.points", 20);
  const OperatorExpr d = represent_pi_D(p, cycle_c_theta(p, 0.0), 0.0) - represent_pi_D(p, cycle_c0(p), 0.0);
  double rep = 0.0;
  for (const auto& [s, m] : d.terms())
    for (const auto& x : pts) rep = std::max(rep, max_abs(m.eval(cfg.a, x)));
  return {
      make_check("c0.commutative.star_is_pointwise", 0, "modealg.deformed_product", prod, 0.0),
      make_check("c0.commutative.pi_D_c_equals_c0", 0, "hochschild.pi_D", rep, cfg.tolerance("orientation")),
  };
}

int thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCEH_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
  }
  return std::max(1, n);
}

Report run_verify(const RunConfig& cfg, const std::vector<int>& criteria, int threads) {
  cfg.validate();
  Report rep;
  rep.cfg = cfg;
  std::vector<std::vector<Check>> results(criteria.size());
  std::vector<double> secs(criteria.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < criteria.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      results[i] = criteria[i] == 0 ? commutative_reduction_checks(cfg) : criterion_checks(criteria[i], cfg);
      secs[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(criteria.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    rep.checks.insert(rep.checks.end(), results[i].begin(), results[i].end());
    rep.seconds[criteria[i]] = secs[i];
  }
  return rep;
}

Report run_verify(const RunConfig& cfg) {
  std::vector<int> crit;
  for (int k = 1; k <= 11; ++k) crit.push_back(k);
  if (cfg.theta == 0.0) crit.push_back(0);
  return run_verify(cfg, crit);
}

bool criterion_pass(const Report& r, int k) {
  bool any = false;
  for (const auto& c : r.checks) {
    if (c.criterion != k || !c.gating) continue;
    any = true;
    if (!c.pass) return false;
  }
  return any;
}

bool all_pass(const Report& r) {
  for (const auto& c : r.checks)
    if (c.gating && !c.pass) return false;
  return true;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : default_tolerances()) tol[k] = cfg.tolerance(k);
  return {
      {"a", cfg.a},
      {"theta", cfg.theta},
      {"grid", {{"n_r", cfg.grid.n_r}, {"n_theta", cfg.grid.n_theta}, {"n_phi", cfg.grid.n_phi}, {"n_psi", cfg.grid.n_psi}}},
      {"tolerances", tol},
      {"seed", cfg.seed},
      {"modes", cfg.modes},
  };
}

nlohmann::json report_json(const Report& r, bool include_timing) {
  using nlohmann::json;
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  json checks = json::array(), diags = json::array();
  int passed = 0, failed = 0;
  for (const auto& c : r.checks) {
    json j = {{"id", c.id},           {"criterion", c.criterion}, {"paper_anchor", c.anchor},
              {"residual", num(c.residual)}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    if (c.gating) {
      checks.push_back(std::move(j));
      (c.pass ? passed : failed)++;
    } else {
      diags.push_back(std::move(j));
    }
  }
  json crit = json::object();
  for (const auto& [k, s] : r.seconds)
    if (k >= 1) crit[std::to_string(k)] = {{"title", criterion_title(k)}, {"pass", criterion_pass(r, k)}};
  json out = {
      {"schema_version", 1},
      {"run_config", config_json(r.cfg)},
      {"checks", checks},
      {"diagnostics", diags},
      {"summary", {{"total", passed + failed}, {"passed", passed}, {"failed", failed}, {"criteria", crit},
                   {"all_pass", failed == 0}}},
      {"residue_normalization",
       {{"kappa", 4.0},
        {"raw_density_over_volume", 8.0 * pi * pi},
        {"normalized_density_over_volume", 8.0 * two_pi * two_pi},
        {"dixmier_coefficient", 2.0 / (two_pi * two_pi)},
        {"dixmier_trace", "not computed from eigenvalues; reproduced through the trace-theorem identity"}}},
  };
  if (include_timing) {
    json t = json::object();
    for (const auto& [k, s] : r.seconds) t[std::to_string(k)] = s;
    out["timing"] = t;
  }
  return out;
}

}  // namespace nceh
