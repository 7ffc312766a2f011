#include "nceh/modealg.hpp"

#include "nceh/geometry.hpp"
#include "nceh/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <limits>

namespace nceh {

int sigma_quarter_units(Mode r, Mode s) { return r.n2 * s.m2 - r.m2 * s.n2; }

cplx sigma(Mode r, Mode s, double theta_def) {
  const int k = sigma_quarter_units(r, s);
  if (k == 0 || theta_def == 0.0) return {1.0, 0.0};
  return std::polar(1.0, two_pi * theta_def * k * 0.25);
}

// ---------------------------------------------------------------- builder

void ModeFunctionBuilder::add(cplx c, Mode m, const Profile& p) {
  if (c == cplx(0.0)) return;
  acc_[{m, p}] += c;
}

void ModeFunctionBuilder::add(const ModeFunction& f, cplx scale) {
  for (const auto& t : f.terms()) add(t.c * scale, t.mode, t.profile);
}

ModeFunction ModeFunctionBuilder::build() const {
  ModeFunction f;
  for (const auto& [key, c] : acc_)
    if (c != cplx(0.0)) f.terms_.push_back(Term{key.first, key.second, c});
  return f;
}

// ---------------------------------------------------------------- ModeFunction

ModeFunction ModeFunction::constant(cplx c) { return term(c, Mode{}, Profile::one()); }

ModeFunction ModeFunction::term(cplx c, Mode m, const Profile& p) {
  ModeFunctionBuilder b;
  b.add(c, m, p);
  return b.build();
}

ModeFunction ModeFunction::exp_mode(int m, int n) { return term(1.0, Mode::whole(m, n)); }

ModeFunction ModeFunction::atom(const Atom& a, int e) { return term(1.0, Mode{}, Profile::atom(a, e)); }

bool ModeFunction::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const Term& t) { return std::abs(t.c) <= tol; });
}

double ModeFunction::max_coeff() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
  return m;
}

std::vector<Mode> ModeFunction::modes() const {
  std::vector<Mode> out;
  for (const auto& t : terms_)
    if (out.empty() || !(out.back() == t.mode)) out.push_back(t.mode);
  return out;
}

ModeFunction ModeFunction::component(Mode m) const {
  ModeFunction f;
  for (const auto& t : terms_)
    if (t.mode == m) f.terms_.push_back(t);
  return f;
}

bool ModeFunction::is_algebra_valued() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mode.is_integer(); });
}

ModeFunction& ModeFunction::operator+=(const ModeFunction& o) {
  ModeFunctionBuilder b;
  b.add(*this);
  b.add(o);
  *this = b.build();
  return *this;
}

ModeFunction operator*(const ModeFunction& a, cplx s) {
  ModeFunctionBuilder b;
  b.add(a, s);
  return b.build();
}

ModeFunction operator*(const ModeFunction& a, const ModeFunction& b) { return star_product(a, b, 0.0); }

bool ModeFunction::operator==(const ModeFunction& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& x = terms_[i];
    const Term& y = o.terms_[i];
    if (!(x.mode == y.mode) || !(x.profile == y.profile) || x.c != y.c) return false;
  }
  return true;
}

ModeFunction ModeFunction::derivative(int dir, double a) const {
  ModeFunctionBuilder b;
  for (const auto& t : terms_) {
    if (dir == 0 || dir == 1) {
      for (const auto& [c, p] : t.profile.derivative(dir, a)) b.add(t.c * c, t.mode, p);
    } else if (dir == 2) {
      b.add(t.c * cplx(0.0, t.mode.m()), t.mode, t.profile);
    } else if (dir == 3) {
      b.add(t.c * cplx(0.0, t.mode.n()), t.mode, t.profile);
    } else {
      throw std::invalid_argument("derivative direction must be 0..3");
    }
  }
  return b.build();
}

cplx ModeFunction::eval(double a, double r, double th, double phi, double psi) const {
  cplx v{0.0, 0.0};
  for (const auto& t : terms_)
    v += t.c * t.profile.eval<double>(a, r, th) * std::polar(1.0, t.mode.m() * phi + t.mode.n() * psi);
  return v;
}

cplx ModeFunction::eval_profile(Mode m, double a, double r, double th) const {
  cplx v{0.0, 0.0};
  for (const auto& t : terms_)
    if (t.mode == m) v += t.c * t.profile.eval<double>(a, r, th);
  return v;
}

double ModeFunction::support_max() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.profile.support_max());
  return m;
}

// ---------------------------------------------------------------- products

ModeFunction star_product(const ModeFunction& f, const ModeFunction& g, double theta_def) {
  ModeFunctionBuilder b;
  for (const auto& x : f.terms())
    for (const auto& y : g.terms())
      b.add(x.c * y.c * sigma(x.mode, y.mode, theta_def), x.mode + y.mode, x.profile * y.profile);
  return b.build();
}

ModeFunction involution(const ModeFunction& f) {
  ModeFunctionBuilder b;
  for (const auto& t : f.terms()) b.add(std::conj(t.c), -t.mode, t.profile);
  return b.build();
}

namespace {

// int_{-L}^{L} int_{-L}^{L} e^{-eps(x^2+y^2)} e(alpha x + beta y + x y) dx dy.
// The x integral is a Gaussian Fourier transform (box edge weight e^{-eps L^2}
// is below double precision for the default box); the y integral is adaptive
// Gauss-Kronrod split at the stationary point y = -alpha.
cplx pair_integral(double alpha, double beta, double eps, double L, double tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double pref = std::sqrt(pi / eps);
  auto env = [&](double y) {
    const double s = alpha + y;
    return pref * std::exp(-pi * pi * s * s / eps - eps * y * y);
  };
  auto re = [&](double y) { return env(y) * std::cos(two_pi * beta * y); };
  auto im = [&](double y) { return env(y) * std::sin(two_pi * beta * y); };
  const double c = std::clamp(-alpha, -L, L);
  const unsigned depth = 20;
  double err = 0.0;
  const double vr = GK::integrate(re, -L, c, depth, tol, &err) + GK::integrate(re, c, L, depth, tol, &err);
  const double vi = GK::integrate(im, -L, c, depth, tol, &err) + GK::integrate(im, c, L, depth, tol, &err);
  return {vr, vi};
}

}  // namespace

cplx oscillatory_phase_damped(Mode r, Mode s, double theta_def, double eps, double L, double tol) {
  // r.J'u = -theta r4 u1 + theta r3 u2; pairs (u1, v1) and (u2, v2) decouple.
  const cplx p1 = pair_integral(-theta_def * r.n(), s.m(), eps, L, tol);
  const cplx p2 = pair_integral(theta_def * r.m(), s.n(), eps, L, tol);
  return p1 * p2;
}

cplx oscillatory_phase(Mode r, Mode s, double theta_def, const OscillatorySchedule& sch) {
  const std::size_t n = sch.eps.size();
  if (n == 0) throw std::invalid_argument("empty extrapolation schedule");
  std::vector<cplx> vals(n);
  for (std::size_t k = 0; k < n; ++k)
    vals[k] = oscillatory_phase_damped(r, s, theta_def, sch.eps[k], sch.box_factor / std::sqrt(sch.eps[k]),
                                       sch.quad_tol);
  // The damped value behaves like sigma exp(-kappa eps) with kappa growing
  // quadratically in the modes, so Richardson extrapolation acts on the log,
  // taken relative to the finest value (the phase drift across the schedule is
  // far below pi, so the principal branch is continuous).
  const cplx ref = vals[n - 1];
  if (ref == cplx(0.0)) throw QuadratureDivergence("damped oscillatory integral vanished");
  std::vector<cplx> logs(n);
  for (std::size_t k = 0; k < n; ++k) logs[k] = std::log(vals[k] / ref);
  auto extrapolate = [&](std::size_t first) {
    cplx out{0.0, 0.0};
    for (std::size_t k = first; k < n; ++k) {
      double w = 1.0;
      for (std::size_t j = first; j < n; ++j)
        if (j != k) w *= (0.0 - sch.eps[j]) / (sch.eps[k] - sch.eps[j]);
      out += w * logs[k];
    }
    return ref * std::exp(out);
  };
  const cplx full = extrapolate(0);
  if (!std::isfinite(full.real()) || !std::isfinite(full.imag()))
    throw QuadratureDivergence("oscillatory extrapolation produced a non-finite value");
  if (n >= 2 && std::abs(full - extrapolate(1)) > 0.5)
    throw QuadratureDivergence("oscillatory extrapolation did not stabilize");
  return full;
}

ModeFunction oscillatory_product(const ModeFunction& f, const ModeFunction& g, double theta_def,
                                 const OscillatorySchedule& sch) {
  std::map<std::pair<Mode, Mode>, cplx> cache;
  ModeFunctionBuilder b;
  for (const auto& x : f.terms())
    for (const auto& y : g.terms()) {
      auto key = std::make_pair(x.mode, y.mode);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, oscillatory_phase(x.mode, y.mode, theta_def, sch)).first;
      b.add(x.c * y.c * it->second, x.mode + y.mode, x.profile * y.profile);
    }
  return b.build();
}

ModeFunction local_unit(double n, double a) { return ModeFunction::atom(Atom::step(n * a)); }

// ---------------------------------------------------------------- spectral

cplx SpectralDecomposition::reconstruct(std::size_t node, double phi, double psi) const {
  cplx v{0.0, 0.0};
  for (const auto& [m, c] : coeffs) v += c[node] * std::polar(1.0, m.m() * phi + m.n() * psi);
  return v;
}

SpectralDecomposition spectral_decompose(const std::vector<std::pair<double, double>>& nodes,
                                         const std::vector<std::vector<cplx>>& samples, int n_phi,
                                         int n_psi, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative mode cutoff");
  if (2 * cutoff + 1 > n_phi || 2 * cutoff + 1 > n_psi)
    throw AliasError("mode cutoff exceeds the Nyquist limit of the angular grid");
  if (samples.size() != nodes.size()) throw std::invalid_argument("one sample block per node required");
  SpectralDecomposition out;
  out.cutoff = cutoff;
  out.nodes = nodes;
  for (int m = -cutoff; m <= cutoff; ++m)
    for (int n = -cutoff; n <= cutoff; ++n) out.coeffs[Mode::whole(m, n)].assign(nodes.size(), 0.0);

  Eigen::FFT<double> fft;
  std::vector<cplx> in, tmp;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& s = samples[k];
    if (s.size() != static_cast<std::size_t>(n_phi * n_psi)) throw std::invalid_argument("sample block size mismatch");
    // Transform along psi, then along phi.
    std::vector<cplx> rows(s.size());
    for (int i = 0; i < n_phi; ++i) {
      in.assign(s.begin() + i * n_psi, s.begin() + (i + 1) * n_psi);
      fft.fwd(tmp, in);
      std::copy(tmp.begin(), tmp.end(), rows.begin() + i * n_psi);
    }
    for (int j = 0; j < n_psi; ++j) {
      in.resize(n_phi);
      for (int i = 0; i < n_phi; ++i) in[i] = rows[i * n_psi + j];
      fft.fwd(tmp, in);
      for (int i = 0; i < n_phi; ++i) rows[i * n_psi + j] = tmp[i];
    }
    const double norm = 1.0 / (static_cast<double>(n_phi) * n_psi);
    for (auto& [mode, c] : out.coeffs) {
      const int m = static_cast<int>(mode.m());
      const int n = static_cast<int>(mode.n());
      const int im = (m % n_phi + n_phi) % n_phi;
      const int in_ = (n % n_psi + n_psi) % n_psi;
      c[k] = rows[im * n_psi + in_] * norm;
    }
  }
  return out;
}

// ---------------------------------------------------------------- norms

namespace {

struct ModeJet {
  cplx v;
  std::array<cplx, 4> d;
  std::array<std::array<cplx, 4>, 4> dd;
};

double sobolev_density(const ManifoldParams& p, const std::vector<ModeFunction>& jet, Mode mode, double r,
                       double th, int k, std::array<double, 3>& parts) {
  // jet layout: [f, d_0..d_3 f, d_i d_j f (16)]
  const double a = p.a;
  ModeJet j{};
  j.v = jet[0].eval_profile(mode, a, r, th);
  for (int i = 0; i < 4; ++i) j.d[i] = jet[1 + i].eval_profile(mode, a, r, th);
  const Point pt(Chart::N, r, th, 0.0, 0.0);
  const double vol = volume_density(p, pt);
  parts[0] = std::norm(j.v) * vol;
  parts[1] = parts[2] = 0.0;
  if (k < 1) return parts[0];
  const RMat4 gi = inverse_metric(p, pt);
  double g1 = 0.0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) g1 += gi(x, y) * std::real(j.d[x] * std::conj(j.d[y]));
  parts[1] = g1 * vol;
  if (k < 2) return parts[0] + parts[1];
  const Table3 gam = christoffel_from_metric(p, pt);
  std::array<std::array<cplx, 4>, 4> hess{};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      cplx h = jet[5 + 4 * x + y].eval_profile(mode, a, r, th);
      for (int l = 0; l < 4; ++l) h -= gam[l][x][y] * j.d[l];
      hess[x][y] = h;
    }
  double g2 = 0.0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int u = 0; u < 4; ++u)
        for (int w = 0; w < 4; ++w) g2 += gi(x, u) * gi(y, w) * std::real(hess[x][y] * std::conj(hess[u][w]));
  parts[2] = g2 * vol;
  return parts[0] + parts[1] + parts[2];
}

std::array<double, 3> sobolev_integrals(const ManifoldParams& p, const std::vector<ModeFunction>& jet, Mode mode,
                                        double r_lo, double r_hi, int k, const QuadratureBox& box) {
  std::array<double, 3> acc{};
  const auto rr = composite_rule(r_lo, r_hi, box.r_panels, box.order);
  const auto tt = composite_rule(0.0, pi, box.theta_panels, box.order);
  std::array<double, 3> parts{};
  for (const auto& [r, wr] : rr)
    for (const auto& [th, wt] : tt) {
      sobolev_density(p, jet, mode, r, th, k, parts);
      for (int q = 0; q < 3; ++q) acc[q] += wr * wt * parts[q];
    }
  for (auto& x : acc) x *= two_pi * two_pi;
  return acc;
}

}  // namespace

SobolevResult sobolev_norm(const ManifoldParams& p, const ModeFunction& f, int k, const QuadratureBox& box) {
  if (k < 0 || k > 2) throw std::invalid_argument("Sobolev order must be 0, 1 or 2");
  if (!f.is_algebra_valued()) throw std::invalid_argument("Sobolev norm needs integer modes");
  SobolevResult res;
  const double r_lo = p.a * box.r_min_rel;
  const double r_hi = p.a * box.r_max_rel;
  std::array<double, 3> total{};
  double tail = 0.0;
  for (const Mode m : f.modes()) {
    const ModeFunction fm = f.component(m);
    std::vector<ModeFunction> jet;
    jet.push_back(fm);
    for (int i = 0; i < 4; ++i) jet.push_back(fm.derivative(i, p.a));
    if (k >= 2)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) jet.push_back(jet[1 + i].derivative(j, p.a));
    const auto in = sobolev_integrals(p, jet, m, r_lo, r_hi, k, box);
    for (int q = 0; q < 3; ++q) total[q] += in[q];
    const auto out = sobolev_integrals(p, jet, m, r_hi, 2.0 * r_hi, k, box);
    tail += out[0] + out[1] + out[2];
  }
  for (int q = 0; q < 3; ++q) res.parts[q] = std::sqrt(total[q]);
  res.value = 0.0;
  for (int q = 0; q <= k; ++q) res.value += res.parts[q];
  res.tail = tail;
  res.integrable = tail <= box.tail_tol * std::max(1.0, total[0] + total[1] + total[2]);
  return res;
}

double seminorm_q(const ManifoldParams& p, const ModeFunction& f, int m, const SeminormGrid& grid,
                  const SamplingBox& box) {
  if (m < 0) throw std::invalid_argument("seminorm order must be nonnegative");
  // All derivatives d^alpha f with |alpha| <= m (nondecreasing index sequences).
  std::vector<ModeFunction> ders{f};
  std::vector<std::pair<std::size_t, int>> frontier{{0, 0}};  // (index, last direction)
  for (int order = 1; order <= m; ++order) {
    std::vector<std::pair<std::size_t, int>> next;
    for (const auto& [idx, last] : frontier)
      for (int d = last; d < 4; ++d) {
        ders.push_back(ders[idx].derivative(d, p.a));
        next.emplace_back(ders.size() - 1, d);
      }
    frontier = std::move(next);
  }
  const double r_lo = p.a * (1.0 + box.eps_r_rel);
  const double r_hi = p.a * box.r_max_rel;
  double q = 0.0;
  for (int ir = 0; ir < grid.n_r; ++ir) {
    const double r = r_lo + (r_hi - r_lo) * ir / std::max(1, grid.n_r - 1);
    for (int it = 0; it < grid.n_theta; ++it) {
      const double th = pi * it / std::max(1, grid.n_theta - 1);
      const double c = std::cos(0.5 * th);
      const double hn = th < pi ? c * c : 0.0;
      const double hs = th > 0.0 ? 1.0 - c * c : 0.0;
      const double h = std::max(hn, hs);
      for (int ip = 0; ip < grid.n_phi; ++ip)
        for (int is = 0; is < grid.n_psi; ++is) {
          const double ph = two_pi * ip / grid.n_phi;
          const double ps = two_pi * is / grid.n_psi;
          for (const auto& d : ders) q = std::max(q, h * std::abs(d.eval(p.a, r, th, ph, ps)));
        }
    }
  }
  return q;
}

}  // namespace nceh
