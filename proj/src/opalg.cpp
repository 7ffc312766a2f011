#include "nceh/opalg.hpp"

#include <mutex>

namespace nceh {

// ---------------------------------------------------------------- MFMatrix

MFMatrix MFMatrix::scalar(const ModeFunction& f) {
  MFMatrix m;
  for (int k = 0; k < 4; ++k) m(k, k) = f;
  return m;
}

MFMatrix MFMatrix::constant(const Mat4& c) {
  MFMatrix m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (c(i, j) != cplx(0.0)) m(i, j) = ModeFunction::constant(c(i, j));
  return m;
}

bool MFMatrix::is_zero(double tol) const {
  for (const auto& x : e)
    if (!x.is_zero(tol)) return false;
  return true;
}

double MFMatrix::max_coeff() const {
  double m = 0.0;
  for (const auto& x : e) m = std::max(m, x.max_coeff());
  return m;
}

bool MFMatrix::is_scalar() const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j && !(*this)(i, j).empty()) return false;
      if (i == j && !((*this)(i, i) == (*this)(0, 0))) return false;
    }
  return true;
}

Mat4 MFMatrix::eval(double a, const Point& x) const {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = (*this)(i, j).empty() ? cplx(0.0) : (*this)(i, j).eval(a, x);
  return m;
}

MFMatrix operator+(const MFMatrix& x, const MFMatrix& y) {
  MFMatrix m;
  for (int k = 0; k < 16; ++k) m.e[k] = x.e[k] + y.e[k];
  return m;
}

MFMatrix operator-(const MFMatrix& x, const MFMatrix& y) {
  MFMatrix m;
  for (int k = 0; k < 16; ++k) m.e[k] = x.e[k] - y.e[k];
  return m;
}

MFMatrix operator*(const MFMatrix& x, cplx s) {
  MFMatrix m;
  for (int k = 0; k < 16; ++k) m.e[k] = x.e[k] * s;
  return m;
}

MFMatrix operator*(const MFMatrix& x, const MFMatrix& y) {
  MFMatrix m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ModeFunctionBuilder b;
      for (int k = 0; k < 4; ++k) {
        const auto& u = x(i, k);
        const auto& v = y(k, j);
        if (u.empty() || v.empty()) continue;
        b.add(u * v);
      }
      m(i, j) = b.build();
    }
  return m;
}

MFMatrix adjoint_action(Mode r, const MFMatrix& m, double theta_def) {
  if (r.is_zero() || theta_def == 0.0) return m;
  MFMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Mode q{kSpinCharge[i] - kSpinCharge[j], 0};
      ModeFunctionBuilder b;
      for (const auto& t : m(i, j).terms()) b.add(t.c * sigma(r, t.mode + q, theta_def), t.mode, t.profile);
      out(i, j) = b.build();
    }
  return out;
}

namespace {

ModeFunction pr(cplx c, int mode_m, std::initializer_list<std::pair<AtomKind, int>> atoms) {
  Profile p;
  for (const auto& [k, e] : atoms) p = p * Profile::atom(Atom::of(k), e);
  return ModeFunction::term(c, Mode::whole(mode_m, 0), p);
}

// c cos(phi) * profile and c sin(phi) * profile.
ModeFunction cos_phi(double c, std::initializer_list<std::pair<AtomKind, int>> atoms) {
  return pr(0.5 * c, 1, atoms) + pr(0.5 * c, -1, atoms);
}
ModeFunction sin_phi(double c, std::initializer_list<std::pair<AtomKind, int>> atoms) {
  return pr(cplx(0.0, -0.5 * c), 1, atoms) + pr(cplx(0.0, 0.5 * c), -1, atoms);
}

}  // namespace

MFMatrix symbolic_coframe(double a) {
  (void)a;  // Delta enters through the SqrtDelta atom
  using K = AtomKind;
  MFMatrix h;
  h(0, 1) = cos_phi(-0.5, {{K::R, 1}});
  h(0, 2) = sin_phi(-0.5, {{K::R, 1}, {K::SinT, 1}});
  h(1, 1) = sin_phi(0.5, {{K::R, 1}});
  h(1, 2) = cos_phi(-0.5, {{K::R, 1}, {K::SinT, 1}});
  h(2, 2) = pr(0.5, 0, {{K::R, 1}, {K::SqrtDelta, 1}, {K::CosT, 1}});
  h(2, 3) = pr(0.5, 0, {{K::R, 1}, {K::SqrtDelta, 1}});
  h(3, 0) = pr(1.0, 0, {{K::SqrtDelta, -1}});
  return h;
}

const std::array<MFMatrix, 4>& symbolic_coordinate_gammas(double a) {
  static std::mutex mu;
  static std::map<double, std::array<MFMatrix, 4>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  using K = AtomKind;
  // hinv[j][beta] = h~^j_beta
  std::array<std::array<ModeFunction, 4>, 4> hinv;
  hinv[0][3] = pr(1.0, 0, {{K::SqrtDelta, 1}});
  hinv[1][0] = cos_phi(-2.0, {{K::R, -1}});
  hinv[1][1] = sin_phi(2.0, {{K::R, -1}});
  hinv[2][0] = sin_phi(-2.0, {{K::R, -1}, {K::SinT, -1}});
  hinv[2][1] = cos_phi(-2.0, {{K::R, -1}, {K::SinT, -1}});
  hinv[3][0] = sin_phi(2.0, {{K::R, -1}, {K::CosT, 1}, {K::SinT, -1}});
  hinv[3][1] = cos_phi(2.0, {{K::R, -1}, {K::CosT, 1}, {K::SinT, -1}});
  hinv[3][2] = pr(2.0, 0, {{K::R, -1}, {K::SqrtDelta, -1}});
  const auto& g = gamma_set().g;
  std::array<MFMatrix, 4> out;
  for (int j = 0; j < 4; ++j) {
    MFMatrix m;
    for (int b = 0; b < 4; ++b) {
      if (hinv[j][b].empty()) continue;
      m = m + MFMatrix::scalar(hinv[j][b]) * MFMatrix::constant(g[b]);
    }
    out[j] = m;
  }
  return cache.emplace(a, std::move(out)).first->second;
}

// ---------------------------------------------------------------- OperatorExpr

void OperatorExpr::prune() {
  for (auto it = t_.begin(); it != t_.end();) {
    if (it->second.is_zero())
      it = t_.erase(it);
    else
      ++it;
  }
}

OperatorExpr OperatorExpr::identity() { return constant(Mat4::Identity()); }

OperatorExpr OperatorExpr::term(const MFMatrix& c, Mode shift) {
  OperatorExpr e;
  e.t_[shift] = c;
  e.prune();
  return e;
}

bool OperatorExpr::is_zero(double tol) const {
  for (const auto& [s, c] : t_)
    if (!c.is_zero(tol)) return false;
  return true;
}

double OperatorExpr::max_coeff() const {
  double m = 0.0;
  for (const auto& [s, c] : t_) m = std::max(m, c.max_coeff());
  return m;
}

bool OperatorExpr::has_integer_shifts() const {
  for (const auto& [s, c] : t_)
    if (!s.is_integer()) return false;
  return true;
}

MFMatrix OperatorExpr::coefficient(Mode shift) const {
  auto it = t_.find(shift);
  return it == t_.end() ? MFMatrix{} : it->second;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [s, c] : o.t_) {
    auto it = t_.find(s);
    if (it == t_.end())
      t_[s] = c;
    else
      it->second = it->second + c;
  }
  prune();
  return *this;
}

OperatorExpr operator*(const OperatorExpr& a, cplx s) {
  OperatorExpr e;
  for (const auto& [sh, c] : a.terms()) e += OperatorExpr::term(c * s, sh);
  return e;
}

OperatorExpr left_rep(const ModeFunction& f) {
  OperatorExpr e;
  for (const Mode r : f.modes()) e += OperatorExpr::term(MFMatrix::scalar(f.component(r)), r);
  return e;
}

OperatorExpr right_rep(const ModeFunction& h) {
  OperatorExpr e;
  for (const Mode s : h.modes()) e += OperatorExpr::term(MFMatrix::scalar(h.component(s)), -s);
  return e;
}

OperatorExpr compose(const OperatorExpr& A, const OperatorExpr& B, double theta_def) {
  std::map<Mode, MFMatrix> acc;
  for (const auto& [r, ca] : A.terms())
    for (const auto& [s, cb] : B.terms()) {
      const MFMatrix prod = ca * adjoint_action(r, cb, theta_def);
      auto it = acc.find(r + s);
      if (it == acc.end())
        acc.emplace(r + s, prod);
      else
        it->second = it->second + prod;
    }
  OperatorExpr e;
  for (const auto& [s, c] : acc) e += OperatorExpr::term(c, s);
  return e;
}

OperatorExpr adjoint(const OperatorExpr& A, double theta_def) {
  OperatorExpr e;
  for (const auto& [r, c] : A.terms()) {
    MFMatrix ct;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) ct(i, j) = involution(c(j, i));
    e += OperatorExpr::term(adjoint_action(-r, ct, theta_def), -r);
  }
  return e;
}

OperatorExpr dirac_commutator(const OperatorExpr& A, double a) {
  const auto& gam = symbolic_coordinate_gammas(a);
  OperatorExpr e;
  for (const auto& [r, c] : A.terms()) {
    if (!c.is_scalar()) throw std::invalid_argument("Dirac commutator needs scalar multiplier coefficients");
    const ModeFunction& h = c(0, 0);
    MFMatrix cd;
    for (int j = 0; j < 4; ++j) {
      const ModeFunction dh = h.derivative(j, a);
      if (dh.empty()) continue;
      cd = cd + MFMatrix::scalar(dh) * gam[j];
    }
    e += OperatorExpr::term(cd * cplx(0.0, -1.0), r);
  }
  return e;
}

Vec4 evaluate(const ManifoldParams& p, const OperatorExpr& A, const SpinorField& field, const Point& x,
              double theta_def, Lift lift) {
  Vec4 out = Vec4::Zero();
  for (const auto& [r, c] : A.terms()) {
    const VData v = v_data(p, x, theta_def, r, lift);
    out += c.eval(p.a, x) * (v.U * field.value(v.pullback));
  }
  return out;
}

OperatorField::OperatorField(ManifoldParams p, OperatorExpr A, FieldPtr inner, double theta_def, Lift lift)
    : p_(p), A_(std::move(A)), inner_(std::move(inner)), theta_(theta_def), lift_(lift) {
  for (const auto& [r, c] : A_.terms()) {
    std::array<MFMatrix, 4> dc;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 16; ++k) dc[i].e[k] = c.e[k].derivative(i, p_.a);
    dC_.emplace(r, std::move(dc));
  }
}

Vec4 OperatorField::value(const Point& x) const { return evaluate(p_, A_, *inner_, x, theta_, lift_); }

Vec4 OperatorField::d(const Point& x, int i) const {
  if (lift_ == Lift::Transport)
    return richardson_derivative([this](const Point& y) { return value(y); }, x, i, 1e-3);
  Vec4 out = Vec4::Zero();
  for (const auto& [r, c] : A_.terms()) {
    const VData v = v_data(p_, x, theta_, r, lift_);
    out += dC_.at(r)[i].eval(p_.a, x) * (v.U * inner_->value(v.pullback));
    out += c.eval(p_.a, x) * (v.U * inner_->d(v.pullback, i));
  }
  return out;
}

}  // namespace nceh
