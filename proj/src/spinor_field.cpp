#include "nceh/spinor_field.hpp"

namespace nceh {

Point shifted(const Point& x, int i, double h) {
  auto c = x.coords();
  c[i] += h;
  return Point(x.chart, c[0], c[1], c[2], c[3]);
}

Vec4 richardson_derivative(const std::function<Vec4(const Point&)>& f, const Point& x, int i, double h) {
  auto central = [&](double s) { return ((f(shifted(x, i, s)) - f(shifted(x, i, -s))) / (2.0 * s)).eval(); };
  const Vec4 d1 = central(h);
  const Vec4 d2 = central(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

ModeSpinor::ModeSpinor(double a, std::array<ModeFunction, 4> comps) : a_(a), c_(std::move(comps)) {
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) dc_[i][k] = c_[k].derivative(i, a_);
}

Vec4 ModeSpinor::value(const Point& x) const {
  Vec4 v;
  for (int k = 0; k < 4; ++k) v(k) = c_[k].eval(a_, x);
  return v;
}

Vec4 ModeSpinor::d(const Point& x, int i) const {
  Vec4 v;
  for (int k = 0; k < 4; ++k) v(k) = dc_[i][k].eval(a_, x);
  return v;
}

ScalarTimesField::ScalarTimesField(double a, ModeFunction f, FieldPtr inner)
    : a_(a), f_(std::move(f)), inner_(std::move(inner)) {
  for (int i = 0; i < 4; ++i) df_[i] = f_.derivative(i, a_);
}

Vec4 ScalarTimesField::value(const Point& x) const { return f_.eval(a_, x) * inner_->value(x); }

Vec4 ScalarTimesField::d(const Point& x, int i) const {
  return df_[i].eval(a_, x) * inner_->value(x) + f_.eval(a_, x) * inner_->d(x, i);
}

std::vector<std::shared_ptr<const ModeSpinor>> spinor_corpus(double a, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(-2, 2);
  std::uniform_int_distribution<int> trig(0, 2);
  std::uniform_int_distribution<int> deg(0, 3);
  const auto R = [](int e) { return Profile::atom(Atom::of(AtomKind::R), e); };
  std::vector<std::shared_ptr<const ModeSpinor>> out;
  for (int f = 0; f < count; ++f) {
    std::array<ModeFunction, 4> comps;
    for (int k = 0; k < 4; ++k) {
      ModeFunctionBuilder b;
      const Mode md = Mode::whole(mode(rng), mode(rng));
      const int t = trig(rng);
      const Profile tp = t == 0 ? Profile::one()
                                : Profile::atom(Atom::of(t == 1 ? AtomKind::SinT : AtomKind::CosT));
      const int d = deg(rng);
      for (int e = 0; e <= d; ++e) b.add(cplx(coef(rng), coef(rng)), md, R(-e) * tp);
      comps[k] = b.build();
    }
    if (f == count - 1) {
      // Compactly supported radial bump in the last field.
      const ModeFunction bump = ModeFunction::atom(Atom::bump(3.0 * a, 1.5 * a));
      for (auto& c : comps) c = c * bump;
    }
    out.push_back(std::make_shared<const ModeSpinor>(a, std::move(comps)));
  }
  return out;
}

}  // namespace nceh
