#pragma once

// Closed profile dictionary for the (r, theta) part of mode functions.
// A Profile is a monomial prod_k atom_k^{e_k}; the dictionary is closed under
// products and under d/dr, d/dtheta (derivatives expand into sums of monomials).

#include "nceh/core.hpp"
#include "nceh/dual.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace nceh {

enum class AtomKind : std::uint8_t {
  R,          // r
  SinT,       // sin theta
  CosT,       // cos theta
  Theta,      // theta
  SqrtDelta,  // (1 - a^4/r^4)^{1/2}
  DeltaPlus,  // 1 + a^4/r^4
  SinHalf,    // sin(theta/2)
  CosHalf,    // cos(theta/2)
  SinU,       // sin u, u = (pi/2) sin^2(theta/2)
  CosU,       // cos u
  Step,       // d^order/dr^order of the smooth step: 1 on r <= p0, 0 on r >= p0 + 1
  Bump,       // d^order/dr^order of exp(1 - 1/(1 - ((r - p0)/p1)^2)) on |r - p0| < p1
  Gauss,      // exp(-(r/p0)^2)
};

struct Atom {
  AtomKind kind = AtomKind::R;
  int order = 0;
  double p0 = 0.0;
  double p1 = 0.0;

  auto operator<=>(const Atom&) const = default;

  static Atom of(AtomKind k) { return Atom{k, 0, 0.0, 0.0}; }
  static Atom step(double n, int order = 0) { return Atom{AtomKind::Step, order, n, 0.0}; }
  static Atom bump(double c, double w, int order = 0) { return Atom{AtomKind::Bump, order, c, w}; }
  static Atom gauss(double s) { return Atom{AtomKind::Gauss, 0, s, 0.0}; }

  // Radial support upper bound (infinity if unbounded).
  double support_max() const;
  std::string id() const;
};

namespace detail {

template <class T>
T smooth_e(const T& t) {
  using std::exp;
  if (value_of(t) <= 0.0) return T(0.0);
  return exp(-1.0 / t);
}

template <class T>
T step_base(const T& r, double n) {
  const T a = smooth_e(T(n + 1.0) - r);
  const T b = smooth_e(r - T(n));
  return a / (a + b);
}

template <class T>
T bump_base(const T& r, double c, double w) {
  using std::exp;
  const T t = (r - T(c)) / w;
  const double tv = value_of(t);
  if (tv <= -1.0 || tv >= 1.0) return T(0.0);
  return exp(1.0 - 1.0 / (1.0 - t * t));
}

template <int K, class T, class F>
T kth_derivative(const F& f, const T& x) {
  if constexpr (K == 0) {
    return f(x);
  } else {
    const Dual<T> seeded(x, T(1.0));
    return kth_derivative<K - 1, Dual<T>>(f, seeded).d;
  }
}

template <class T, class F>
T derivative_dispatch(int k, const F& f, const T& x) {
  switch (k) {
    case 0: return kth_derivative<0, T>(f, x);
    case 1: return kth_derivative<1, T>(f, x);
    case 2: return kth_derivative<2, T>(f, x);
    case 3: return kth_derivative<3, T>(f, x);
    case 4: return kth_derivative<4, T>(f, x);
    default: throw std::invalid_argument("radial derivative order above 4 not supported");
  }
}

}  // namespace detail

template <class T>
T eval_atom(const Atom& at, double a, const T& r, const T& th) {
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  const double a4 = a * a * a * a;
  switch (at.kind) {
    case AtomKind::R: return r;
    case AtomKind::SinT: return sin(th);
    case AtomKind::CosT: return cos(th);
    case AtomKind::Theta: return th;
    case AtomKind::SqrtDelta: { const T r2 = r * r; return sqrt(1.0 - a4 / (r2 * r2)); }
    case AtomKind::DeltaPlus: { const T r2 = r * r; return 1.0 + a4 / (r2 * r2); }
    case AtomKind::SinHalf: return sin(0.5 * th);
    case AtomKind::CosHalf: return cos(0.5 * th);
    case AtomKind::SinU: { const T s = sin(0.5 * th); return sin(0.5 * pi * s * s); }
    case AtomKind::CosU: { const T s = sin(0.5 * th); return cos(0.5 * pi * s * s); }
    case AtomKind::Step: {
      const double n = at.p0;
      return detail::derivative_dispatch<T>(at.order, [n](const auto& x) { return detail::step_base(x, n); }, r);
    }
    case AtomKind::Bump: {
      const double c = at.p0, w = at.p1;
      return detail::derivative_dispatch<T>(at.order, [c, w](const auto& x) { return detail::bump_base(x, c, w); }, r);
    }
    case AtomKind::Gauss: { const T q = r / at.p0; return exp(-(q * q)); }
  }
  return T(0.0);
}

class Profile {
 public:
  using Factor = std::pair<Atom, int>;

  Profile() = default;
  static Profile one() { return {}; }
  static Profile atom(const Atom& a, int e = 1);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int exponent(AtomKind k) const;

  friend Profile operator*(const Profile& x, const Profile& y);
  Profile pow(int e) const;

  auto operator<=>(const Profile&) const = default;

  // Derivative along r (dir 0) or theta (dir 1) as a sum of monomials.
  std::vector<std::pair<double, Profile>> derivative(int dir, double a) const;

  template <class T>
  T eval(double a, const T& r, const T& th) const {
    T v(1.0);
    for (const auto& [at, e] : f_) v = v * ipow(eval_atom<T>(at, a, r, th), e);
    return v;
  }

  double support_max() const;
  std::string id() const;

 private:
  std::vector<Factor> f_;  // sorted by atom, nonzero exponents
  void normalize();
};

}  // namespace nceh
