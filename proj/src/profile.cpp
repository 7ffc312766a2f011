#include "nceh/profile.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace nceh {

double Atom::support_max() const {
  switch (kind) {
    case AtomKind::Step: return p0 + 1.0;
    case AtomKind::Bump: return p0 + p1;
    default: return std::numeric_limits<double>::infinity();
  }
}

std::string Atom::id() const {
  static const char* names[] = {"r", "sin", "cos", "theta", "sqrtDelta", "DeltaPlus", "sinHalf",
                                "cosHalf", "sinU", "cosU", "step", "bump", "gauss"};
  std::ostringstream os;
  os << names[static_cast<int>(kind)];
  if (kind == AtomKind::Step) os << "(" << p0 << ";d" << order << ")";
  if (kind == AtomKind::Bump) os << "(" << p0 << "," << p1 << ";d" << order << ")";
  if (kind == AtomKind::Gauss) os << "(" << p0 << ")";
  return os.str();
}

Profile Profile::atom(const Atom& a, int e) {
  Profile p;
  if (e != 0) p.f_.emplace_back(a, e);
  p.normalize();
  return p;
}

int Profile::exponent(AtomKind k) const {
  int e = 0;
  for (const auto& [at, ex] : f_)
    if (at.kind == k) e += ex;
  return e;
}

void Profile::normalize() {
  std::sort(f_.begin(), f_.end(), [](const Factor& x, const Factor& y) { return x.first < y.first; });
  std::vector<Factor> out;
  for (const auto& fa : f_) {
    if (!out.empty() && out.back().first == fa.first)
      out.back().second += fa.second;
    else
      out.push_back(fa);
  }
  std::erase_if(out, [](const Factor& x) { return x.second == 0; });
  // A step that is identically 1 on the support of another factor is absorbed.
  std::vector<Factor> kept;
  for (const auto& fa : out) {
    bool absorbed = false;
    if (fa.first.kind == AtomKind::Step && fa.first.order == 0 && fa.second > 0) {
      for (const auto& other : out) {
        if (&other == &fa || other.second <= 0) continue;
        if (other.first.support_max() <= fa.first.p0) absorbed = true;
      }
    }
    if (!absorbed) kept.push_back(fa);
  }
  f_ = std::move(kept);
}

Profile operator*(const Profile& x, const Profile& y) {
  Profile p;
  p.f_ = x.f_;
  p.f_.insert(p.f_.end(), y.f_.begin(), y.f_.end());
  p.normalize();
  return p;
}

Profile Profile::pow(int e) const {
  Profile p;
  for (const auto& [at, ex] : f_) p.f_.emplace_back(at, ex * e);
  p.normalize();
  return p;
}

namespace {

using Sum = std::vector<std::pair<double, Profile>>;

Sum atom_derivative(const Atom& at, int dir, double a) {
  const double a4 = a * a * a * a;
  const auto A = [](AtomKind k, int e = 1) { return Profile::atom(Atom::of(k), e); };
  if (dir == 0) {
    switch (at.kind) {
      case AtomKind::R: return {{1.0, Profile::one()}};
      case AtomKind::SqrtDelta: return {{2.0 * a4, A(AtomKind::R, -5) * A(AtomKind::SqrtDelta, -1)}};
      case AtomKind::DeltaPlus: return {{-4.0 * a4, A(AtomKind::R, -5)}};
      case AtomKind::Step: return {{1.0, Profile::atom(Atom::step(at.p0, at.order + 1))}};
      case AtomKind::Bump: return {{1.0, Profile::atom(Atom::bump(at.p0, at.p1, at.order + 1))}};
      case AtomKind::Gauss: return {{-2.0 / (at.p0 * at.p0), A(AtomKind::R) * Profile::atom(at)}};
      default: return {};
    }
  }
  switch (at.kind) {
    case AtomKind::SinT: return {{1.0, A(AtomKind::CosT)}};
    case AtomKind::CosT: return {{-1.0, A(AtomKind::SinT)}};
    case AtomKind::Theta: return {{1.0, Profile::one()}};
    case AtomKind::SinHalf: return {{0.5, A(AtomKind::CosHalf)}};
    case AtomKind::CosHalf: return {{-0.5, A(AtomKind::SinHalf)}};
    case AtomKind::SinU:
      return {{0.5 * pi, A(AtomKind::CosU) * A(AtomKind::SinHalf) * A(AtomKind::CosHalf)}};
    case AtomKind::CosU:
      return {{-0.5 * pi, A(AtomKind::SinU) * A(AtomKind::SinHalf) * A(AtomKind::CosHalf)}};
    default: return {};
  }
}

}  // namespace

std::vector<std::pair<double, Profile>> Profile::derivative(int dir, double a) const {
  if (dir != 0 && dir != 1) throw std::invalid_argument("profile derivative direction must be r or theta");
  Sum out;
  for (std::size_t k = 0; k < f_.size(); ++k) {
    const auto& [at, e] = f_[k];
    const Sum da = atom_derivative(at, dir, a);
    if (da.empty()) continue;
    Profile rest;
    for (std::size_t j = 0; j < f_.size(); ++j)
      if (j != k) rest.f_.push_back(f_[j]);
    if (e != 1) rest.f_.emplace_back(at, e - 1);
    rest.normalize();
    for (const auto& [c, p] : da) out.emplace_back(c * e, rest * p);
  }
  return out;
}

double Profile::support_max() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [at, e] : f_)
    if (e > 0) m = std::min(m, at.support_max());
  return m;
}

std::string Profile::id() const {
  if (f_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < f_.size(); ++k) {
    if (k) os << "*";
    os << f_[k].first.id();
    if (f_[k].second != 1) os << "^" << f_[k].second;
  }
  return os.str();
}

}  // namespace nceh
