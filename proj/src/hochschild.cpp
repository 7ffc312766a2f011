#include "nceh/hochschild.hpp"

#include "nceh/spinbundle.hpp"

#include <algorithm>
#include <numeric>

namespace nceh {

namespace {

Slot slot_of(const Term& t) { return Slot{t.mode, t.profile}; }

// Product of two single-mode monomials; returns the scalar factor.
std::pair<cplx, Slot> slot_mul(const Slot& x, const Slot& y, double theta_def) {
  return {sigma(x.mode, y.mode, theta_def), Slot{x.mode + y.mode, x.profile * y.profile}};
}

ModeFunction mf(cplx c, int m2, std::initializer_list<std::pair<AtomKind, int>> atoms) {
  Profile p;
  for (const auto& [k, e] : atoms) p = p * Profile::atom(Atom::of(k), e);
  return ModeFunction::term(c, Mode{m2, 0}, p);
}

ModeFunction leg_u(int i) {
  switch (i) {
    case 0: return ModeFunction::atom(Atom::of(AtomKind::R));
    case 1: return ModeFunction::atom(Atom::of(AtomKind::Theta));
    case 2: return ModeFunction::exp_mode(1, 0);
    default: return ModeFunction::exp_mode(0, 1);
  }
}

// -i/u3 and -i/u4.
ModeFunction v_factor(int i) {
  if (i == 2) return ModeFunction::term(-I, Mode::whole(-1, 0));
  if (i == 3) return ModeFunction::term(-I, Mode::whole(0, -1));
  return ModeFunction::constant(1.0);
}

std::vector<std::array<int, 4>> permutations_with_sign(std::vector<int>& signs) {
  std::array<int, 4> s = {0, 1, 2, 3};
  std::vector<std::array<int, 4>> out;
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inv += s[i] > s[j];
    out.push_back(s);
    signs.push_back(inv % 2 ? -1 : 1);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

// (1/4!) sum_sigma sgn K^{s4}_{i_s4} K^{s3} K^{s2} K^{s1} (x) u^{i_s1} ... u^{i_s4}.
HochschildChain antisymmetrize(const std::array<std::array<Bimod, 4>, 4>& K, double theta_def, int skip) {
  HochschildChain c(4);
  std::vector<int> signs;
  const auto perms = permutations_with_sign(signs);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    if (static_cast<int>(k) == skip) continue;
    const auto& s = perms[k];
    const cplx w = signs[k] / 24.0;
    std::array<int, 4> idx{};
    for (idx[0] = 0; idx[0] < 4; ++idx[0])
      for (idx[1] = 0; idx[1] < 4; ++idx[1])
        for (idx[2] = 0; idx[2] < 4; ++idx[2])
          for (idx[3] = 0; idx[3] < 4; ++idx[3]) {
            // idx[beta] is the coordinate index paired with frame index beta.
            bool nonzero = true;
            for (int b = 0; b < 4; ++b) nonzero = nonzero && !K[b][idx[b]].empty();
            if (!nonzero) continue;
            Bimod coeff = K[s[3]][idx[s[3]]];
            for (int q = 2; q >= 0; --q) coeff = bimod_mul(coeff, K[s[q]][idx[s[q]]], theta_def);
            std::vector<ModeFunction> legs;
            for (int q = 0; q < 4; ++q) legs.push_back(leg_u(idx[s[q]]));
            c.add(w, coeff, legs);
          }
  }
  return c;
}

}  // namespace

Bimod bimod_mul(const Bimod& x, const Bimod& y, double theta_def) {
  Bimod out;
  for (const auto& p : x)
    for (const auto& q : y) {
      BimodPair r{star_product(p.left, q.left, theta_def), star_product(q.right, p.right, theta_def)};
      if (r.left.empty() || r.right.empty()) continue;
      out.push_back(std::move(r));
    }
  return out;
}

void HochschildChain::add_key(const ChainKey& k, cplx c) {
  if (c == cplx(0.0)) return;
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == cplx(0.0)) t_.erase(it);
}

void HochschildChain::add(cplx scale, const ModeFunction& left, const ModeFunction& right,
                          const std::vector<ModeFunction>& legs) {
  if (static_cast<int>(legs.size()) != degree_) throw std::invalid_argument("leg count does not match chain degree");
  ChainKey key;
  key.legs.resize(legs.size());
  // Expand multilinearly over the terms of every slot.
  std::function<void(std::size_t, cplx)> rec = [&](std::size_t k, cplx c) {
    if (k == legs.size()) {
      add_key(key, c);
      return;
    }
    for (const auto& t : legs[k].terms()) {
      key.legs[k] = slot_of(t);
      rec(k + 1, c * t.c);
    }
  };
  for (const auto& tl : left.terms())
    for (const auto& tr : right.terms()) {
      key.left = slot_of(tl);
      key.right = slot_of(tr);
      rec(0, scale * tl.c * tr.c);
    }
}

void HochschildChain::add(cplx scale, const Bimod& coeff, const std::vector<ModeFunction>& legs) {
  for (const auto& p : coeff) add(scale, p.left, p.right, legs);
}

double HochschildChain::max_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : t_) m = std::max(m, std::abs(c));
  return m;
}

void HochschildChain::prune(double tol) {
  std::erase_if(t_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

HochschildChain boundary(const HochschildChain& c, double theta_def) {
  const int n = c.degree();
  if (n < 1) throw std::invalid_argument("boundary needs degree >= 1");
  HochschildChain out(n - 1);
  for (const auto& [key, coef] : c.terms()) {
    // (a0 (x) b0°) a1 (x) a2 ... an
    {
      auto [ph, s] = slot_mul(key.left, key.legs[0], theta_def);
      ChainKey k{s, key.right, std::vector<Slot>(key.legs.begin() + 1, key.legs.end())};
      out.add_key(k, coef * ph);
    }
    for (int j = 1; j < n; ++j) {
      auto [ph, s] = slot_mul(key.legs[j - 1], key.legs[j], theta_def);
      ChainKey k{key.left, key.right, {}};
      for (int q = 0; q < n; ++q) {
        if (q == j - 1)
          k.legs.push_back(s);
        else if (q != j)
          k.legs.push_back(key.legs[q]);
      }
      out.add_key(k, coef * ph * (j % 2 ? -1.0 : 1.0));
    }
    // (-1)^n an (a0 (x) b0°) (x) a1 ... a_{n-1}
    {
      auto [ph, s] = slot_mul(key.legs[n - 1], key.left, theta_def);
      ChainKey k{s, key.right, std::vector<Slot>(key.legs.begin(), key.legs.end() - 1)};
      out.add_key(k, coef * ph * (n % 2 ? -1.0 : 1.0));
    }
  }
  return out;
}

HochschildChain cycle_c0(const ManifoldParams& p, int skip_permutation) {
  p.validate();
  const MFMatrix h = symbolic_coframe(p.a);
  std::array<std::array<Bimod, 4>, 4> K;
  const ModeFunction one = ModeFunction::constant(1.0);
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int i = 0; i < 4; ++i) {
      const ModeFunction k = h(alpha, i) * v_factor(i);
      if (!k.empty()) K[alpha][i] = {BimodPair{k, one}};
    }
  return antisymmetrize(K, 0.0, skip_permutation);
}

std::array<std::array<Bimod, 4>, 4> deformed_coefficients(double theta_def) {
  using K = AtomKind;
  const ModeFunction one = ModeFunction::constant(1.0);
  auto lhs = [&](const ModeFunction& f) { return Bimod{BimodPair{f, one}}; };
  // Half-mode square roots of u3 and its conjugate.
  const ModeFunction s = ModeFunction::term(1.0, Mode{1, 0});
  const ModeFunction sb = ModeFunction::term(1.0, Mode{-1, 0});
  const Bimod kappa = {BimodPair{s * cplx(0.5), s}, BimodPair{sb * cplx(0.5), sb}};
  const cplx h2i = 1.0 / (2.0 * I);
  const Bimod rho = {BimodPair{s * h2i, s}, BimodPair{sb * (-h2i), sb}};
  const Bimod inv_u3 = lhs(v_factor(2));
  const Bimod inv_u4 = lhs(v_factor(3));

  std::array<std::array<Bimod, 4>, 4> out;
  out[3][0] = lhs(mf(1.0, 0, {{K::SqrtDelta, -1}}));
  out[0][1] = bimod_mul(lhs(mf(-0.5, 0, {{K::R, 1}})), kappa, theta_def);
  out[1][1] = bimod_mul(lhs(mf(0.5, 0, {{K::R, 1}})), rho, theta_def);
  const Bimod rs = lhs(mf(-0.5, 0, {{K::R, 1}, {K::SinT, 1}}));
  out[0][2] = bimod_mul(bimod_mul(rs, rho, theta_def), inv_u3, theta_def);
  out[1][2] = bimod_mul(bimod_mul(rs, kappa, theta_def), inv_u3, theta_def);
  out[2][2] = bimod_mul(lhs(mf(0.5, 0, {{K::R, 1}, {K::SqrtDelta, 1}, {K::CosT, 1}})), inv_u3, theta_def);
  out[2][3] = bimod_mul(lhs(mf(0.5, 0, {{K::R, 1}, {K::SqrtDelta, 1}})), inv_u4, theta_def);
  return out;
}

HochschildChain cycle_c_theta(const ManifoldParams& p, double theta_def) {
  p.validate();
  return antisymmetrize(deformed_coefficients(theta_def), theta_def, -1);
}

cplx leg_pairing_phase(double theta_def) {
  const ModeFunction x = star_product(
      star_product(star_product(v_factor(2), v_factor(3), theta_def), leg_u(3), theta_def), leg_u(2), theta_def);
  if (x.terms().size() != 1 || !x.terms()[0].mode.is_zero() || !x.terms()[0].profile.is_one())
    throw std::logic_error("leg pairing did not reduce to a constant");
  return x.terms()[0].c;
}

OperatorExpr represent_pi_D(const ManifoldParams& p, const HochschildChain& c, double theta_def) {
  // Group by (right, legs) so each leg product is composed once.
  std::map<std::pair<Slot, std::vector<Slot>>, ModeFunctionBuilder> groups;
  for (const auto& [k, coef] : c.terms()) groups[{k.right, k.legs}].add(coef, k.left.mode, k.left.profile);

  std::map<std::vector<Slot>, OperatorExpr> leg_cache;
  OperatorExpr out;
  for (const auto& [g, left] : groups) {
    const auto& [right, legs] = g;
    auto it = leg_cache.find(legs);
    if (it == leg_cache.end()) {
      OperatorExpr prod = OperatorExpr::identity();
      for (const auto& l : legs) prod = compose(prod, dirac_commutator(left_rep(l.function()), p.a), theta_def);
      it = leg_cache.emplace(legs, std::move(prod)).first;
    }
    const OperatorExpr lr = compose(left_rep(left.build()), right_rep(right.function()), theta_def);
    out += compose(lr, it->second, theta_def);
  }
  return out;
}

ZeroTest chain_is_zero(const ManifoldParams& p, const HochschildChain& c, int n_samples, std::uint64_t seed,
                       double tol) {
  ZeroTest z;
  if (c.terms().empty()) return z;
  std::mt19937_64 rng(seed);
  const int n = c.degree();
  for (int s = 0; s < n_samples; ++s) {
    std::vector<Point> x;
    for (int k = 0; k < n + 2; ++k) x.push_back(random_interior_point(p, rng));
    cplx sum = 0.0;
    for (const auto& [key, coef] : c.terms()) {
      cplx v = coef * key.left.function().eval(p.a, x[0]) * key.right.function().eval(p.a, x[1]);
      for (int k = 0; k < n; ++k) v *= key.legs[k].function().eval(p.a, x[k + 2]);
      sum += v;
    }
    z.residual = std::max(z.residual, std::abs(sum));
  }
  z.zero = z.residual <= tol;
  return z;
}

double pi_d_chi_residual(const ManifoldParams& p, const OperatorExpr& e, const std::vector<Point>& pts) {
  const Mat4& chi = gamma_set().chi;
  double worst = 0.0;
  for (const auto& x : pts) {
    bool saw_zero = false;
    for (const auto& [s, cm] : e.terms()) {
      Mat4 v = cm.eval(p.a, x);
      if (s.is_zero()) {
        v -= chi;
        saw_zero = true;
      }
      worst = std::max(worst, max_abs(v));
    }
    if (!saw_zero) worst = std::max(worst, max_abs(chi));
  }
  return worst;
}

}  // namespace nceh
