#pragma once

// Hochschild chains with coefficients in A (x) A°, for A the deformed algebra.
// Chains are stored fully expanded: each elementary term is a coefficient times
// single-mode monomials in every slot, so identical terms merge exactly.

#include "nceh/modealg.hpp"
#include "nceh/opalg.hpp"

#include <map>
#include <vector>

namespace nceh {

struct Slot {
  Mode mode;
  Profile profile;
  auto operator<=>(const Slot&) const = default;
  ModeFunction function() const { return ModeFunction::term(1.0, mode, profile); }
};

struct ChainKey {
  Slot left;
  Slot right;
  std::vector<Slot> legs;
  auto operator<=>(const ChainKey&) const = default;
};

// Finite sum of (left (x) right°) pairs.
struct BimodPair {
  ModeFunction left;
  ModeFunction right;
};
using Bimod = std::vector<BimodPair>;

// (a (x) b°)(a' (x) b'°) = (a x a') (x) (b' x b)°.
Bimod bimod_mul(const Bimod& x, const Bimod& y, double theta_def);

class HochschildChain {
 public:
  explicit HochschildChain(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<ChainKey, cplx>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }

  // Adds scale * (left (x) right°) (x) legs, expanded multilinearly.
  void add(cplx scale, const ModeFunction& left, const ModeFunction& right, const std::vector<ModeFunction>& legs);
  void add(cplx scale, const Bimod& coeff, const std::vector<ModeFunction>& legs);
  void add_key(const ChainKey& k, cplx c);

  // Largest |coefficient| after merging.
  double max_coeff() const;
  void prune(double tol);

 private:
  int degree_;
  std::map<ChainKey, cplx> t_;
};

HochschildChain boundary(const HochschildChain& c, double theta_def);

// Commutative cycle built from K = H V. skip_permutation in [0, 24) drops that
// permutation from the antisymmetrized sum (negative control).
HochschildChain cycle_c0(const ManifoldParams& p, int skip_permutation = -1);

// The closed-form bimodule coefficients K_i^alpha as a 4x4 table [alpha][i].
std::array<std::array<Bimod, 4>, 4> deformed_coefficients(double theta_def);
HochschildChain cycle_c_theta(const ManifoldParams& p, double theta_def);

// (-i/u3) x (-i/u4) x u4 x u3.
cplx leg_pairing_phase(double theta_def);

// L_{a0} R_{b0} [D, L_{a1}] ... [D, L_{an}].
OperatorExpr represent_pi_D(const ManifoldParams& p, const HochschildChain& c, double theta_def);

struct ZeroTest {
  bool zero = true;
  double residual = 0.0;
};

// Evaluates the chain as a function on (M^{n+2}) at independent random points.
// A nonzero element of the algebraic tensor product is nonzero as a function on
// the product space, so a vanishing sample set is evidence of zero; a nonzero
// tensor vanishes on all samples only on a measure-zero set of tuples.
ZeroTest chain_is_zero(const ManifoldParams& p, const HochschildChain& c, int n_samples, std::uint64_t seed,
                       double tol = 1e-10);

// Max over points of |C_0(x) - chi| and |C_s(x)| for s != 0.
double pi_d_chi_residual(const ManifoldParams& p, const OperatorExpr& e, const std::vector<Point>& pts);

}  // namespace nceh
