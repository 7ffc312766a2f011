#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace nceh {

struct QuadRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

namespace detail {

template <unsigned N>
QuadRule expand_gauss() {
  using G = boost::math::quadrature::gauss<double, N>;
  QuadRule q;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ab[i] == 0.0) {
      q.x.push_back(0.0);
      q.w.push_back(wt[i]);
    } else {
      q.x.push_back(ab[i]);
      q.w.push_back(wt[i]);
      q.x.push_back(-ab[i]);
      q.w.push_back(wt[i]);
    }
  }
  return q;
}

}  // namespace detail

// Gauss-Legendre rule for a fixed menu of orders.
inline const QuadRule& gauss_legendre(int n) {
  static const QuadRule q8 = detail::expand_gauss<8>();
  static const QuadRule q12 = detail::expand_gauss<12>();
  static const QuadRule q16 = detail::expand_gauss<16>();
  static const QuadRule q24 = detail::expand_gauss<24>();
  static const QuadRule q32 = detail::expand_gauss<32>();
  static const QuadRule q48 = detail::expand_gauss<48>();
  static const QuadRule q64 = detail::expand_gauss<64>();
  switch (n) {
    case 8: return q8;
    case 12: return q12;
    case 16: return q16;
    case 24: return q24;
    case 32: return q32;
    case 48: return q48;
    case 64: return q64;
    default: throw std::invalid_argument("unsupported Gauss-Legendre order");
  }
}

// Composite rule on [lo, hi] with equal panels; returns (node, weight) pairs.
inline std::vector<std::pair<double, double>> composite_rule(double lo, double hi, int panels, int order) {
  const QuadRule& q = gauss_legendre(order);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(panels) * q.x.size());
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < q.x.size(); ++i) out.emplace_back(c + 0.5 * h * q.x[i], 0.5 * h * q.w[i]);
  }
  return out;
}

}  // namespace nceh
