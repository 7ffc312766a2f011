#pragma once

#include "nceh/core.hpp"
#include "nceh/modealg.hpp"

#include <functional>
#include <memory>

namespace nceh {

// C^4-valued field in the chart-N trivialization with coordinate derivatives.
class SpinorField {
 public:
  virtual ~SpinorField() = default;
  virtual Vec4 value(const Point& x) const = 0;
  virtual Vec4 d(const Point& x, int i) const = 0;
};

using FieldPtr = std::shared_ptr<const SpinorField>;

// Point moved along coordinate i by h (angles rewrapped).
Point shifted(const Point& x, int i, double h);

// Central differences in h and h/2 combined by Richardson extrapolation.
Vec4 richardson_derivative(const std::function<Vec4(const Point&)>& f, const Point& x, int i, double h);

// Four mode-function components; derivatives are exact.
class ModeSpinor final : public SpinorField {
 public:
  ModeSpinor(double a, std::array<ModeFunction, 4> comps);
  Vec4 value(const Point& x) const override;
  Vec4 d(const Point& x, int i) const override;
  const std::array<ModeFunction, 4>& components() const { return c_; }
  double a() const { return a_; }

 private:
  double a_;
  std::array<ModeFunction, 4> c_;
  std::array<std::array<ModeFunction, 4>, 4> dc_;  // dc_[i][k] = d_i c_k
};

// Value-only field; derivatives by Richardson-extrapolated central differences.
class FdField final : public SpinorField {
 public:
  explicit FdField(std::function<Vec4(const Point&)> f, double h = 1e-3) : f_(std::move(f)), h_(h) {}
  Vec4 value(const Point& x) const override { return f_(x); }
  Vec4 d(const Point& x, int i) const override { return richardson_derivative(f_, x, i, h_); }

 private:
  std::function<Vec4(const Point&)> f_;
  double h_;
};

// x -> M(x) psi(x) for a matrix field with known derivatives, or pointwise
// constant matrix.
class MatrixTimesField final : public SpinorField {
 public:
  MatrixTimesField(Mat4 m, FieldPtr inner) : m_(std::move(m)), inner_(std::move(inner)) {}
  Vec4 value(const Point& x) const override { return m_ * inner_->value(x); }
  Vec4 d(const Point& x, int i) const override { return m_ * inner_->d(x, i); }

 private:
  Mat4 m_;
  FieldPtr inner_;
};

// x -> C conj(psi(x)) (antilinear constant map).
class AntilinearField final : public SpinorField {
 public:
  AntilinearField(Mat4 c, FieldPtr inner) : c_(std::move(c)), inner_(std::move(inner)) {}
  Vec4 value(const Point& x) const override { return c_ * inner_->value(x).conjugate(); }
  Vec4 d(const Point& x, int i) const override { return c_ * inner_->d(x, i).conjugate(); }

 private:
  Mat4 c_;
  FieldPtr inner_;
};

// x -> f(x) psi(x) for a scalar mode function f.
class ScalarTimesField final : public SpinorField {
 public:
  ScalarTimesField(double a, ModeFunction f, FieldPtr inner);
  Vec4 value(const Point& x) const override;
  Vec4 d(const Point& x, int i) const override;

 private:
  double a_;
  ModeFunction f_;
  std::array<ModeFunction, 4> df_;
  FieldPtr inner_;
};

// Seeded corpus of analytic test fields: components p(1/r) t(theta)
// e^{i(m phi + n psi)}, deg p <= 3, t in {1, sin, cos}, |m|, |n| <= 2, plus a
// compactly supported radial bump.
std::vector<std::shared_ptr<const ModeSpinor>> spinor_corpus(double a, std::uint64_t seed, int count = 10);

}  // namespace nceh
