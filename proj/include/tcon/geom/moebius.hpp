#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "tcon/core.hpp"

namespace tcon {

/// An element of PSL(2,R): a real unimodular 2x2 matrix taken up to sign.
///
/// Construction renormalizes the determinant to one and picks the sign whose
/// first significant entry is positive, so two representatives of the same
/// isometry compare equal entrywise.
template <typename Scalar>
class Moebius {
 public:
  using Matrix = Eigen::Matrix<Scalar, 2, 2>;
  using ComplexScalar = std::complex<Scalar>;

  Moebius() : m_(Matrix::Identity()) {}
  Moebius(Scalar a, Scalar b, Scalar c, Scalar d) {
    m_ << a, b, c, d;
    normalize();
  }
  explicit Moebius(const Matrix& m) : m_(m) { normalize(); }

  static Moebius identity() { return Moebius(); }

  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }
  const Matrix& matrix() const { return m_; }

  Scalar trace() const { return m_(0, 0) + m_(1, 1); }
  Scalar abs_trace() const { return std::abs(trace()); }
  Scalar det() const { return m_.determinant(); }

  Moebius inverse() const {
    Matrix inv;
    inv << d(), -b(), -c(), a();
    return Moebius(inv, kRaw);
  }

  /// Automorphy factor c*z + d.
  ComplexScalar cocycle(ComplexScalar z) const { return c() * z + d(); }

  friend Moebius operator*(const Moebius& lhs, const Moebius& rhs) {
    return Moebius(Matrix(lhs.m_ * rhs.m_));
  }

 private:
  struct RawTag {};
  static constexpr RawTag kRaw{};
  Moebius(const Matrix& m, RawTag) : m_(m) { fix_sign(); }

  void normalize() {
    const Scalar det = m_.determinant();
    if (!(det > Scalar(0))) {
      throw Error(ErrorKind::kDomain, "Moebius matrix must have positive determinant");
    }
    m_ /= std::sqrt(det);
    fix_sign();
  }

  void fix_sign() {
    const Scalar scale = m_.cwiseAbs().maxCoeff();
    const Scalar cut = scale * Scalar(1e-12);
    for (int k = 0; k < 4; ++k) {
      const Scalar v = m_(k / 2, k % 2);
      if (std::abs(v) > cut) {
        if (v < Scalar(0)) m_ = -m_;
        return;
      }
    }
  }

  Matrix m_;
};

using MoebiusD = Moebius<double>;

/// Isometric action z -> (a z + b) / (c z + d) on the upper half plane.
template <typename Scalar>
std::complex<Scalar> mobius_apply(const Moebius<Scalar>& g, std::complex<Scalar> z) {
  const std::complex<Scalar> den = g.c() * z + g.d();
  if (std::abs(den) < Scalar(1e-14)) {
    throw Error(ErrorKind::kSingularInput, "degenerate denominator in Moebius action");
  }
  return (g.a() * z + g.b()) / den;
}

/// Distance between two elements of PSL(2,R), minimized over the sign.
template <typename Scalar>
Scalar sign_distance(const Moebius<Scalar>& g, const Moebius<Scalar>& h) {
  const Scalar plus = (g.matrix() - h.matrix()).cwiseAbs().maxCoeff();
  const Scalar minus = (g.matrix() + h.matrix()).cwiseAbs().maxCoeff();
  return std::min(plus, minus);
}

template <typename Scalar>
bool approx_equal(const Moebius<Scalar>& g, const Moebius<Scalar>& h, Scalar tol) {
  return sign_distance(g, h) <= tol;
}

/// cosh of the hyperbolic distance between two points of the upper half plane.
inline double cosh_distance(Complex z, Complex w) {
  return 1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag());
}

inline double hyperbolic_distance(Complex z, Complex w) {
  return std::acosh(std::max(1.0, cosh_distance(z, w)));
}

/// Translation length 2 arccosh(|tr|/2) of a hyperbolic element.
inline double translation_length(const MoebiusD& g) {
  return 2.0 * std::acosh(std::max(1.0, g.abs_trace() / 2.0));
}

}  // namespace tcon
