#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "tcon/geom/moebius.hpp"

namespace tcon {

/// A point of the unit tangent bundle, i.e. an element g of PSL(2,R).
///
/// The base point is g(i) and the unit vector is the image under dg of the
/// upward unit vector at i. Tangent vectors are reported in the Euclidean
/// complex coordinate of the upper half plane, so |tangent()| = Im(base_point()).
struct Frame {
  MoebiusD g;

  Frame() = default;
  explicit Frame(const MoebiusD& element) : g(element) {}

  Complex base_point() const { return mobius_apply(g, kI); }
  Complex tangent() const {
    const Complex j = g.cocycle(kI);
    return kI / (j * j);
  }
  /// e^{i theta} with theta the angle of the unit vector measured from vertical.
  Complex fiber_phase() const {
    const Complex v = tangent();
    return v / (kI * std::abs(v));
  }

  /// Frame at base point z whose unit vector is e^{i theta} times vertical.
  static Frame at(Complex z, double theta = 0.0);
};

/// The canonical frame fields of the unit tangent bundle: geodesic (X),
/// horizontal (H) and vertical (V).
///
/// Convention: with X = diag(1/2,-1/2), H = [[0,-1/2],[-1/2,0]] and
/// V = [[0,1/2],[-1/2,0]] acting by right translation one has
/// [V,X] = H, [V,H] = -X, [X,H] = -V, i.e. curvature K = -1. V rotates the
/// unit vector counterclockwise, X(f)(x,v) = df_x(v) and H(f)(x,v) = df_x(iv).
enum class FrameField { X, H, V };

const char* to_string(FrameField field);

/// Lie algebra generator of the field (trace-free real 2x2 matrix).
Eigen::Matrix2d generator(FrameField field);

/// exp(t * generator(field)) in closed form.
MoebiusD one_parameter_subgroup(FrameField field, double t);

/// Right translation by the one-parameter subgroup of `field`.
inline Frame frame_flow(const Frame& frame, FrameField field, double t) {
  return Frame(frame.g * one_parameter_subgroup(field, t));
}

/// Step used by the central finite-difference stencils.
struct FdStep {
  double h = 1e-4;
};

/// Fourth-order central difference of `fn` along the flow of `field`.
///
/// `fn` maps a Frame to anything supporting +, - and scalar multiplication
/// (double, Complex, Eigen matrices). `order` is 1 or 2.
template <typename Fn>
auto directional_derivative(const Fn& fn, const Frame& frame, FrameField field, int order = 1,
                            FdStep step = {}) {
  const double h = step.h;
  auto at = [&](double t) { return fn(frame_flow(frame, field, t)); };
  using Value = std::decay_t<decltype(at(0.0))>;
  if (order == 1) {
    Value r = (at(-2.0 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2.0 * h)) / (12.0 * h);
    return r;
  }
  if (order == 2) {
    Value r = (-at(2.0 * h) + 16.0 * at(h) - 30.0 * at(0.0) + 16.0 * at(-h) - at(-2.0 * h)) /
              (12.0 * h * h);
    return r;
  }
  throw Error(ErrorKind::kContract, "directional_derivative supports order 1 or 2");
}

}  // namespace tcon
