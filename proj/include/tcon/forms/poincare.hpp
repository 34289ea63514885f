#pragma once

#include <memory>
#include <vector>

#include "tcon/geom/group_ball.hpp"
#include "tcon/geom/surface.hpp"

namespace tcon {

/// Parameters of a holomorphic Poincare series
///
///   P(z) = sum over gamma of (c z + d)^(-k) s(gamma z),
///   s(z) = q(w) * Im(c0)^(-k/2) * (2 i Im(c0) / (z - conj(c0)))^k,
///
/// where w = (z - c0) / (z - conj(c0)) is the disc coordinate centered at
/// the surface center c0 and q is a polynomial. The seed s is a rational
/// function of z, bounded on the upper half plane, normalized so that
/// |s(c0)| Im(c0)^(k/2) = |q(0)|.
struct PoincareSeries {
  int weight = 12;
  std::vector<Complex> seed{1.0};  // coefficients of q, lowest degree first
  int truncation = 12;             // word length cap W
  /// Target for the invariant tail |P - P_trunc| Im(z)^(k/2) on the
  /// fundamental domain. Sets the displacement radius of the summed words.
  double drop_tolerance = 1e-13;
};

struct SeriesValue {
  Complex value;
  Complex derivative;
  double err = 0.0;  // tail estimate for the value
};

/// Evaluates one or more Poincare series of a common weight and truncation
/// on a surface, sharing the word ball between seeds.
///
/// The summed words are those of length <= W whose displacement d(c0, g c0)
/// is at most a radius R fixed by the drop tolerance. When the length cap
/// does not bind, the error is the lattice-count tail beyond R,
///   qmax 2^k e^{k delta/2} e^{-(k/2-1) R} / (4 (k/2-1)),  delta = d(c0, z),
/// otherwise it is a geometric extrapolation of the last three word-length
/// shells.
class PoincareEvaluator {
 public:
  PoincareEvaluator(const FuchsianSurface& surface, int weight, std::vector<std::vector<Complex>> seeds,
                    int truncation = 12, double drop_tolerance = 1e-13);
  PoincareEvaluator(const FuchsianSurface& surface, const PoincareSeries& series);

  int weight() const { return weight_; }
  int truncation() const { return truncation_; }
  double radius() const { return radius_; }
  /// True if the word-length cap removed words inside the radius.
  bool length_limited() const { return length_limited_; }
  std::size_t seed_count() const { return seeds_.size(); }
  std::size_t term_count() const { return terms_.size(); }
  const FuchsianSurface& surface() const { return *surface_; }

  /// Direct truncated sum at z (any point of H). Throws kConvergence if z is
  /// too far from c0 for the ball, or, when length limited, if the shell sums
  /// of the last three word lengths do not decay.
  std::vector<SeriesValue> evaluate(Complex z) const;
  SeriesValue evaluate_one(Complex z, std::size_t seed = 0) const { return evaluate(z)[seed]; }

  /// Sum of |term| Im(z)^(k/2) per word length, for the first seed.
  std::vector<double> shell_sums(Complex z) const;

 private:
  struct Term {
    double a, b, c, d;
    int length;
  };
  void check_weight() const;

  const FuchsianSurface* surface_;
  int weight_;
  std::vector<std::vector<Complex>> seeds_;
  int truncation_;
  std::vector<Term> terms_;
  double qmax_ = 0.0;
  double radius_ = 0.0;
  bool length_limited_ = false;
};

SeriesValue poincare_eval(const PoincareEvaluator& series, Complex z, std::size_t seed = 0);

/// A point of CP^1 as a unit homogeneous pair.
struct CP1Point {
  Complex z0, z1;
};

/// [P1(z) : P2(z)] for the first two seeds of a common-weight evaluator.
/// Throws kIndeterminate if both invariant magnitudes |P| Im(z)^(k/2) are
/// below 1e-13.
CP1Point meromorphic_map(const PoincareEvaluator& series, Complex z);

/// Fubini-Study (chordal) distance in [0, 1].
double cp1_distance(const CP1Point& a, const CP1Point& b);

}  // namespace tcon
