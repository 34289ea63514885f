#pragma once

#include <memory>
#include <vector>

#include "tcon/forms/poincare.hpp"

namespace tcon {

/// Value and first two z-derivatives of a holomorphic form.
struct FormJet {
  Complex value;
  Complex d1;
  Complex d2;
};

struct AtlasOptions {
  double cover_radius = 0.55;   // every domain point is this close to a chart center
  double sample_radius = 1.2;   // hyperbolic radius of the sampling circle
  int nodes = 80;               // samples per circle
  int degree = 56;              // kept Taylor degree
};

/// Local Taylor models of the forms of a Poincare evaluator over the
/// fundamental domain.
///
/// Around a chart center p the form is written G(w) = P(z) (2 i Im p)^(k/2) (1-w)^(-k)
/// with w = (z - p)/(z - conj p), which is holomorphic on the unit disc with
/// |G(w)| (1-|w|^2)^(k/2) = |P(z)| Im(z)^(k/2). Coefficients come from an FFT
/// of samples on a circle around p; each sample point is reduced to the domain
/// and evaluated through the automorphy factor, so every sample carries the
/// truncation error of a domain point.
class PoincareAtlas {
 public:
  explicit PoincareAtlas(std::shared_ptr<const PoincareEvaluator> series, AtlasOptions options = {});

  const PoincareEvaluator& series() const { return *series_; }
  std::size_t chart_count() const { return centers_.size(); }
  const std::vector<Complex>& centers() const { return centers_; }

  /// Jets of all seeds at z, which must lie in the closed domain up to the
  /// cover margin.
  std::vector<FormJet> jet(Complex z) const;

  /// Largest series error estimate over the sample points, in the invariant
  /// norm. Interpolation does not amplify it by more than a small factor.
  double sample_error() const { return sample_error_; }

 private:
  std::size_t nearest(Complex z) const;

  std::shared_ptr<const PoincareEvaluator> series_;
  AtlasOptions options_;
  std::vector<Complex> centers_;
  // coefficients_[chart][seed][n]
  std::vector<std::vector<std::vector<Complex>>> coefficients_;
  double sample_error_ = 0.0;
};

}  // namespace tcon
