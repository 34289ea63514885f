#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tcon/forms/atlas.hpp"
#include "tcon/forms/poincare.hpp"
#include "tcon/geom/frame.hpp"

namespace tcon {

/// The point i (2 P - Id) of the adjoint orbit of diag(i, -i), where P is the
/// orthogonal projector onto the line spanned by w. [1:0] maps to diag(i, -i).
CMatrix2 orbit_embed(const CP1Point& w);
CMatrix2 orbit_embed(const Eigen::Vector2cd& w);

enum class Orientation { kHolomorphic, kAntiHolomorphic };

const char* to_string(Orientation o);

/// Holomorphic homogeneous lift of a map to CP^1 and its first two
/// z-derivatives.
struct HomogeneousJet {
  Eigen::Vector2cd xi;
  Eigen::Vector2cd dxi;
  Eigen::Vector2cd ddxi = Eigen::Vector2cd::Zero();
};

/// f: SM -> S, the composition of a Gamma-invariant map M -> CP^1 with
/// orbit_embed. With the holomorphic orientation the map satisfies
/// df(iv) = df(v) f, i.e. 2 df(iv) = [df(v), f]; the anti-holomorphic one
/// composes with complex conjugation on CP^1 and does not.
///
/// Evaluation reduces the base point to the fundamental domain first, so the
/// result is exactly Gamma-invariant as a function on frames.
class OrbitMap {
 public:
  using Source = std::function<HomogeneousJet(Complex z)>;

  struct Jet {
    CMatrix2 f;
    CMatrix2 dz;     // d f / dz
    CMatrix2 dzbar;  // d f / d conj(z)
  };

  OrbitMap(const FuchsianSurface& surface, Source source, Orientation orientation,
           double budget = 0.0, std::string label = "orbit map");

  /// Ratio of the first two seeds of a Poincare evaluator, evaluated through
  /// a Taylor atlas (built here, or shared).
  static OrbitMap from_series(std::shared_ptr<const PoincareEvaluator> series,
                              Orientation orientation = Orientation::kHolomorphic);
  static OrbitMap from_atlas(std::shared_ptr<const PoincareAtlas> atlas,
                             Orientation orientation = Orientation::kHolomorphic);
  /// Constant map with value orbit_embed(w).
  static OrbitMap constant(const FuchsianSurface& surface, const CP1Point& w);

  const FuchsianSurface& surface() const { return *surface_; }
  Orientation orientation() const { return orientation_; }
  const std::string& label() const { return label_; }
  /// Estimated truncation error of the underlying series, relative to |xi|.
  double budget() const { return budget_; }
  /// Same map with the other orientation.
  OrbitMap with_orientation(Orientation o) const;

  /// Homogeneous lift (orientation applied) at z in the fundamental domain.
  HomogeneousJet lift(Complex z0) const;
  Jet jet(Complex z0) const;

  CMatrix2 value(Complex z) const;
  CMatrix2 operator()(const Frame& g) const;
  /// df(v) and df(iv), from the analytic jet.
  CMatrix2 X(const Frame& g) const;
  CMatrix2 H(const Frame& g) const;
  /// (1,0) part of df applied to v: d f/dz * v.
  CMatrix2 eta_plus(const Frame& g) const;

  /// Frame reduced to the fundamental domain (f is evaluated there).
  Frame reduce(const Frame& g) const;

 private:
  const FuchsianSurface* surface_;
  Source source_;
  Orientation orientation_;
  double budget_;
  std::string label_;
};

struct HoloResidualReport {
  double max_residual = 0.0;
  double max_df = 0.0;
  std::vector<double> residuals;  // per evaluated sample
  std::vector<Frame> frames;      // samples that were evaluated
  int skipped = 0;
  std::vector<std::string> notes;
};

/// max over samples of |2 df(iv) - [df(v), f]| / max(1, |df|), with df from
/// central differences along X and H. Samples at indeterminate points are
/// skipped and noted.
HoloResidualReport holo_residual(const OrbitMap& f, const std::vector<Frame>& samples,
                                 FdStep step = {1e-3});

}  // namespace tcon
