#pragma once

#include <map>
#include <vector>

#include "tcon/fields/sm_field.hpp"
#include "tcon/geom/group_ball.hpp"

namespace tcon {

/// Compactly supported radial bump b(z) = amplitude * exp(1 - 1/(1 - t)),
/// t = (cosh d(z, center) - 1) / (cosh radius - 1), zero for t >= 1.
struct BumpSpec {
  Complex center = kI;
  double radius = 1.0;
  double amplitude = 1.0;
};

/// Profile and its derivative in s = cosh d.
double bump_profile(const BumpSpec& b, double s);
double bump_profile_ds(const BumpSpec& b, double s);

/// Gamma-periodization rho(z) = sum over gamma of sum over bumps b(gamma z)
/// of real bumps, restricted to words of length <= max_length.
///
/// Evaluation reduces z to the fundamental domain and sums the images of the
/// bump centers that can reach it. With an uncapped word length the result
/// is exactly invariant; `invariance_defect` compares raw sums at paired
/// points of opposite sides, which only differ when the cap removed images.
class InvariantScalar {
 public:
  InvariantScalar(const FuchsianSurface& surface, std::vector<BumpSpec> bumps, int max_length = 1 << 20);

  const FuchsianSurface& surface() const { return *surface_; }
  const std::vector<BumpSpec>& bumps() const { return bumps_; }

  double value(Complex z) const;
  /// d rho / dz.
  Complex dz(Complex z) const;
  /// dz(z) * v: the (1,0) part of d rho on the frame's unit vector.
  Complex one_zero(const Frame& g) const;

  double invariance_defect() const { return defect_; }
  std::size_t image_count() const { return images_.size(); }

 private:
  struct Image {
    Complex point;
    int bump;
  };
  double raw(Complex z0) const;

  const FuchsianSurface* surface_;
  std::vector<BumpSpec> bumps_;
  std::vector<Image> images_;
  double defect_ = 0.0;
};

/// Invariant section sum over gamma of b(gamma g i) * sum_m M_m phase(gamma g)^m
/// built from bumps and fiber coefficient matrices M_m. Raises kAveraging if
/// the support is too large for the averaging ball.
SmField invariant_bump(const FuchsianSurface& surface, const std::vector<BumpSpec>& bumps,
                       const std::map<int, CMatrix>& fiber_modes, int max_length = 1 << 20);

/// Random smooth section with fiber modes |m| <= band whose coefficients are
/// quadratic polynomials in the disc coordinate of the base point. Not
/// Gamma-invariant; for pointwise identities.
SmField random_section(const FuchsianSurface& surface, int rank, int band, unsigned seed, bool skew = false);

/// Smallest positive integer l with -l K + l2_j - l1_k > 0 and
/// -l K - l2_j + l1_k > 0 for all samples and index pairs, where l1, l2 are
/// eigenvalues of i*F for the two connections at the same sample point.
int degree_bound(const std::vector<Eigen::VectorXd>& f1_eigs, const std::vector<Eigen::VectorXd>& f2_eigs,
                 double curvature, int rank);

/// Same from the Hermitian matrices i*F; cross-checks the result against the
/// n^2 x n^2 Kronecker form of both operators and throws kConstruction if
/// they disagree.
int degree_bound_from_matrices(const std::vector<CMatrix>& f1, const std::vector<CMatrix>& f2, double curvature);

}  // namespace tcon
