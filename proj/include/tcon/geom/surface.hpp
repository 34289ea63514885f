#pragma once

#include <string>
#include <vector>

#include "tcon/geom/frame.hpp"
#include "tcon/geom/moebius.hpp"

namespace tcon {

/// A word in the generators: letter k+1 is generator k, -(k+1) its inverse.
using Word = std::vector<int>;

/// Letters a, b, c, ... for generators and A, B, C, ... for their inverses.
std::string word_to_string(const Word& word);
Word parse_word(const std::string& text);
Word inverse_word(const Word& word);

/// A cocompact torsion-free Fuchsian group together with its Dirichlet
/// fundamental polygon centered at `center`.
///
/// The side pairings are the generators and their inverses; every side
/// pairing must contribute exactly one side of the polygon. Geometry of the
/// polygon is kept in the disc chart w = (z - c) / (z - conj(c)) centered at c.
class FuchsianSurface {
 public:
  struct Side {
    int letter;            // side pairing s with the side the bisector of c and s(c)
    Complex circle_center; // disc chart
    double circle_radius;
    double phi_begin;      // angular sector in the disc chart, phi_begin < phi_end
    double phi_end;
  };

  FuchsianSurface(std::vector<MoebiusD> generators, Word relation, int genus,
                  Complex center = kI);

  const std::vector<MoebiusD>& generators() const { return generators_; }
  const Word& relation() const { return relation_; }
  int genus() const { return genus_; }
  double curvature() const { return -1.0; }
  Complex center() const { return center_; }
  int rank() const { return static_cast<int>(generators_.size()); }

  const MoebiusD& letter(int l) const;
  std::vector<int> side_letters() const;
  MoebiusD evaluate(const Word& word) const;

  /// Max entry of (relation - Id), minimized over sign.
  double relation_defect() const;
  /// Hyperbolic area of the polygon integrated numerically.
  double area() const { return area_; }
  /// Expected area 4 pi (g - 1) from Gauss-Bonnet.
  double gauss_bonnet_area() const { return 4.0 * kPi * (genus_ - 1); }

  const std::vector<Side>& sides() const { return sides_; }
  /// Polygon vertices in the upper half plane, counterclockwise.
  std::vector<Complex> vertices() const;
  double circumradius() const { return circumradius_; }
  double inradius() const { return inradius_; }

  Complex to_disc(Complex z) const;
  Complex from_disc(Complex w) const;
  /// Euclidean radius in the disc chart where the ray at angle phi meets `side`.
  static double boundary_radius(const Side& side, double phi);

  /// True if z lies in the closed polygon up to `tol` in hyperbolic distance.
  bool contains(Complex z, double tol = 1e-12) const;

 private:
  void build_polygon();

  std::vector<MoebiusD> generators_;
  std::vector<MoebiusD> inverses_;
  Word relation_;
  int genus_;
  Complex center_;
  std::vector<Side> sides_;
  std::vector<Complex> disc_vertices_;
  double area_ = 0.0;
  double circumradius_ = 0.0;
  double inradius_ = 0.0;
};

/// The Bolza surface: regular hyperbolic octagon with angles pi/4, opposite
/// sides paired, generator trace 2(1 + sqrt 2), centered at i. Throws a
/// construction error if the relation or area checks fail.
FuchsianSurface bolza_surface();

/// Relation and Gauss-Bonnet checks; throws kConstruction with the defects.
void verify_surface(const FuchsianSurface& surface, double relation_tol = 1e-10,
                    double area_tol = 1e-6);

struct DomainReduction {
  Complex z0;        // point in the closed polygon
  MoebiusD element;  // z = element(z0)
  Word word;         // evaluates to element
};

/// Dirichlet reduction: repeatedly apply the side pairing that brings z
/// closest to the center.
DomainReduction reduce_to_domain(const FuchsianSurface& surface, Complex z, int max_steps = 1000);

struct FrameReduction {
  Frame frame0;      // base point in the polygon
  MoebiusD element;  // frame = element * frame0
};

FrameReduction reduce_frame(const FuchsianSurface& surface, const Frame& frame,
                            int max_steps = 1000);

}  // namespace tcon
