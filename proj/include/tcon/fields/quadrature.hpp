#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tcon/fields/operators.hpp"
#include "tcon/geom/surface.hpp"

namespace tcon {

/// Resolution of the tensor rule over the fundamental domain times the fiber.
/// Each polygon side spans a sector of the disc chart centered at the surface
/// center; a sector is cut into `angular` x `radial` cells in (arc length along
/// the side, s / s_side) with s the hyperbolic distance to the center.
/// Each cell carries an order x order Gauss product rule with the hyperbolic
/// Jacobian; the fiber uses `fiber` equispaced nodes.
struct QuadratureSpec {
  int angular = 6;
  int radial = 8;
  int fiber = 8;
  int order = 4;

  QuadratureSpec refined(int factor = 2) const { return {angular * factor, radial * factor, fiber, order}; }
};

struct QuadratureNode {
  Complex z;
  double weight;  // hyperbolic area weight
};

class Quadrature {
 public:
  Quadrature(const FuchsianSurface& surface, QuadratureSpec spec);

  const QuadratureSpec& spec() const { return spec_; }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  std::size_t frame_count() const { return nodes_.size() * spec_.fiber; }
  /// Total area times 2 pi.
  double total_measure() const;
  double area() const;

  /// Sum over base nodes and fiber angles of weight * (2 pi / fiber) * fn(frame).
  Complex integrate(const std::function<Complex(const Frame&)>& fn) const;
  /// Several integrands evaluated together at each frame.
  std::vector<Complex> integrate_many(const std::function<std::vector<Complex>(const Frame&)>& fn,
                                      std::size_t count) const;

 private:
  QuadratureSpec spec_;
  std::vector<QuadratureNode> nodes_;
};

/// <u, w> = integral over SM of tr(u w*).
Complex l2_inner(const SmField& u, const SmField& w, const Quadrature& q);
/// Same, appending a warning when an input's recorded invariance defect
/// exceeds `defect_budget`.
Complex l2_inner(const SmField& u, const SmField& w, const Quadrature& q, double defect_budget,
                 std::vector<std::string>& warnings);

enum class L2Identity { cor1, pestov, pestov_solution };

const char* to_string(L2Identity id);
L2Identity parse_l2_identity(const std::string& name);

struct L2Report {
  std::string identity;
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_residual = 0.0;  // |lhs - rhs| / (|lhs| + |rhs| + 1)
  std::size_t frames = 0;
  std::vector<std::string> warnings;
};

/// Integral identities with <A, B> = Re tr(A B*):
///   cor1             |mu_+ u|^2 = |mu_- u|^2 + i/2 (<K D_V u, u> + <(*F0) u, u> - <u (*F), u>)
///   pestov           2 int <H f, V X f> = int |H f|^2 + int |X f|^2 - int K |V f|^2
///   pestov_solution  2 int <H f, [X f, f]> = 3 int |H f|^2 + int |X f|^2 - int K |V f|^2
/// For cor1 the field is u and ctx carries c, G, A, *F and *F0.
L2Report verify_l2_identity(L2Identity id, const SmField& field, const OperatorContext& ctx, const Quadrature& q,
                            double defect_budget = 1e-8);

}  // namespace tcon
