#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcon/fields/sm_field.hpp"

namespace tcon {

/// A unitary connection on the trivialized pull-back bundle over SM, given
/// by its values on the frame fields: G_X, G_H and the vertical part G_V.
///
/// G_V is the constant c for connections pulled back from M. A non-constant
/// vertical field is allowed for gauges that do not descend (for example
/// B-gauge, where G_V = f).
class ConnectionOnSM {
 public:
  ConnectionOnSM(SmField g_x, SmField g_h, CMatrix c, int genus, std::string label = "connection");

  int rank() const { return static_cast<int>(c_.rows()); }
  const SmField& g_x() const { return g_x_; }
  const SmField& g_h() const { return g_h_; }
  const CMatrix& c() const { return c_; }
  int genus() const { return genus_; }
  const std::string& label() const { return label_; }

  /// G_V as a field: the vertical override if set, else constant c.
  SmField g_v() const;
  bool constant_vertical() const { return !g_v_.has_value(); }
  ConnectionOnSM with_vertical(SmField g_v) const;
  ConnectionOnSM with_label(std::string label) const;

  /// (2g - 2) tr(i c), rounded.
  long chern_number() const;
  /// |exp(2 pi c) - Id| in operator norm.
  double periodicity_defect() const;
  /// Largest |G + G*| of G_X, G_H over frames, and |c + c*|.
  double skew_defect(const std::vector<Frame>& frames) const;

 private:
  SmField g_x_, g_h_;
  CMatrix c_;
  std::optional<SmField> g_v_;
  int genus_;
  std::string label_;
};

/// c = diag(-i s_1, ..., -i s_n), G_X = G_H = 0. With this sign s = -1 is
/// the tangent bundle with its Levi-Civita connection in the trivialization
/// by the unit vector itself.
ConnectionOnSM ghost(const std::vector<int>& s, int genus);

/// Largest operator norm over frames of F(V, X) and F(V, H). For constant
/// G_V = c these are V(G_X) + [c, G_X] - G_H and V(G_H) + [c, G_H] + G_X.
double descent_defect(const ConnectionOnSM& conn, const std::vector<Frame>& frames, FdStep step = {1e-3});

/// F(X, H) = X(G_H) - H(G_X) - K G_V + [G_X, G_H] at g (K = -1).
CMatrix curvature_XH(const ConnectionOnSM& conn, const Frame& g, FdStep step = {1e-3});
SmField curvature_XH_field(const ConnectionOnSM& conn, FdStep step = {1e-3});

/// G' = r* dr + r* G r. Requires r unitary at the check frames; if
/// `require_descending`, also D_V r = V(r) + [c, r] = 0 there, and then G'_V = c.
/// Otherwise G'_V = r* V(r) + r* G_V r is stored as a vertical override.
ConnectionOnSM gauge_transform(const ConnectionOnSM& conn, const SmField& r, const std::vector<Frame>& check_frames,
                               bool require_descending = true, FdStep step = {1e-3}, double tol = 1e-8);

/// Adds eps * Q(x, v) to G_X and eps * Q(x, iv) to G_H, i.e. the pull-back of
/// the 1-form Q, which must have fiber modes +-1 only.
ConnectionOnSM perturb(const ConnectionOnSM& conn, const SmField& q, double eps);

/// exp of a skew-Hermitian matrix through its Hermitian eigendecomposition.
CMatrix unitary_exp(const CMatrix& skew);
/// Unitary polar factor.
CMatrix polar_unitary(const CMatrix& m);

}  // namespace tcon
