#pragma once

#include <string>
#include <vector>

#include "tcon/connections/connection.hpp"
#include "tcon/geom/geodesics.hpp"

namespace tcon {

struct TransportOptions {
  double tol = 1e-8;  // global error target for one transport
  double initial_step = 0.05;
  double min_step = 1e-7;
  double max_step = 0.25;
};

struct TransportResult {
  CMatrix d;
  int steps = 0;
  double error_estimate = 0.0;  // sum of accepted local error estimates
  double unitarity_defect = 0.0;
};

/// Solution at time T of dD/dt = -G_X(flow_X(g0, t)) D, D(0) = Id. RK4 with
/// step doubling and Richardson extrapolation; every accepted step is
/// projected back to the unitary group. Negative T integrates backwards.
TransportResult transport(const ConnectionOnSM& conn, const Frame& g0, double t_end, TransportOptions opts = {});
inline CMatrix parallel_transport(const ConnectionOnSM& conn, const Frame& g0, double t_end,
                                  TransportOptions opts = {}) {
  return transport(conn, g0, t_end, opts).d;
}

struct GeodesicHolonomy {
  std::string word;
  double length = 0.0;
  CMatrix holonomy;
  double defect = 0.0;  // |Hol - Id| in operator norm
  int steps = 0;
  double ode_error = 0.0;
};

/// Error budget components; `total` is what defects are compared against.
struct HolonomyBudget {
  double ode = 0.0;
  double series = 0.0;
  double finite_difference = 0.0;
  double total() const { return ode + series + finite_difference; }
};

struct HolonomyReport {
  std::string connection;
  std::vector<GeodesicHolonomy> geodesics;
  double max_defect = 0.0;
  double max_unitarity_defect = 0.0;
  HolonomyBudget budget;
  bool within_budget() const { return max_defect <= budget.total(); }
};

/// Holonomy along the axis frame of each geodesic over one period. The ODE
/// part of the budget is filled in from the transport tolerance; the other
/// parts are the caller's.
HolonomyReport transparency_report(const ConnectionOnSM& conn, const std::vector<ClosedGeodesic>& geodesics,
                                   TransportOptions opts = {}, HolonomyBudget budget = {});

struct AbelianAngle {
  double raw = 0.0;      // integral of theta over one period
  double reduced = 0.0;  // raw mod 2 pi, in (-pi, pi]
};

/// Integral of the real 1-form theta (a rank-one field; the real part of its
/// value is theta(v)) along the closed geodesic, by composite Gauss-Legendre.
AbelianAngle abelian_holonomy_angle(const SmField& theta, const ClosedGeodesic& gamma, int panels = 64);

struct Reconstruction {
  CMatrix f;
  double truncation_bound = 0.0;  // e^{-T} max |F(X,H)| on the sampled orbit
  double max_curvature = 0.0;
  double quadrature_error = 0.0;  // sum of accepted panel-bisection differences
};

/// (1/2) [int_0^T e^{-s} F(X,H)(flow_X(g, s)) ds + int_{-T}^0 e^{s} F(X,H)(flow_X(g, s)) ds]
/// with F(X,H) given as a field. Panels are bisected until the Gauss rule
/// agrees with its two halves to tol per unit time. For a connection in B-gauge (B(X) = 0,
/// K = -1) this is B(V).
Reconstruction reconstruct_f_from_curvature(const SmField& curvature, const FuchsianSurface& surface, const Frame& g,
                                            double t_trunc = 20.0, double panel_length = 0.5, int order = 8,
                                            double tol = 1e-9);
Reconstruction reconstruct_f_from_curvature(const ConnectionOnSM& conn, const FuchsianSurface& surface, const Frame& g,
                                            double t_trunc = 20.0, FdStep step = {1e-3});

}  // namespace tcon
