#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tcon/connections/connection.hpp"
#include "tcon/fields/bump.hpp"
#include "tcon/forms/orbit_map.hpp"

namespace tcon {

struct Projectors {
  CMatrix2 lower;  // P_L, eigenvalue i
  CMatrix2 upper;  // P_U, eigenvalue -i
};

/// P_L = (Id - i fx) / 2, P_U = (Id + i fx) / 2. Throws kDomain unless
/// fx is skew-Hermitian with fx^2 = -Id within tol.
Projectors eigenprojectors(const CMatrix2& fx, double tol = 1e-8);

/// Gamma-invariant scalar used for alpha: `count` bumps of the given radius
/// with centers uniform in the fundamental domain and amplitudes in [0.5, 1.5].
std::shared_ptr<const InvariantScalar> seeded_rho(const FuchsianSurface& surface, unsigned seed, int count = 16,
                                                  double radius = 1.5);

/// Where beta-tilde comes from.
struct BetaSource {
  enum class Kind { kDifferential, kSandwich } kind = Kind::kDifferential;
  /// kSandwich: beta-tilde = P_U m P_L (d rho2 / dz) v.
  std::shared_ptr<const InvariantScalar> rho2;
  CMatrix2 m = CMatrix2::Zero();

  static BetaSource differential() { return {}; }
  static BetaSource sandwich(std::shared_ptr<const InvariantScalar> rho2, const CMatrix2& m);
};

struct AlphaBetaOptions {
  double delta = 1e-6;      // lower bound for |alpha~|^2 + |beta~|^2
  double alpha_scale = 1.0; // alpha~ = alpha_scale * (d rho / dz) v
  int grid_angular = 6;     // separation check grid (quadrature base nodes)
  int grid_radial = 6;
  int refine = 24;          // smallest grid values refined by local search
};

/// Normalized alpha (rank one, fiber mode +1) and beta (2x2, mode +1,
/// P_U beta P_L = beta), evaluated from one domain reduction per frame.
class AlphaBeta {
 public:
  struct Value {
    Complex alpha;
    CMatrix2 beta;
    CMatrix2 f;
    double norm2;  // |alpha~|^2 + |beta~|^2 before normalization
  };

  AlphaBeta(OrbitMap f, std::shared_ptr<const InvariantScalar> rho, BetaSource beta, double alpha_scale);

  Value evaluate(const Frame& g) const;
  /// |alpha~|^2 + |beta~|^2 at z (fiber independent).
  double separation(Complex z) const;

  SmField alpha() const;
  SmField beta() const;

  const OrbitMap& f() const { return f_; }
  const InvariantScalar& rho() const { return *rho_; }
  double min_separation() const { return min_separation_; }
  Complex argmin() const { return argmin_; }

 private:
  friend AlphaBeta build_alpha_beta(const OrbitMap&, std::shared_ptr<const InvariantScalar>, const BetaSource&,
                                    const AlphaBetaOptions&);
  OrbitMap f_;
  std::shared_ptr<const InvariantScalar> rho_;
  BetaSource beta_;
  double alpha_scale_;
  double min_separation_ = 0.0;
  Complex argmin_;
};

/// One attempt: builds alpha, beta and verifies the separation bound on a
/// grid over the domain plus local refinement of its smallest values. Throws
/// kConstruction (seed perturbation needed) when the bound fails.
AlphaBeta build_alpha_beta(const OrbitMap& f, std::shared_ptr<const InvariantScalar> rho,
                           const BetaSource& beta = BetaSource::differential(), const AlphaBetaOptions& opts = {});

/// u = alpha P_L + conj(alpha) P_U - beta + beta*. Checks unitarity and
/// det u = 1 at the frames (kConstruction otherwise).
SmField assemble_u(const AlphaBeta& ab, const std::vector<Frame>& check_frames, double tol = 1e-8);

/// G_X = -X(u) u*, G_H = -u X(f) u* - H(u) u*, G_V = c.
ConnectionOnSM build_connection(const SmField& u, const OrbitMap& f, const CMatrix& c, FdStep step = {2.5e-4},
                                std::string label = "su2");

/// The connection gauged by u into B-gauge: B(X) = 0, B(V) = f, B(H) = -X(f).
ConnectionOnSM b_gauge(const ConnectionOnSM& conn, const SmField& u, FdStep step = {2.5e-4});

/// Zeros in the fundamental domain of the Wronskian P0 P1' - P1 P0' of the
/// holomorphic lift, i.e. the critical points of the map to CP^1, located by
/// Newton iteration from a grid and deduplicated modulo the group.
std::vector<Complex> critical_points(const OrbitMap& f, int grid = 40, double tol = 1e-10);

struct DistanceOneReport {
  double u0_u1 = 0.0;         // max |u_0* u_1|
  double u0_um1 = 0.0;        // max |u_0* u_-1|
  double f_from_modes = 0.0;  // max |f - i(u_1* u_1 - u_-1* u_-1)|
  double trace = 0.0;         // max |tr f - tr c|
  double uf_minus_vu = 0.0;   // max |u f - V(u)|
  double gauge_back = 0.0;    // max |u* V(u) + u* c u - f|
  int samples = 0;
};

DistanceOneReport distance_one_diagnostics(const SmField& u, const OrbitMap& f, const CMatrix& c,
                                           const std::vector<Frame>& frames, FdStep step = {1e-3});

struct PairDegree {
  int degree = 0;
  std::vector<int> support;
  double mass_pm2 = 0.0;  // max over frames of |modes +-2|
  double mass_other = 0.0;  // max over frames of modes outside {0, +-2}
};

/// Fiber degree and mode support of w u*.
PairDegree pair_degree(const SmField& u, const SmField& w, const std::vector<Frame>& frames, double tol = 1e-8);

struct Su2Options {
  int weight = 12;
  /// Seeds of the two Poincare series; mixed powers so that the pair has no
  /// common zero (the symmetric pair 1, w vanishes together at the vertex).
  std::vector<std::vector<Complex>> seeds{{1.0, 0.0, Complex(0.2, 0.25), 0.0, 30.0},
                                          {0.0, 1.0, 0.0, Complex(0.1, -0.3), Complex(-12.0, 9.0)}};
  Orientation orientation = Orientation::kHolomorphic;
  unsigned rho_seed = 0;
  int rho_count = 12;
  double rho_radius = 2.2;
  /// Separation required by the pipeline; reseeds rho until met.
  double delta = 1e-2;
  int max_reseeds = 16;
  FdStep step{2.5e-4};
};

struct Su2Build {
  std::shared_ptr<const PoincareAtlas> atlas;
  OrbitMap f;
  AlphaBeta ab;
  SmField u;
  ConnectionOnSM connection;
  unsigned rho_seed = 0;
  int reseeds = 0;
};

/// Full pipeline: series, atlas, orbit map, alpha/beta with deterministic
/// reseeding of rho, u and the connection with c = 0. For the
/// anti-holomorphic orientation beta-tilde comes from a bump sandwich (the
/// differential part vanishes identically). Pass an atlas to reuse it.
Su2Build build_su2(const FuchsianSurface& surface, const Su2Options& opts = {},
                   std::shared_ptr<const PoincareAtlas> atlas = nullptr);

}  // namespace tcon
