#include "tcon/fields/bump.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tcon {

namespace {

double t_of(const BumpSpec& b, double s) { return (s - 1.0) / (std::cosh(b.radius) - 1.0); }

// d/dz cosh d(z, q)
Complex ds_dz(Complex z, Complex q) {
  const double y = z.imag(), yq = q.imag();
  const Complex diff = z - q;
  return std::conj(diff) / (2.0 * y * yq) + std::norm(diff) * kI / (4.0 * y * y * yq);
}

constexpr double kMaxBallRadius = 10.0;

}  // namespace

double bump_profile(const BumpSpec& b, double s) {
  const double t = t_of(b, s);
  if (t >= 1.0) return 0.0;
  return b.amplitude * std::exp(1.0 - 1.0 / (1.0 - t));
}

double bump_profile_ds(const BumpSpec& b, double s) {
  const double t = t_of(b, s);
  if (t >= 1.0) return 0.0;
  const double om = 1.0 - t;
  return -bump_profile(b, s) / (om * om) / (std::cosh(b.radius) - 1.0);
}

InvariantScalar::InvariantScalar(const FuchsianSurface& surface, std::vector<BumpSpec> bumps, int max_length)
    : surface_(&surface), bumps_(std::move(bumps)) {
  const Complex c = surface.center();
  const double rc = surface.circumradius();
  double reach = 0.0;
  for (const BumpSpec& b : bumps_) {
    if (!(b.radius > 0.0) || !(b.center.imag() > 0.0)) {
      throw Error(ErrorKind::kContract, "bump needs a positive radius and a center in H");
    }
    reach = std::max(reach, hyperbolic_distance(c, b.center) + b.radius);
  }
  if (bumps_.empty()) return;
  // gamma^-1 p meets the domain only if d(c, gamma^-1 p) <= rc + radius, and
  // then d(c, gamma c) <= rc + radius + d(c, p)
  const double ball_radius = rc + reach + 1e-9;
  if (ball_radius > kMaxBallRadius) {
    std::ostringstream msg;
    msg << "bump support reaches " << reach << " from the center; averaging ball radius " << ball_radius
        << " exceeds " << kMaxBallRadius;
    throw Error(ErrorKind::kAveraging, msg.str());
  }
  const GroupBall ball(surface, ball_radius, max_length);
  for (const BallElement& e : ball.elements()) {
    const MoebiusD inv = e.g.inverse();
    for (std::size_t i = 0; i < bumps_.size(); ++i) {
      const Complex q = mobius_apply(inv, bumps_[i].center);
      if (hyperbolic_distance(c, q) <= rc + bumps_[i].radius + 1e-9) images_.push_back({q, static_cast<int>(i)});
    }
  }
  // defect: paired boundary points z and s(z) both lie in the closed domain
  for (const auto& side : surface.sides()) {
    for (int j = 1; j < 8; ++j) {
      const double phi = side.phi_begin + (side.phi_end - side.phi_begin) * j / 8.0;
      const Complex z = surface.from_disc(std::polar(FuchsianSurface::boundary_radius(side, phi), phi));
      const Complex sz = mobius_apply(surface.letter(-side.letter), z);
      defect_ = std::max(defect_, std::abs(raw(z) - raw(sz)));
    }
  }
}

double InvariantScalar::raw(Complex z0) const {
  double v = 0.0;
  for (const Image& im : images_) v += bump_profile(bumps_[im.bump], cosh_distance(z0, im.point));
  return v;
}

double InvariantScalar::value(Complex z) const { return raw(reduce_to_domain(*surface_, z).z0); }

Complex InvariantScalar::dz(Complex z) const {
  const DomainReduction red = reduce_to_domain(*surface_, z);
  Complex d0 = 0.0;
  for (const Image& im : images_) {
    const BumpSpec& b = bumps_[im.bump];
    const double s = cosh_distance(red.z0, im.point);
    if (t_of(b, s) >= 1.0) continue;
    d0 += bump_profile_ds(b, s) * ds_dz(red.z0, im.point);
  }
  // rho(z) = rho(z0) with z0 = element^-1 z: d rho/dz = d0 * dz0/dz = d0 * j(element, z0)^2
  const Complex j = red.element.cocycle(red.z0);
  return d0 * j * j;
}

Complex InvariantScalar::one_zero(const Frame& g) const { return dz(g.base_point()) * g.tangent(); }

SmField invariant_bump(const FuchsianSurface& surface, const std::vector<BumpSpec>& bumps,
                       const std::map<int, CMatrix>& fiber_modes, int max_length) {
  if (fiber_modes.empty()) throw Error(ErrorKind::kContract, "invariant_bump needs at least one fiber mode");
  const int rank = static_cast<int>(fiber_modes.begin()->second.rows());
  int band = 0;
  for (const auto& [m, mat] : fiber_modes) {
    if (mat.rows() != rank || mat.cols() != rank) throw Error(ErrorKind::kContract, "fiber modes must share a rank");
    band = std::max(band, std::abs(m));
  }
  auto rho = std::make_shared<const InvariantScalar>(surface, bumps, max_length);
  const FuchsianSurface* s = &surface;
  SmField f(
      rank,
      [rho, s, fiber_modes, rank](const Frame& g) {
        const Frame g0 = reduce_frame(*s, g).frame0;
        const Complex phase = g0.fiber_phase();
        const double r = rho->value(g0.base_point());
        CMatrix out = CMatrix::Zero(rank, rank);
        if (r == 0.0) return out;
        for (const auto& [m, mat] : fiber_modes) out += std::pow(phase, m) * mat;
        return CMatrix(r * out);
      },
      "bump");
  return f.with_band_limit(band).with_invariance_defect(rho->invariance_defect());
}

SmField random_section(const FuchsianSurface& surface, int rank, int band, unsigned seed, bool skew) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  auto random_matrix = [&] {
    CMatrix m(rank, rank);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) m(i, j) = Complex(n(rng), n(rng));
    }
    return m;
  };
  // coefficients of 1, w, conj w, w^2, |w|^2, conj w^2 for each mode
  std::vector<std::array<CMatrix, 6>> coeffs(2 * band + 1);
  for (auto& c : coeffs) {
    for (auto& m : c) m = random_matrix() / (1.0 + band);
  }
  const FuchsianSurface* s = &surface;
  SmField f(
      rank,
      [coeffs, band, s, skew, rank](const Frame& g) {
        const Complex w = s->to_disc(g.base_point());
        const Complex wb = std::conj(w);
        const Complex mono[6] = {1.0, w, wb, w * w, w * wb, wb * wb};
        const Complex phase = g.fiber_phase();
        CMatrix out = CMatrix::Zero(rank, rank);
        for (int m = -band; m <= band; ++m) {
          CMatrix a = CMatrix::Zero(rank, rank);
          for (int k = 0; k < 6; ++k) a += mono[k] * coeffs[m + band][k];
          out += std::pow(phase, m) * a;
        }
        if (skew) out = (0.5 * (out - out.adjoint())).eval();
        return out;
      },
      "random");
  return f.with_band_limit(band).with_skew_hermitian(skew);
}

int degree_bound(const std::vector<Eigen::VectorXd>& f1_eigs, const std::vector<Eigen::VectorXd>& f2_eigs,
                 double curvature, int rank) {
  if (f1_eigs.empty() || f1_eigs.size() != f2_eigs.size()) {
    throw Error(ErrorKind::kContract, "degree_bound needs equally many non-empty eigenvalue samples");
  }
  if (!(curvature < 0.0)) throw Error(ErrorKind::kContract, "degree_bound needs negative curvature");
  double spread = 0.0;
  for (std::size_t s = 0; s < f1_eigs.size(); ++s) {
    if (f1_eigs[s].size() != rank || f2_eigs[s].size() != rank) {
      throw Error(ErrorKind::kContract, "eigenvalue sample of wrong size");
    }
    for (int j = 0; j < rank; ++j) {
      for (int k = 0; k < rank; ++k) spread = std::max(spread, std::abs(f2_eigs[s](j) - f1_eigs[s](k)));
    }
  }
  return static_cast<int>(std::floor(spread / -curvature)) + 1;
}

int degree_bound_from_matrices(const std::vector<CMatrix>& f1, const std::vector<CMatrix>& f2, double curvature) {
  if (f1.empty() || f1.size() != f2.size()) throw Error(ErrorKind::kContract, "degree_bound needs samples");
  const int n = static_cast<int>(f1.front().rows());
  std::vector<Eigen::VectorXd> e1, e2;
  for (std::size_t s = 0; s < f1.size(); ++s) {
    e1.push_back(Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (f1[s] + f1[s].adjoint())).eigenvalues());
    e2.push_back(Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (f2[s] + f2[s].adjoint())).eigenvalues());
  }
  const int l = degree_bound(e1, e2, curvature, n);
  // alpha -> -l K alpha +- (F2 alpha - alpha F1) on vec(alpha): I (x) F2 - F1^T (x) I
  auto positive = [&](int ell) {
    const CMatrix id = CMatrix::Identity(n, n);
    for (std::size_t s = 0; s < f1.size(); ++s) {
      CMatrix op(n * n, n * n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          op.block(a * n, b * n, n, n) = id(a, b) * f2[s] - f1[s](b, a) * id;
        }
      }
      for (double sign : {1.0, -1.0}) {
        const CMatrix form = -ell * curvature * CMatrix::Identity(n * n, n * n) + sign * op;
        const CMatrix herm = 0.5 * (form + form.adjoint());
        if (Eigen::SelfAdjointEigenSolver<CMatrix>(herm).eigenvalues().minCoeff() <= 0.0) return false;
      }
    }
    return true;
  };
  if (!positive(l) || (l > 1 && positive(l - 1))) {
    throw Error(ErrorKind::kConstruction, "eigenvalue-spread bound disagrees with the Kronecker form");
  }
  return l;
}

}  // namespace tcon
