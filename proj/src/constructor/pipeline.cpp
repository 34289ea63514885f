#include "tcon/constructor/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "tcon/fields/quadrature.hpp"
#include "tcon/parallel.hpp"

namespace tcon {

Projectors eigenprojectors(const CMatrix2& fx, double tol) {
  const CMatrix2 id = CMatrix2::Identity();
  const double off = std::max(op_norm(fx * fx + id), op_norm(fx + fx.adjoint()));
  if (off > tol) {
    std::ostringstream msg;
    msg << "matrix is off the orbit of diag(i,-i) by " << off;
    throw Error(ErrorKind::kDomain, msg.str());
  }
  return {0.5 * (id - kI * fx), 0.5 * (id + kI * fx)};
}

std::shared_ptr<const InvariantScalar> seeded_rho(const FuchsianSurface& surface, unsigned seed, int count,
                                                  double radius) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rmax = std::tanh(0.5 * surface.circumradius());
  std::vector<BumpSpec> bumps;
  while (static_cast<int>(bumps.size()) < count) {
    const Complex w(rmax * (2 * unit(rng) - 1), rmax * (2 * unit(rng) - 1));
    if (std::abs(w) >= rmax) continue;
    const Complex z = surface.from_disc(w);
    if (!surface.contains(z)) continue;
    bumps.push_back({z, radius, 0.5 + unit(rng)});
  }
  return std::make_shared<const InvariantScalar>(surface, std::move(bumps));
}

BetaSource BetaSource::sandwich(std::shared_ptr<const InvariantScalar> rho2, const CMatrix2& m) {
  BetaSource b;
  b.kind = Kind::kSandwich;
  b.rho2 = std::move(rho2);
  b.m = m;
  return b;
}

AlphaBeta::AlphaBeta(OrbitMap f, std::shared_ptr<const InvariantScalar> rho, BetaSource beta, double alpha_scale)
    : f_(std::move(f)), rho_(std::move(rho)), beta_(std::move(beta)), alpha_scale_(alpha_scale) {
  if (beta_.kind == BetaSource::Kind::kSandwich && !beta_.rho2) {
    throw Error(ErrorKind::kContract, "sandwich beta needs a second scalar");
  }
}

AlphaBeta::Value AlphaBeta::evaluate(const Frame& g) const {
  const Frame g0 = f_.reduce(g);
  const Complex z0 = g0.base_point(), v = g0.tangent();
  const OrbitMap::Jet jet = f_.jet(z0);
  const Projectors p = eigenprojectors(jet.f);
  const Complex alpha = alpha_scale_ * rho_->dz(z0) * v;
  CMatrix2 beta;
  if (beta_.kind == BetaSource::Kind::kDifferential) {
    beta = p.upper * (jet.dz * v) * p.lower;
  } else {
    beta = p.upper * beta_.m * p.lower * (beta_.rho2->dz(z0) * v);
  }
  const double n2 = std::norm(alpha) + beta.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorKind::kConstruction, "alpha and beta vanish simultaneously");
  const double n = std::sqrt(n2);
  return {alpha / n, beta / n, jet.f, n2};
}

double AlphaBeta::separation(Complex z) const { return evaluate(Frame::at(z)).norm2; }

SmField AlphaBeta::alpha() const {
  const AlphaBeta self = *this;
  return SmField(1, [self](const Frame& g) { return CMatrix::Constant(1, 1, self.evaluate(g).alpha); }, "alpha");
}

SmField AlphaBeta::beta() const {
  const AlphaBeta self = *this;
  return SmField(2, [self](const Frame& g) { return CMatrix(self.evaluate(g).beta); }, "beta");
}

namespace {

// Compass search for a local minimum of fn over the domain, steps relative to Im z.
std::pair<Complex, double> local_min(const FuchsianSurface& s, const std::function<double(Complex)>& fn, Complex z) {
  double best = fn(z);
  double step = 0.05;
  const Complex dirs[4] = {1.0, kI, -1.0, -kI};
  while (step > 1e-7) {
    bool moved = false;
    for (const Complex& d : dirs) {
      const Complex cand = reduce_to_domain(s, z + step * z.imag() * d).z0;
      const double val = fn(cand);
      if (val < best) {
        best = val;
        z = cand;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {z, best};
}

}  // namespace

AlphaBeta build_alpha_beta(const OrbitMap& f, std::shared_ptr<const InvariantScalar> rho, const BetaSource& beta,
                           const AlphaBetaOptions& opts) {
  AlphaBeta ab(f, std::move(rho), beta, opts.alpha_scale);
  const FuchsianSurface& s = f.surface();
  const Quadrature grid(s, QuadratureSpec{opts.grid_angular, opts.grid_radial, 1, 2});
  const auto& nodes = grid.nodes();
  std::vector<double> sep(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { sep[i] = ab.separation(nodes[i].z); });
  std::vector<Complex> seeds;
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min<std::size_t>(opts.refine, order.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) { return sep[a] < sep[b]; });
  for (std::size_t i = 0; i < keep; ++i) seeds.push_back(nodes[order[i]].z);
  if (beta.kind == BetaSource::Kind::kDifferential && f.orientation() == Orientation::kHolomorphic) {
    for (const Complex& z : critical_points(f)) seeds.push_back(z);
  }
  std::vector<std::pair<Complex, double>> mins(seeds.size());
  const auto fn = [&ab](Complex z) { return ab.separation(z); };
  parallel_for(seeds.size(), [&](std::size_t i) { mins[i] = local_min(s, fn, seeds[i]); });
  ab.min_separation_ = sep[order[0]];
  ab.argmin_ = nodes[order[0]].z;
  for (const auto& [z, v] : mins) {
    if (v < ab.min_separation_) {
      ab.min_separation_ = v;
      ab.argmin_ = z;
    }
  }
  if (!(ab.min_separation_ > opts.delta)) {
    std::ostringstream msg;
    msg << "|alpha~|^2 + |beta~|^2 = " << ab.min_separation_ << " at z = " << ab.argmin_ << " is below delta "
        << opts.delta << "; perturb the seed of rho";
    throw Error(ErrorKind::kConstruction, msg.str());
  }
  return ab;
}

SmField assemble_u(const AlphaBeta& ab, const std::vector<Frame>& check_frames, double tol) {
  SmField u(2, [ab](const Frame& g) {
    const AlphaBeta::Value v = ab.evaluate(g);
    const Projectors p = eigenprojectors(v.f);
    return CMatrix(v.alpha * p.lower + std::conj(v.alpha) * p.upper - v.beta + v.beta.adjoint());
  }, "u");
  for (const Frame& g : check_frames) {
    const CMatrix m = u(g);
    const double unitary = op_norm(m.adjoint() * m - CMatrix::Identity(2, 2));
    const double det = std::abs(m.determinant() - 1.0);
    if (unitary > tol || det > tol) {
      std::ostringstream msg;
      msg << "assembled u is not in SU(2): |u*u - Id| = " << unitary << ", |det u - 1| = " << det;
      throw Error(ErrorKind::kConstruction, msg.str());
    }
  }
  return u.with_band_limit(1);
}

ConnectionOnSM build_connection(const SmField& u, const OrbitMap& f, const CMatrix& c, FdStep step, std::string label) {
  if (u.rank() != 2 || c.rows() != 2 || c.cols() != 2) throw Error(ErrorKind::kContract, "SU(2) data expected");
  const SmField xu = derivative(u, FrameField::X, step);
  const SmField hu = derivative(u, FrameField::H, step);
  // FD leaves a small Hermitian part; the exact values are skew
  const auto skew = [](const CMatrix& m) { return CMatrix(0.5 * (m - m.adjoint())); };
  const SmField gx(2, [u, xu, skew](const Frame& g) { return skew(-xu(g) * u(g).adjoint()); }, "G_X");
  const SmField gh(
      2,
      [u, hu, f, skew](const Frame& g) {
        const CMatrix uv = u(g);
        return skew(-uv * f.X(g) * uv.adjoint() - hu(g) * uv.adjoint());
      },
      "G_H");
  return ConnectionOnSM(gx.with_skew_hermitian(), gh.with_skew_hermitian(), c, f.surface().genus(),
                        std::move(label));
}

ConnectionOnSM b_gauge(const ConnectionOnSM& conn, const SmField& u, FdStep step) {
  return gauge_transform(conn, u, {}, false, step).with_label(conn.label() + " (B-gauge)");
}

std::vector<Complex> critical_points(const OrbitMap& f, int grid, double tol) {
  const OrbitMap hol = f.with_orientation(Orientation::kHolomorphic);
  const FuchsianSurface& s = f.surface();
  auto newton = [&](Complex z) -> std::optional<Complex> {
    for (int it = 0; it < 60; ++it) {
      const HomogeneousJet j = hol.lift(z);
      const Complex w = j.xi(0) * j.dxi(1) - j.xi(1) * j.dxi(0);
      const Complex dw = j.xi(0) * j.ddxi(1) - j.xi(1) * j.ddxi(0);
      if (dw == 0.0) return std::nullopt;
      const Complex step = w / dw;
      if (std::abs(step) > z.imag()) return std::nullopt;
      const Complex next = z - step;
      if (next.imag() <= 0.0) return std::nullopt;
      z = reduce_to_domain(s, next).z0;
      if (std::abs(step) < tol * z.imag()) return z;
    }
    return std::nullopt;
  };
  const double rmax = std::tanh(0.5 * s.circumradius());
  std::vector<Complex> starts;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const Complex w(rmax * (2.0 * (a + 0.5) / grid - 1.0), rmax * (2.0 * (b + 0.5) / grid - 1.0));
      if (std::abs(w) >= rmax) continue;
      const Complex z = s.from_disc(w);
      if (s.contains(z)) starts.push_back(z);
    }
  }
  std::vector<std::optional<Complex>> found(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    try {
      found[i] = newton(starts[i]);
    } catch (const Error&) {
      found[i] = std::nullopt;
    }
  });
  std::vector<Complex> out;
  auto same = [&](Complex p, Complex q) {
    if (hyperbolic_distance(p, q) < 1e-6) return true;
    for (int l : s.side_letters()) {
      if (hyperbolic_distance(mobius_apply(s.letter(l), p), q) < 1e-6) return true;
    }
    return false;
  };
  for (const auto& z : found) {
    if (!z) continue;
    if (std::none_of(out.begin(), out.end(), [&](Complex q) { return same(*z, q); })) out.push_back(*z);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

DistanceOneReport distance_one_diagnostics(const SmField& u, const OrbitMap& f, const CMatrix& c,
                                           const std::vector<Frame>& frames, FdStep step) {
  DistanceOneReport r;
  r.samples = static_cast<int>(frames.size());
  std::vector<DistanceOneReport> per(frames.size());
  const SmField vu = derivative(u, FrameField::V, step);
  parallel_for(frames.size(), [&](std::size_t i) {
    const Frame& g = frames[i];
    const FourierModes m = fiber_modes(u, g, 2);
    const CMatrix fx = f(g);
    const CMatrix uv = u(g);
    DistanceOneReport& p = per[i];
    p.u0_u1 = op_norm(m[0].adjoint() * m[1]);
    p.u0_um1 = op_norm(m[0].adjoint() * m[-1]);
    p.f_from_modes = op_norm(fx - kI * (m[1].adjoint() * m[1] - m[-1].adjoint() * m[-1]));
    p.trace = std::abs(fx.trace() - c.trace());
    const CMatrix dv = vu(g);
    p.uf_minus_vu = op_norm(uv * fx - dv);
    p.gauge_back = op_norm(uv.adjoint() * dv + uv.adjoint() * c * uv - fx);
  });
  for (const auto& p : per) {
    r.u0_u1 = std::max(r.u0_u1, p.u0_u1);
    r.u0_um1 = std::max(r.u0_um1, p.u0_um1);
    r.f_from_modes = std::max(r.f_from_modes, p.f_from_modes);
    r.trace = std::max(r.trace, p.trace);
    r.uf_minus_vu = std::max(r.uf_minus_vu, p.uf_minus_vu);
    r.gauge_back = std::max(r.gauge_back, p.gauge_back);
  }
  return r;
}

PairDegree pair_degree(const SmField& u, const SmField& w, const std::vector<Frame>& frames, double tol) {
  const SmField q = w * adjoint(u);
  PairDegree out;
  std::vector<bool> present(5, false);
  for (const Frame& g : frames) {
    const FourierModes m = fiber_modes(q, g, 2, tol);
    for (int k = -2; k <= 2; ++k) {
      const double mag = m[k].cwiseAbs().maxCoeff();
      if (mag > tol) present[k + 2] = true;
      if (std::abs(k) == 2) out.mass_pm2 = std::max(out.mass_pm2, mag);
      if (std::abs(k) == 1) out.mass_other = std::max(out.mass_other, mag);
    }
  }
  for (int k = -2; k <= 2; ++k) {
    if (present[k + 2]) {
      out.support.push_back(k);
      out.degree = std::max(out.degree, std::abs(k));
    }
  }
  return out;
}

Su2Build build_su2(const FuchsianSurface& surface, const Su2Options& opts, std::shared_ptr<const PoincareAtlas> atlas) {
  if (!atlas) {
    auto series = std::make_shared<const PoincareEvaluator>(surface, opts.weight, opts.seeds);
    atlas = std::make_shared<const PoincareAtlas>(series);
  }
  const OrbitMap f = OrbitMap::from_atlas(atlas, opts.orientation);
  AlphaBetaOptions ab_opts;
  ab_opts.delta = opts.delta;
  std::string last_error;
  for (int attempt = 0; attempt <= opts.max_reseeds; ++attempt) {
    const unsigned seed = opts.rho_seed + static_cast<unsigned>(attempt);
    BetaSource beta = BetaSource::differential();
    if (opts.orientation == Orientation::kAntiHolomorphic) {
      CMatrix2 m;
      m << Complex(0.3, 0.1), Complex(1.0, -0.4), Complex(0.7, 0.2), Complex(-0.5, 0.6);
      beta = BetaSource::sandwich(seeded_rho(surface, seed + 1000, opts.rho_count, opts.rho_radius), m);
    }
    try {
      AlphaBeta ab = build_alpha_beta(f, seeded_rho(surface, seed, opts.rho_count, opts.rho_radius), beta, ab_opts);
      SmField u = assemble_u(ab, {});
      ConnectionOnSM conn = build_connection(u, f, CMatrix::Zero(2, 2), opts.step,
                                             opts.orientation == Orientation::kHolomorphic ? "su2" : "su2-anti");
      return Su2Build{atlas, f, ab, u, conn, seed, attempt};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kConstruction) throw;
      last_error = e.what();
    }
  }
  throw Error(ErrorKind::kConstruction, "no admissible rho after reseeding: " + last_error);
}

}  // namespace tcon
