#include "tcon/forms/orbit_map.hpp"

#include <cmath>

namespace tcon {

CMatrix2 orbit_embed(const Eigen::Vector2cd& w) {
  const double n2 = w.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorKind::kIndeterminate, "orbit_embed of the zero vector");
  const CMatrix2 p = w * w.adjoint() / n2;
  return kI * (2.0 * p - CMatrix2::Identity());
}

CMatrix2 orbit_embed(const CP1Point& w) { return orbit_embed(Eigen::Vector2cd(w.z0, w.z1)); }

const char* to_string(Orientation o) {
  return o == Orientation::kHolomorphic ? "holomorphic" : "anti-holomorphic";
}

OrbitMap::OrbitMap(const FuchsianSurface& surface, Source source, Orientation orientation,
                   double budget, std::string label)
    : surface_(&surface),
      source_(std::move(source)),
      orientation_(orientation),
      budget_(budget),
      label_(std::move(label)) {}

OrbitMap OrbitMap::from_series(std::shared_ptr<const PoincareEvaluator> series,
                               Orientation orientation) {
  return from_atlas(std::make_shared<const PoincareAtlas>(std::move(series)), orientation);
}

OrbitMap OrbitMap::from_atlas(std::shared_ptr<const PoincareAtlas> atlas, Orientation orientation) {
  const PoincareEvaluator& series = atlas->series();
  if (series.seed_count() < 2) throw Error(ErrorKind::kContract, "orbit map needs two seeds");
  const FuchsianSurface& surface = series.surface();
  const int k = series.weight();
  Source source = [atlas](Complex z) {
    const auto j = atlas->jet(z);
    return HomogeneousJet{Eigen::Vector2cd(j[0].value, j[1].value), Eigen::Vector2cd(j[0].d1, j[1].d1),
                          Eigen::Vector2cd(j[0].d2, j[1].d2)};
  };
  // Relative tail estimate sampled over the polygon: center, vertices and
  // side midpoints pulled slightly inside.
  double budget = 0.0;
  std::vector<Complex> probes{surface.center()};
  for (const Complex& v : surface.vertices()) {
    probes.push_back(surface.from_disc(0.98 * surface.to_disc(v)));
  }
  for (const auto& side : surface.sides()) {
    const double phi = 0.5 * (side.phi_begin + side.phi_end);
    const double r = FuchsianSurface::boundary_radius(side, phi);
    probes.push_back(surface.from_disc(std::polar(0.98 * r, phi)));
    probes.push_back(surface.from_disc(std::polar(0.5 * r, phi)));
  }
  for (const Complex& z : probes) {
    const auto v = series.evaluate(z);
    const double yk = std::pow(z.imag(), 0.5 * k);
    const double n = std::hypot(std::abs(v[0].value), std::abs(v[1].value));
    if (n * yk < 1e-13) continue;
    budget = std::max(budget, (v[0].err + atlas->sample_error() / yk) / n);
  }
  return OrbitMap(surface, std::move(source), orientation, budget, "poincare ratio");
}

OrbitMap OrbitMap::with_orientation(Orientation o) const {
  OrbitMap copy = *this;
  copy.orientation_ = o;
  return copy;
}

OrbitMap OrbitMap::constant(const FuchsianSurface& surface, const CP1Point& w) {
  const Eigen::Vector2cd xi(w.z0, w.z1);
  Source source = [xi](Complex) { return HomogeneousJet{xi, Eigen::Vector2cd::Zero()}; };
  return OrbitMap(surface, std::move(source), Orientation::kHolomorphic, 0.0, "constant");
}

HomogeneousJet OrbitMap::lift(Complex z0) const {
  HomogeneousJet j = source_(z0);
  if (orientation_ == Orientation::kAntiHolomorphic) {
    j.xi = j.xi.conjugate();
    j.dxi = j.dxi.conjugate();  // now d/dzbar derivatives
    j.ddxi = j.ddxi.conjugate();
  }
  return j;
}

OrbitMap::Jet OrbitMap::jet(Complex z0) const {
  const HomogeneousJet h = lift(z0);
  const Eigen::Vector2cd& zeta = h.xi;
  // d zeta/dz and d zeta/dzbar
  Eigen::Vector2cd dz = Eigen::Vector2cd::Zero(), dzbar = Eigen::Vector2cd::Zero();
  if (orientation_ == Orientation::kHolomorphic) {
    dz = h.dxi;
  } else {
    dzbar = h.dxi;
  }
  const double n2 = zeta.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorKind::kIndeterminate, "homogeneous lift vanishes");
  const CMatrix2 p = zeta * zeta.adjoint() / n2;
  const Complex dn2 = zeta.dot(dz) + dzbar.dot(zeta);  // zeta^* dz + dzbar^* zeta
  const CMatrix2 dp = (dz * zeta.adjoint() + zeta * dzbar.adjoint()) / n2 - p * (dn2 / n2);
  Jet j;
  j.f = kI * (2.0 * p - CMatrix2::Identity());
  j.dz = 2.0 * kI * dp;
  j.dzbar = 2.0 * kI * dp.adjoint();
  return j;
}

Frame OrbitMap::reduce(const Frame& g) const { return reduce_frame(*surface_, g).frame0; }

CMatrix2 OrbitMap::value(Complex z) const {
  const DomainReduction r = reduce_to_domain(*surface_, z);
  const HomogeneousJet h = lift(r.z0);
  return orbit_embed(h.xi);
}

CMatrix2 OrbitMap::operator()(const Frame& g) const {
  const Frame g0 = reduce(g);
  return orbit_embed(lift(g0.base_point()).xi);
}

CMatrix2 OrbitMap::X(const Frame& g) const {
  const Frame g0 = reduce(g);
  const Jet j = jet(g0.base_point());
  const Complex v = g0.tangent();
  return j.dz * v + j.dzbar * std::conj(v);
}

CMatrix2 OrbitMap::H(const Frame& g) const {
  const Frame g0 = reduce(g);
  const Jet j = jet(g0.base_point());
  const Complex v = g0.tangent();
  return kI * (j.dz * v - j.dzbar * std::conj(v));
}

CMatrix2 OrbitMap::eta_plus(const Frame& g) const {
  const Frame g0 = reduce(g);
  return jet(g0.base_point()).dz * g0.tangent();
}

HoloResidualReport holo_residual(const OrbitMap& f, const std::vector<Frame>& samples, FdStep step) {
  HoloResidualReport rep;
  auto fn = [&f](const Frame& g) -> CMatrix2 { return f(g); };
  for (const Frame& g : samples) {
    try {
      const CMatrix2 value = f(g);
      const CMatrix2 dv = directional_derivative(fn, g, FrameField::X, 1, step);
      const CMatrix2 div = directional_derivative(fn, g, FrameField::H, 1, step);
      const double scale = std::max(op_norm(dv), op_norm(div));
      const double res = op_norm(2.0 * div - (dv * value - value * dv)) / std::max(1.0, scale);
      rep.max_df = std::max(rep.max_df, scale);
      rep.max_residual = std::max(rep.max_residual, res);
      rep.residuals.push_back(res);
      rep.frames.push_back(g);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kIndeterminate) throw;
      ++rep.skipped;
      rep.notes.push_back(e.what());
    }
  }
  return rep;
}

}  // namespace tcon
