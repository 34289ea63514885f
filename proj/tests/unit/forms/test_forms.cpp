#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "tcon/forms/orbit_map.hpp"
#include "tcon/forms/poincare.hpp"

using namespace tcon;

namespace {

const FuchsianSurface& bolza() {
  static const FuchsianSurface s = bolza_surface();
  return s;
}

std::vector<Complex> domain_points(int n, unsigned seed) {
  const FuchsianSurface& s = bolza();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex w(2 * u(rng) - 1, 2 * u(rng) - 1);
    if (std::abs(w) >= 0.75) continue;
    const Complex z = s.from_disc(w);
    if (s.contains(z, -1e-3)) out.push_back(z);
  }
  return out;
}

std::shared_ptr<const PoincareEvaluator> default_pair() {
  static auto p = std::make_shared<const PoincareEvaluator>(
      bolza(), 12, std::vector<std::vector<Complex>>{{1.0}, {0.0, 1.0}});
  return p;
}

std::shared_ptr<const PoincareAtlas> default_atlas() {
  static auto a = std::make_shared<const PoincareAtlas>(default_pair());
  return a;
}

}  // namespace

TEST_CASE("weight 12 automorphy under side pairings") {
  const auto& s = bolza();
  const PoincareEvaluator& p = *default_pair();
  for (const Complex& z : domain_points(10, 1)) {
    const auto base = p.evaluate(z);
    for (int l : s.side_letters()) {
      const MoebiusD& g = s.letter(l);
      const Complex gz = mobius_apply(g, z);
      const auto moved = p.evaluate(gz);
      const Complex j = g.cocycle(z);
      for (std::size_t k = 0; k < 2; ++k) {
        const Complex expect = std::pow(j, 12) * base[k].value;
        const double tol = base[k].err * std::pow(std::abs(j), 12) + moved[k].err;
        CHECK(std::abs(moved[k].value - expect) <= tol + 1e-14 * std::abs(expect));
        CHECK(std::abs(moved[k].value - expect) <= 1e-9 * std::abs(expect) + 1e-15);
      }
    }
  }
}

TEST_CASE("weight 4, trivial seed: automorphy within the reported error") {
  const auto& s = bolza();
  const PoincareEvaluator p(s, PoincareSeries{4, {1.0}, 5});
  const Complex z(0.15, 1.1);
  const auto base = p.evaluate_one(z);
  const MoebiusD& g = s.letter(2);
  const auto moved = p.evaluate_one(mobius_apply(g, z));
  const Complex j = g.cocycle(z);
  const double tol = base.err * std::pow(std::abs(j), 4) + moved.err;
  CHECK(std::abs(moved.value - std::pow(j, 4) * base.value) <= tol);
}

TEST_CASE("truncation W to W+2 stays within the reported error") {
  const auto& s = bolza();
  for (int w : {3, 4}) {
    const PoincareEvaluator lo(s, PoincareSeries{12, {0.3, 1.0, -0.2}, w});
    const PoincareEvaluator hi(s, PoincareSeries{12, {0.3, 1.0, -0.2}, w + 2});
    for (const Complex& z : domain_points(8, 2)) {
      const auto a = lo.evaluate_one(z), b = hi.evaluate_one(z);
      CHECK(std::abs(a.value - b.value) <= a.err);
    }
  }
}

TEST_CASE("series derivative matches a difference quotient") {
  const PoincareEvaluator& p = *default_pair();
  for (const Complex& z : domain_points(5, 3)) {
    const auto v = p.evaluate(z);
    auto stencil = [&](Complex step, std::size_t k) {
      auto at = [&](double t) { return p.evaluate(z + t * step)[k].value; };
      return (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * step);
    };
    for (std::size_t k = 0; k < 2; ++k) {
      const Complex fd = stencil(1e-3, k);
      const Complex fdi = stencil(Complex(0, 1e-3), k);
      CHECK(std::abs(fd - v[k].derivative) < 1e-6 * (1 + std::abs(v[k].derivative)));
      CHECK(std::abs(fdi - v[k].derivative) < 1e-6 * (1 + std::abs(v[k].derivative)));
    }
  }
}

TEST_CASE("series contract and convergence errors") {
  const auto& s = bolza();
  CHECK_THROWS_AS(PoincareEvaluator(s, PoincareSeries{2, {1.0}, 4}), Error);
  CHECK_THROWS_AS(PoincareEvaluator(s, PoincareSeries{5, {1.0}, 4}), Error);
  const PoincareEvaluator p(s, PoincareSeries{4, {1.0}, 4});
  // far outside the domain the centered word ball is useless
  bool raised = false;
  try {
    p.evaluate(Complex(40.0, 0.001));
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::kConvergence;
  }
  CHECK(raised);
  // a seed with no particular symmetry still evaluates to something finite
  const PoincareEvaluator odd(s, PoincareSeries{6, {0.0, 1.0, 0.0, -0.5}, 4});
  const auto v = odd.evaluate_one(Complex(0.2, 0.9));
  CHECK(std::isfinite(v.value.real()));
  CHECK(std::isfinite(v.value.imag()));
}

TEST_CASE("Taylor atlas reproduces the direct sums") {
  const auto& s = bolza();
  const PoincareEvaluator& p = *default_pair();
  const PoincareAtlas& a = *default_atlas();
  CHECK(a.sample_error() < 1e-12);
  for (const Complex& z : domain_points(40, 7)) {
    const auto d = p.evaluate(z);
    const auto j = a.jet(z);
    const double y = z.imag();
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(d[k].value - j[k].value) * std::pow(y, 6) < 1e-12);
      CHECK(std::abs(d[k].derivative - j[k].d1) * std::pow(y, 7) < 1e-11);
      auto at = [&](double t) { return p.evaluate(z + t * 1e-3)[k].derivative; };
      const Complex fd = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / 12e-3;
      CHECK(std::abs(fd - j[k].d2) * std::pow(y, 8) < 1e-5);
    }
  }
  // vertices are the hardest points
  for (const Complex& v : s.vertices()) {
    const Complex z = s.from_disc(0.999 * s.to_disc(v));
    const auto d = p.evaluate(z);
    const auto j = a.jet(z);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(d[k].value - j[k].value) * std::pow(z.imag(), 6) < 1e-12);
  }
  CHECK_THROWS_AS(a.jet(Complex(30.0, 0.01)), Error);
}

TEST_CASE("meromorphic map") {
  const auto& s = bolza();
  const PoincareEvaluator same(s, 12, {{1.0, 0.5}, {1.0, 0.5}}, 4);
  const CP1Point diag{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  for (const Complex& z : domain_points(5, 4)) CHECK(cp1_distance(meromorphic_map(same, z), diag) < 1e-7);

  const PoincareEvaluator& p = *default_pair();
  double widest = 0.0;
  const auto pts = domain_points(20, 5);
  auto rel_err = [&](Complex z) {
    const auto v = p.evaluate(z);
    return v[0].err / std::hypot(std::abs(v[0].value), std::abs(v[1].value));
  };
  for (const Complex& z : pts) {
    const CP1Point a = meromorphic_map(p, z);
    for (int l : s.side_letters()) {
      const Complex gz = mobius_apply(s.letter(l), z);
      const double budget = 2.0 * (rel_err(z) + rel_err(gz));
      CHECK(cp1_distance(a, meromorphic_map(p, gz)) <= budget);
    }
    widest = std::max(widest, cp1_distance(a, meromorphic_map(p, pts.front())));
  }
  CHECK(widest > 0.1);
}

TEST_CASE("orbit embedding") {
  const CMatrix2 top = orbit_embed(CP1Point{1.0, 0.0});
  CMatrix2 expect;
  expect << kI, 0.0, 0.0, -kI;
  CHECK((top - expect).norm() < 1e-15);
  std::mt19937 rng(9);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector2cd w(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
    const Eigen::Vector2cd anti(-std::conj(w(1)), std::conj(w(0)));
    const CMatrix2 f = orbit_embed(w);
    CHECK((orbit_embed(anti) + f).norm() < 1e-14);
    CHECK((f.adjoint() + f).norm() < 1e-14);
    CHECK(std::abs(f.trace()) < 1e-14);
    CHECK((f * f + CMatrix2::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("orbit map: invariants, analytic jet, orientation") {
  const auto& s = bolza();
  const OrbitMap hol = OrbitMap::from_atlas(default_atlas(), Orientation::kHolomorphic);
  const OrbitMap anti = hol.with_orientation(Orientation::kAntiHolomorphic);
  CHECK(hol.budget() < 1e-8);
  std::vector<Frame> frames;
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> th(0, 2 * kPi);
  for (const Complex& z : domain_points(30, 6)) frames.push_back(Frame::at(z, th(rng)));

  auto fn = [&](const Frame& g) -> CMatrix2 { return hol(g); };
  for (const Frame& g : frames) {
    const CMatrix2 f = hol(g);
    CHECK((f.adjoint() + f).norm() < 1e-12);
    CHECK((f * f + CMatrix2::Identity()).norm() < 1e-12);
    for (int l : s.side_letters()) {
      CHECK((hol(Frame(s.letter(l) * g.g)) - f).norm() < 1e-9);
    }
    const CMatrix2 xf = directional_derivative(fn, g, FrameField::X, 1, {1e-3});
    const CMatrix2 hf = directional_derivative(fn, g, FrameField::H, 1, {1e-3});
    CHECK((xf - hol.X(g)).norm() < 1e-7 * (1 + xf.norm()));
    CHECK((hf - hol.H(g)).norm() < 1e-7 * (1 + hf.norm()));
    // d f(iv) = d f(v) f for the holomorphic orientation
    CHECK((hol.H(g) - hol.X(g) * f).norm() < 1e-10 * (1 + xf.norm()));
  }

  const auto rh = holo_residual(hol, frames);
  const auto ra = holo_residual(anti, frames);
  const double budget = 1e-6;
  CHECK(rh.max_residual < budget);
  CHECK(ra.max_residual > 10 * budget);
  CHECK(ra.max_residual > 0.1);

  const OrbitMap flat = OrbitMap::constant(s, CP1Point{0.6, 0.8});
  CHECK(holo_residual(flat, frames).max_residual == 0.0);
}
