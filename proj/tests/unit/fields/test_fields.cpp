#include <doctest.h>

#include <cmath>
#include <random>

#include "tcon/fields/bump.hpp"
#include "tcon/fields/operators.hpp"
#include "tcon/fields/quadrature.hpp"
#include "tcon/gauss.hpp"
#include "tcon/geom/surface.hpp"

using namespace tcon;

namespace {

const FuchsianSurface& bolza() {
  static const FuchsianSurface s = bolza_surface();
  return s;
}

std::vector<Frame> sample_frames(int n, unsigned seed) {
  const FuchsianSurface& s = bolza();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Frame> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex w(1.6 * u(rng) - 0.8, 1.6 * u(rng) - 0.8);
    if (std::abs(w) > 0.95) continue;
    const Complex z = s.from_disc(w);
    if (!s.contains(z)) continue;
    out.push_back(Frame::at(z, 2 * kPi * u(rng)));
  }
  return out;
}

// a(z) * phase^m with a a fixed non-constant matrix function of the base point
SmField pure_mode(int m, int rank = 2) {
  return SmField(rank, [m, rank](const Frame& g) {
    const Complex z = g.base_point();
    CMatrix a(rank, rank);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) a(i, j) = std::sin(z.real() * (i + 1)) + Complex(0, 1) * std::cos(z.imag() * (j + 2));
    }
    return CMatrix(std::pow(g.fiber_phase(), m) * a);
  });
}

double max_norm(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix rand_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  return m;
}

// bump-averaged skew-Hermitian section with modes 0 and +-1
SmField skew_bump(unsigned seed, double radius = 1.0) {
  std::mt19937 rng(seed);
  const CMatrix m0 = rand_matrix(2, rng);
  const CMatrix m1 = rand_matrix(2, rng);
  std::map<int, CMatrix> modes{{0, 0.5 * (m0 - m0.adjoint())}, {1, m1}, {-1, -m1.adjoint()}};
  return invariant_bump(bolza(), {BumpSpec{bolza().center(), radius, 1.0}}, modes).with_skew_hermitian();
}

}  // namespace

TEST_CASE("fiber modes of elementary sections") {
  const Frame g = Frame::at(Complex(0.3, 1.2), 0.4);
  const FourierModes c = fiber_modes(constant_field(CMatrix::Identity(2, 2)), g, 3);
  CHECK(c.degree(1e-12) == 0);
  CHECK(max_norm(c[0] - CMatrix::Identity(2, 2)) < 1e-14);

  const SmField e1(2, [](const Frame& f) { return CMatrix(f.fiber_phase() * CMatrix::Identity(2, 2)); });
  const FourierModes m = fiber_modes(e1, g, 3);
  CHECK(m.degree(1e-12) == 1);
  CHECK(max_norm(m[-1]) < 1e-14);
  CHECK(max_norm(m[1] - g.fiber_phase() * CMatrix::Identity(2, 2)) < 1e-14);

  const SmField r = random_section(bolza(), 2, 3, 7);
  const FourierModes rm = fiber_modes(r, g, 3);
  for (double t : {0.1, 1.3, 2.9, 5.0}) {
    CHECK(max_norm(rm.evaluate(t) - r(frame_flow(g, FrameField::V, t))) < 1e-9);
  }
  CHECK_THROWS_AS(fiber_modes(r, g, 1), Error);
  try {
    fiber_modes(r, g, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBandLimit);
  }
}

TEST_CASE("degree does not depend on the base phase") {
  const SmField r = random_section(bolza(), 2, 2, 11);
  std::vector<Frame> frames = sample_frames(6, 3);
  CHECK(degree(r, frames) == 2);
  for (Frame& f : frames) f = frame_flow(f, FrameField::V, 1.1);
  CHECK(degree(r, frames) == 2);
  CHECK(degree(constant_field(CMatrix::Identity(3, 3)), frames) == 0);
  CHECK(mode_support(pure_mode(-2), frames) == std::vector<int>{-2});
}

TEST_CASE("one-form split") {
  const auto frames = sample_frames(8, 5);
  std::mt19937 rng(9);
  const CMatrix p0 = rand_matrix(2, rng), p1 = rand_matrix(2, rng), q0 = rand_matrix(2, rng), q1 = rand_matrix(2, rng);
  const SmField a(2, [=](const Frame& g) {
    const Complex z = g.base_point(), v = g.tangent();
    return CMatrix((p0 + z.real() * p1) * v.real() + (q0 + z.imag() * q1) * v.imag());
  });
  const OneFormSplit s = split_one_form(a, frames);
  for (const Frame& g : frames) {
    CHECK(max_norm(s.plus(g) + s.minus(g) - a(g)) < 1e-10);
    const FourierModes mp = fiber_modes(s.plus, g, 2);
    const FourierModes mm = fiber_modes(s.minus, g, 2);
    CHECK(mp.degree(1e-10) == 1);
    CHECK(max_norm(mp[-1]) < 1e-10);
    CHECK(max_norm(mm[1]) < 1e-10);
  }

  // real dx: the two halves are conjugate
  const SmField dx(1, [](const Frame& g) { return CMatrix::Constant(1, 1, g.tangent().real()); });
  const OneFormSplit sx = split_one_form(dx, frames);
  for (const Frame& g : frames) CHECK(std::abs(sx.plus(g)(0, 0) - std::conj(sx.minus(g)(0, 0))) < 1e-12);

  const SmField plus_only = pure_mode(1);
  const OneFormSplit sp = split_one_form(plus_only, frames);
  for (const Frame& g : frames) {
    CHECK(max_norm(sp.plus(g) - plus_only(g)) < 1e-12);
    CHECK(max_norm(sp.minus(g)) < 1e-12);
  }
  try {
    split_one_form(pure_mode(2), frames);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotAOneForm);
  }
}

TEST_CASE("operators on modes") {
  const auto frames = sample_frames(6, 13);
  const OperatorContext ctx = OperatorContext::trivial(2);
  const SmField dv = apply_operator(Operator::D_V, constant_field(CMatrix::Identity(2, 2)), ctx);
  for (const Frame& g : frames) CHECK(max_norm(dv(g)) < 1e-12);

  for (int m : {-1, 0, 2}) {
    const SmField u = pure_mode(m);
    const SmField ep = apply_operator(Operator::eta_plus, u, ctx);
    const SmField em = apply_operator(Operator::eta_minus, u, ctx);
    CHECK(mode_support(ep, frames, 1e-8, 5) == std::vector<int>{m + 1});
    CHECK(mode_support(em, frames, 1e-8, 5) == std::vector<int>{m - 1});
    // -i D_V acts as m
    const SmField v = apply_operator(Operator::D_V, u, ctx);
    for (const Frame& g : frames) CHECK(max_norm(Complex(0, -1) * v(g) - double(m) * u(g)) < 1e-9);
  }

  OperatorContext with_a = ctx;
  with_a.a = zero_field(2);
  with_a.one_form_check = frames;
  const SmField u = random_section(bolza(), 2, 2, 4);
  const SmField mp = apply_operator(Operator::mu_plus, u, with_a);
  const SmField ep = apply_operator(Operator::eta_plus, u, with_a);
  for (const Frame& g : frames) CHECK(max_norm(mp(g) - ep(g)) < 1e-14);

  OperatorContext empty;
  CHECK_THROWS_AS(apply_operator(Operator::D_X, u, empty), Error);
  CHECK_THROWS_AS(apply_operator(Operator::mu_minus, u, ctx), Error);
  CHECK(parse_operator("eta_minus") == Operator::eta_minus);
}

TEST_CASE("commutator identities for the trivial connection") {
  const auto frames = sample_frames(5, 17);
  OperatorContext ctx = OperatorContext::trivial(2);
  ctx.step = FdStep{1e-4};
  ctx.star_f = zero_field(2);
  std::vector<SmField> sections{random_section(bolza(), 2, 2, 21), random_section(bolza(), 2, 3, 22)};
  for (Identity id : {Identity::commeta_1, Identity::commeta_2, Identity::commeta_3}) {
    const ResidualReport r = verify_identity(id, ctx, sections, frames);
    CAPTURE(to_string(id));
    CHECK(r.samples == 10);
    CHECK(r.max_residual <= 1e-5);
  }
}

TEST_CASE("commutator identities with a non-trivial fiber component") {
  // with G = 0 any constant c commutes with X and H
  const auto frames = sample_frames(4, 19);
  OperatorContext ctx = OperatorContext::trivial(2);
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = Complex(0, 1);
  c(1, 1) = Complex(0, -1);
  ctx.c = c;
  ctx.step = FdStep{1e-4};
  ctx.star_f = zero_field(2);
  std::vector<SmField> sections{random_section(bolza(), 2, 2, 31)};
  const ResidualReport r1 = verify_identity(Identity::commeta_1, ctx, sections, frames);
  const ResidualReport r2 = verify_identity(Identity::commeta_2, ctx, sections, frames);
  CHECK(r1.max_residual <= 1e-5);
  CHECK(r2.max_residual <= 1e-5);
}

TEST_CASE("auxiliar identity against the curvature of a matrix 1-form") {
  const auto frames = sample_frames(6, 23);
  OperatorContext ctx = OperatorContext::trivial(2);
  ctx.step = FdStep{1e-4};
  ctx.one_form_check = frames;
  ctx.a = zero_field(2);
  ctx.star_da = zero_field(2);
  CHECK(verify_identity(Identity::auxiliar, ctx, {}, frames).max_residual < 1e-14);

  std::mt19937 rng(29);
  const CMatrix p0 = rand_matrix(2, rng), p1 = rand_matrix(2, rng), q0 = rand_matrix(2, rng), q1 = rand_matrix(2, rng);
  // A = P dx + Q dy, P = p0 + y p1, Q = q0 + x q1
  auto pq = [=](Complex z) { return std::make_pair(CMatrix(p0 + z.imag() * p1), CMatrix(q0 + z.real() * q1)); };
  ctx.a = SmField(2, [=](const Frame& g) {
    const auto [p, q] = pq(g.base_point());
    const Complex v = g.tangent();
    return CMatrix(p * v.real() + q * v.imag());
  });
  // *(dA + A ^ A) = y^2 (Q_x - P_y + [P, Q])
  ctx.star_da = SmField(2, [=](const Frame& g) {
    const Complex z = g.base_point();
    const auto [p, q] = pq(z);
    return CMatrix(z.imag() * z.imag() * (q1 - p1 + p * q - q * p));
  });
  const ResidualReport r = verify_identity(Identity::auxiliar, ctx, {}, frames);
  CHECK(r.max_residual <= 1e-6);
}

TEST_CASE("quadrature measure and inner products") {
  const Quadrature q(bolza(), QuadratureSpec{});
  CHECK(std::abs(q.area() - 4 * kPi) < 1e-6);
  CHECK(std::abs(q.total_measure() - 8 * kPi * kPi) < 1e-6);

  const SmField id = identity_field(3);
  CHECK(std::abs(l2_inner(id, id, q) - Complex(3 * 8 * kPi * kPi)) < 1e-6);

  const SmField e1(1, [](const Frame& g) { return CMatrix::Constant(1, 1, g.fiber_phase()); });
  CHECK(std::abs(l2_inner(e1, identity_field(1), q)) < 1e-10);

  const SmField u = skew_bump(3), w = skew_bump(4);
  const Complex uw = l2_inner(u, w, q), wu = l2_inner(w, u, q);
  CHECK(std::abs(uw - std::conj(wu)) < 1e-10);
  const Complex uu = l2_inner(u, u, q);
  CHECK(uu.real() > 0.0);
  CHECK(std::abs(uu.imag()) < 1e-10);

  std::vector<std::string> warnings;
  l2_inner(u, w.with_invariance_defect(1e-3), q, 1e-8, warnings);
  CHECK(warnings.size() == 1);
}

TEST_CASE("invariant bumps") {
  const FuchsianSurface& s = bolza();
  const std::map<int, CMatrix> scalar{{0, CMatrix::Identity(1, 1)}};

  const SmField zero = invariant_bump(s, {BumpSpec{s.center(), 1.0, 0.0}}, scalar);
  for (const Frame& g : sample_frames(5, 2)) CHECK(zero(g).norm() == 0.0);

  // a bump centered at a vertex is split among the corners; defect shrinks with W
  const Complex vertex = s.vertices().front();
  const BumpSpec at_vertex{vertex, 0.8, 1.0};
  double previous = 1e300;
  for (int w : {1, 2, 4, 1 << 20}) {
    const InvariantScalar rho(s, {at_vertex}, w);
    CHECK(rho.invariance_defect() <= previous * (1 + 1e-9));
    previous = rho.invariance_defect();
  }
  CHECK(InvariantScalar(s, {at_vertex}, 1).invariance_defect() > 1e-3);
  CHECK(previous < 1e-14);

  // unfolding: int over SM of the averaged bump = 2 pi * int over H of one bump
  for (const BumpSpec& b : {BumpSpec{s.center(), 0.9, 1.0}, at_vertex}) {
    const SmField f = invariant_bump(s, {b}, scalar);
    const Quadrature q(s, QuadratureSpec{}.refined(4));
    const double numeric = l2_inner(f, identity_field(1), q).real();
    const auto [x, wt] = gauss_legendre(64);
    double radial = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = 0.5 * b.radius * (x[i] + 1.0);
      radial += 0.5 * b.radius * wt[i] * bump_profile(b, std::cosh(r)) * std::sinh(r);
    }
    const double exact = 2 * kPi * 2 * kPi * radial;
    CHECK(std::abs(numeric - exact) < 1e-4 * exact);
  }

  // derivative of the scalar against differences
  const InvariantScalar rho(s, {BumpSpec{s.center() + Complex(0.1, 0.05), 1.1, 1.0}});
  for (const Frame& g : sample_frames(5, 8)) {
    const Complex z = g.base_point();
    const double h = 1e-5;
    const double rx = (rho.value(z + h) - rho.value(z - h)) / (2 * h);
    const double ry = (rho.value(z + Complex(0, h)) - rho.value(z - Complex(0, h))) / (2 * h);
    CHECK(std::abs(rho.dz(z) - 0.5 * Complex(rx, -ry)) < 1e-7);
  }

  try {
    InvariantScalar(s, {BumpSpec{s.center(), 9.0, 1.0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kAveraging);
  }
}

TEST_CASE("bump sections are invariant") {
  const FuchsianSurface& s = bolza();
  const SmField f = skew_bump(5);
  for (const Frame& g : sample_frames(6, 31)) {
    for (const MoebiusD& a : s.generators()) {
      const Frame moved(a * g.g);
      CHECK(max_norm(f(moved) - f(g)) < 1e-12);
    }
    CHECK(max_norm(f(g) + f(g).adjoint()) < 1e-12);
  }
}

TEST_CASE("adjointness of eta") {
  const OperatorContext ctx = OperatorContext::trivial(2);
  const Quadrature q(bolza(), QuadratureSpec{}.refined(2));
  const SmField u = skew_bump(41, 1.2), w = skew_bump(42, 1.2);
  const Complex lhs = l2_inner(apply_operator(Operator::eta_plus, u, ctx), w, q);
  const Complex rhs = -l2_inner(u, apply_operator(Operator::eta_minus, w, ctx), q);
  CHECK(std::abs(lhs - rhs) < 1e-3 * (std::abs(lhs) + std::abs(rhs)));
}

TEST_CASE("Pestov identity on bump sections") {
  const OperatorContext ctx = OperatorContext::trivial(2);
  const Quadrature q(bolza(), QuadratureSpec{});
  const L2Report c = verify_l2_identity(L2Identity::pestov, constant_field(CMatrix::Identity(2, 2)), ctx, q);
  CHECK(std::abs(c.lhs) < 1e-12);
  CHECK(std::abs(c.rhs) < 1e-12);
  const L2Report r = verify_l2_identity(L2Identity::pestov, skew_bump(51), ctx, q);
  CHECK(r.warnings.empty());
  CHECK(r.lhs != 0.0);
  CHECK(r.relative_residual <= 1e-3);
}

TEST_CASE("degree bound") {
  using V = Eigen::VectorXd;
  CHECK(degree_bound({V::Zero(1)}, {V::Zero(1)}, -1.0, 1) == 1);
  CHECK(degree_bound({V::Zero(2), (V(2) << 0.5, -0.5).finished()}, {V::Zero(2), (V(2) << 1.0, 0.0).finished()},
                     -1.0, 2) == 2);
  CHECK_THROWS_AS(degree_bound({}, {}, -1.0, 1), Error);
  CHECK_THROWS_AS(degree_bound({V::Zero(1)}, {V::Zero(1)}, 0.0, 1), Error);

  std::mt19937 rng(61);
  std::vector<CMatrix> f1, f2;
  for (int i = 0; i < 5; ++i) {
    const CMatrix a = rand_matrix(3, rng), b = rand_matrix(3, rng);
    f1.push_back(0.5 * (a + a.adjoint()));
    f2.push_back(0.5 * (b + b.adjoint()));
  }
  const int l = degree_bound_from_matrices(f1, f2, -1.0);
  CHECK(l >= 1);
}
