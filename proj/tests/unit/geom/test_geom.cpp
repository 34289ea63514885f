#include <doctest.h>

#include <cmath>
#include <random>

#include "tcon/geom/frame.hpp"
#include "tcon/geom/geodesics.hpp"
#include "tcon/geom/group_ball.hpp"
#include "tcon/geom/surface.hpp"

using namespace tcon;

namespace {

Frame random_frame(std::mt19937& rng) {
  std::uniform_real_distribution<double> x(-1.5, 1.5), ly(-1.0, 1.0), th(0.0, 2.0 * kPi);
  return Frame::at(Complex(x(rng), std::exp(ly(rng))), th(rng));
}

// Smooth, non-symmetric test function of the group element.
double probe(const Frame& f) {
  const auto& m = f.g.matrix();
  return std::sin(m(0, 0) + 0.3 * m(0, 1)) * std::exp(-0.1 * m.squaredNorm()) + 0.2 * m(1, 0) * m(1, 1);
}

const FuchsianSurface& bolza() {
  static const FuchsianSurface s = bolza_surface();
  return s;
}

}  // namespace

TEST_CASE("moebius action examples") {
  CHECK(std::abs(mobius_apply(MoebiusD(), Complex(0, 2)) - Complex(0, 2)) < 1e-15);
  const MoebiusD dil(std::exp(0.5), 0.0, 0.0, std::exp(-0.5));
  CHECK(std::abs(mobius_apply(dil, kI) - Complex(0, std::exp(1.0))) < 1e-14);
  const MoebiusD rot(0.0, -1.0, 1.0, 0.0);
  CHECK(std::abs(mobius_apply(rot, kI) - kI) < 1e-15);
  CHECK_THROWS_AS(mobius_apply(MoebiusD(1.0, 0.0, 1.0, 1.0), Complex(-1.0, 0.0)), Error);
}

TEST_CASE("moebius sign normalization") {
  const MoebiusD a(2.0, 1.0, 1.0, 1.0);
  const MoebiusD b(-2.0, -1.0, -1.0, -1.0);
  CHECK(sign_distance(a, b) < 1e-15);
  CHECK(a.a() > 0);
  CHECK(std::abs(a.det() - 1.0) < 1e-14);
}

TEST_CASE("frame flows") {
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Frame g = random_frame(rng);
    CHECK(sign_distance(frame_flow(g, FrameField::V, 2 * kPi).g, g.g) < 1e-12);
    for (FrameField f : {FrameField::X, FrameField::H, FrameField::V}) {
      CHECK(sign_distance(frame_flow(g, f, 0.0).g, g.g) < 1e-15);
      const Frame a = frame_flow(frame_flow(g, f, 0.3), f, 0.5);
      CHECK(sign_distance(a.g, frame_flow(g, f, 0.8).g) < 1e-12);
    }
  }
  const Frame id;
  const Frame x = frame_flow(id, FrameField::X, 1.2);
  CHECK(std::abs(x.base_point() - Complex(0, std::exp(1.2))) < 1e-13);
}

TEST_CASE("frame geometry: tangent length, fiber rotation direction") {
  const Frame g = Frame::at(Complex(0.3, 2.0), 0.0);
  CHECK(std::abs(g.tangent() - Complex(0, 2.0)) < 1e-14);
  const Frame r = frame_flow(g, FrameField::V, kPi / 2);
  // counterclockwise: vertical -> pointing left
  CHECK(std::abs(r.tangent() - Complex(-2.0, 0.0)) < 1e-13);
  CHECK(std::abs(r.fiber_phase() - kI) < 1e-13);
}

TEST_CASE("fiber eigenfunction under V") {
  const Frame g = Frame::at(Complex(0.2, 0.7), 0.4);
  auto mode = [](const Frame& f) {
    const Complex p = f.fiber_phase();
    return p * p * p;
  };
  const Complex d = directional_derivative(mode, g, FrameField::V);
  CHECK(std::abs(d - Complex(0, 3) * mode(g)) < 1e-10);
  auto constant = [](const Frame&) { return 2.5; };
  CHECK(std::abs(directional_derivative(constant, g, FrameField::X)) < 1e-10);
}

TEST_CASE("structure equations by finite differences") {
  std::mt19937 rng(11);
  auto d = [](auto fn, FrameField a) {
    return [fn, a](const Frame& g) { return directional_derivative(fn, g, a); };
  };
  auto fn = [](const Frame& g) { return probe(g); };
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    const Frame g = random_frame(rng);
    const double vx = d(d(fn, FrameField::X), FrameField::V)(g) - d(d(fn, FrameField::V), FrameField::X)(g);
    const double vh = d(d(fn, FrameField::H), FrameField::V)(g) - d(d(fn, FrameField::V), FrameField::H)(g);
    const double xh = d(d(fn, FrameField::H), FrameField::X)(g) - d(d(fn, FrameField::X), FrameField::H)(g);
    worst = std::max(worst, std::abs(vx - d(fn, FrameField::H)(g)));
    worst = std::max(worst, std::abs(vh + d(fn, FrameField::X)(g)));
    worst = std::max(worst, std::abs(xh + d(fn, FrameField::V)(g)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("bolza surface invariants") {
  const FuchsianSurface& s = bolza();
  CHECK(s.rank() == 4);
  CHECK(s.sides().size() == 8);
  for (const MoebiusD& g : s.generators()) {
    CHECK(std::abs(g.abs_trace() - 2.0 * (1.0 + std::sqrt(2.0))) < 1e-12);
  }
  CHECK(s.relation_defect() < 1e-10);
  CHECK(std::abs(s.area() - 4.0 * kPi) < 1e-6);
  CHECK(std::abs(s.inradius() - std::acosh(1.0 + std::sqrt(2.0))) < 1e-10);
  // regular octagon with angles pi/4: cosh(R) = cot^2(pi/8)
  const double cot = 1.0 / std::tan(kPi / 8.0);
  CHECK(std::abs(std::cosh(s.circumradius()) - cot * cot) < 1e-9);
  for (const Complex& v : s.vertices()) CHECK(s.contains(v, 1e-9));
}

TEST_CASE("surface rejects a broken relation") {
  FuchsianSurface s = bolza();
  FuchsianSurface bad(s.generators(), parse_word("abcdABCD"), 2);
  CHECK_THROWS_AS(verify_surface(bad), Error);
}

TEST_CASE("words") {
  const Word w = parse_word("aBcD");
  CHECK(w == Word{1, -2, 3, -4});
  CHECK(word_to_string(inverse_word(w)) == "dCbA");
  CHECK_THROWS_AS(parse_word("a1"), Error);
}

TEST_CASE("reduce_to_domain") {
  const FuchsianSurface& s = bolza();
  const auto inside = reduce_to_domain(s, Complex(0.1, 1.1));
  CHECK(inside.word.empty());
  CHECK(std::abs(inside.z0 - Complex(0.1, 1.1)) < 1e-15);

  const auto gen = reduce_to_domain(s, mobius_apply(s.letter(1), s.center()));
  CHECK(std::abs(gen.z0 - s.center()) < 1e-12);
  CHECK(gen.word == Word{1});

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> x(-3, 3), ly(-4, 2);
  for (int k = 0; k < 200; ++k) {
    const Complex z(x(rng), std::exp(ly(rng)));
    const auto r = reduce_to_domain(s, z);
    CHECK(s.contains(r.z0, 1e-9));
    CHECK(std::abs(mobius_apply(s.evaluate(r.word), r.z0) - z) < 1e-10 * (1 + std::abs(z)));
    CHECK(sign_distance(s.evaluate(r.word), r.element) < 1e-8 * (1 + r.element.matrix().norm()));
  }
}

TEST_CASE("axis frame") {
  const double ell = 1.7;
  const MoebiusD diag(std::exp(ell / 2), 0, 0, std::exp(-ell / 2));
  const Frame f = axis_frame(diag);
  CHECK(std::abs(f.base_point() - kI) < 1e-12);
  CHECK(std::abs(f.tangent() - kI) < 1e-12);

  const MoebiusD q(1.3, 0.4, -0.2, 0.7);
  const MoebiusD conj = q * diag * q.inverse();
  const Frame fq = axis_frame(conj, mobius_apply(q, kI));
  CHECK(sign_distance(fq.g, q * f.g) < 1e-10);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    Eigen::Matrix2d m;
    m << u(rng), u(rng), u(rng), u(rng);
    if (m.determinant() <= 0.1) continue;
    const MoebiusD g(m);
    if (g.abs_trace() <= 2.05) continue;
    const Frame a = axis_frame(g);
    const Frame end = frame_flow(a, FrameField::X, translation_length(g));
    CHECK(sign_distance(end.g, g * a.g) < 1e-8);
  }
  CHECK_THROWS_AS(axis_frame(MoebiusD(0, -1, 1, 0)), Error);
}

TEST_CASE("group ball completeness against plain word enumeration") {
  const FuchsianSurface& s = bolza();
  const GroupBall ball(s, 7.0);
  const GroupBall words = word_ball(s, 4);
  int inside = 0;
  for (const BallElement& e : words.elements()) {
    if (e.distance <= 7.0) {
      ++inside;
      CHECK(ball.find(e.g) >= 0);
    }
  }
  CHECK(inside > 100);
  for (const BallElement& e : ball.elements()) CHECK(std::abs(e.distance - hyperbolic_distance(s.center(), mobius_apply(e.g, s.center()))) < 1e-9);
}

TEST_CASE("closed geodesics: systole and stability") {
  const FuchsianSurface& s = bolza();
  const double systole = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
  CHECK(std::abs(brute_force_systole(s, 6) - systole) < 1e-9);
  CHECK(enumerate_closed_geodesics(s, 3.0).geodesics.empty());

  const auto e4 = enumerate_closed_geodesics(s, 4.0);
  const auto e5 = enumerate_closed_geodesics(s, 5.0);
  REQUIRE(!e4.geodesics.empty());
  CHECK(std::abs(e4.geodesics.front().length - systole) < 1e-9);
  int mult = 0;
  for (const auto& g : e4.geodesics) mult += std::abs(g.length - systole) < 1e-9;
  int mult5 = 0;
  for (const auto& g : e5.geodesics) mult5 += std::abs(g.length - systole) < 1e-9;
  CHECK(mult == mult5);
  CHECK(mult == 24);
  REQUIRE(e5.geodesics.size() >= e4.geodesics.size());
  for (std::size_t i = 0; i < e4.geodesics.size(); ++i) {
    CHECK(std::abs(e4.geodesics[i].length - e5.geodesics[i].length) < 1e-9);
  }
  for (const auto& g : e5.geodesics) {
    CHECK(g.primitive);
    CHECK(g.trace > 2.0);
    const Frame end = frame_flow(g.axis_frame, FrameField::X, g.length);
    CHECK(sign_distance(end.g, g.element * g.axis_frame.g) < 1e-8);
    CHECK(sign_distance(s.evaluate(g.word), g.element) < 1e-8);
  }
  CHECK_THROWS_AS(enumerate_closed_geodesics(s, 20.0), Error);
}
