#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcon/connections/transport.hpp"
#include "tcon/fields/bump.hpp"

using namespace tcon;
using namespace tcon::testing;

namespace {

const std::vector<ClosedGeodesic>& short_geodesics() {
  static const std::vector<ClosedGeodesic> g = enumerate_closed_geodesics(bolza(), 5.0).geodesics;
  return g;
}

std::vector<ClosedGeodesic> first_geodesics(std::size_t n) {
  const auto& all = short_geodesics();
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(n, all.size()))};
}

// skew Y with entry (j, k) of fiber mode s_j - s_k, so that r = exp(Y)
// satisfies V(r) + [c, r] = 0 for c = diag(-i s)
SmField descending_gauge(const std::vector<int>& s, unsigned seed, double amplitude = 0.8) {
  const int n = static_cast<int>(s.size());
  std::mt19937 rng(seed);
  std::map<int, CMatrix> modes;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k < j) continue;
      const int m = s[j] - s[k];
      auto& a = modes.try_emplace(m, CMatrix::Zero(n, n)).first->second;
      auto& b = modes.try_emplace(-m, CMatrix::Zero(n, n)).first->second;
      std::normal_distribution<double> nd;
      if (j == k) {
        a(j, j) += Complex(0, nd(rng));
      } else {
        const Complex z(nd(rng), nd(rng));
        a(j, k) += z;
        b(k, j) += -std::conj(z);
      }
    }
  }
  const SmField y = invariant_bump(bolza(), {BumpSpec{bolza().center(), 1.2, amplitude}}, modes);
  return SmField(n, [y](const Frame& g) { return unitary_exp(y(g)); }, "scramble");
}

}  // namespace

TEST_CASE("ghost data and Chern bookkeeping") {
  const ConnectionOnSM trivial = ghost({0}, 2);
  CHECK(trivial.rank() == 1);
  CHECK(trivial.c().norm() == 0.0);
  CHECK(trivial.chern_number() == 0);

  const ConnectionOnSM pm = ghost({1, -1}, 2);
  CHECK(pm.c()(0, 0) == Complex(0, -1));
  CHECK(pm.c()(1, 1) == Complex(0, 1));
  CHECK(pm.chern_number() == 0);
  CHECK(pm.periodicity_defect() < 1e-10);

  CHECK(ghost({2, 1}, 2).chern_number() == 6);
  CHECK(ghost({-1}, 2).chern_number() == -2);
  CHECK(ghost({3, -1, 2}, 3).chern_number() == 16);

  const auto frames = sample_frames(10, 1);
  CHECK(descent_defect(pm, frames) == 0.0);
  for (const Frame& g : frames) CHECK(op_norm(curvature_XH(pm, g) - pm.c()) == 0.0);
}

TEST_CASE("ghost holonomy is exactly the identity") {
  for (const auto& s : {std::vector<int>{0}, std::vector<int>{1, -1}, std::vector<int>{2, 0, -3}}) {
    const HolonomyReport rep = transparency_report(ghost(s, 2), short_geodesics());
    CHECK(rep.max_defect == 0.0);
    CHECK(rep.geodesics.size() == short_geodesics().size());
  }
}

TEST_CASE("transport of a constant generator") {
  std::mt19937 rng(4);
  const CMatrix k = rand_skew(3, rng);
  const ConnectionOnSM conn(constant_field(k).with_skew_hermitian(), zero_field(3), CMatrix::Zero(3, 3), 2,
                            "synthetic constant");
  const Frame g = sample_frames(1, 2)[0];
  for (double t : {0.3, 2.0, -1.5}) {
    const TransportResult r = transport(conn, g, t);
    CHECK(op_norm(r.d - unitary_exp(-t * k)) < 1e-8);
    CHECK(r.unitarity_defect < 1e-9);
  }
  const ConnectionOnSM zero = ghost({0, 0}, 2);
  CHECK(op_norm(parallel_transport(zero, g, 7.0) - CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("transport cocycle law") {
  std::mt19937 rng(8);
  const SmField q = SmField(2, [a = rand_skew(2, rng), b = rand_skew(2, rng)](const Frame& g) {
                      const Complex z = g.base_point(), v = g.tangent();
                      return CMatrix(std::sin(z.real()) * a * (v.real() / z.imag()) + std::cos(z.imag()) * b);
                    }).with_skew_hermitian();
  const ConnectionOnSM conn(q, zero_field(2), CMatrix::Zero(2, 2), 2, "synthetic");
  const Frame g = sample_frames(1, 3)[0];
  const TransportOptions opts{1e-11, 0.02, 1e-9, 0.1};
  for (double t1 : {0.4, 1.1}) {
    const double t2 = 1.7;
    const CMatrix whole = parallel_transport(conn, g, t1 + t2, opts);
    const CMatrix split = parallel_transport(conn, frame_flow(g, FrameField::X, t1), t2, opts) *
                          parallel_transport(conn, g, t1, opts);
    CHECK(op_norm(whole - split) < 1e-9);
    CHECK(op_norm(whole.adjoint() * whole - CMatrix::Identity(2, 2)) < 1e-9);
  }
}

TEST_CASE("gauge transform by a constant") {
  std::mt19937 rng(12);
  const CMatrix q = polar_unitary(rand_matrix(2, rng));
  const CMatrix k = rand_skew(2, rng);
  const ConnectionOnSM conn(constant_field(k).with_skew_hermitian(), constant_field(k).with_skew_hermitian(),
                            CMatrix::Zero(2, 2), 2);
  const auto frames = sample_frames(4, 5);
  const ConnectionOnSM out = gauge_transform(conn, constant_field(q), frames);
  for (const Frame& g : frames) {
    CHECK(op_norm(out.g_x()(g) - q.adjoint() * k * q) < 1e-12);
    CHECK(op_norm(out.g_h()(g) - q.adjoint() * k * q) < 1e-12);
  }
  CHECK(out.constant_vertical());
  CHECK_THROWS_AS(gauge_transform(conn, constant_field(2.0 * q), frames), Error);
}

TEST_CASE("scrambled ghost stays transparent and descends") {
  const std::vector<int> s{1, -1};
  const ConnectionOnSM base = ghost(s, 2);
  const SmField r = descending_gauge(s, 21);
  const auto frames = sample_frames(12, 6);
  const FdStep step{2.5e-4};
  const ConnectionOnSM scrambled = gauge_transform(base, r, frames, true, step);
  CHECK(scrambled.constant_vertical());
  CHECK(descent_defect(scrambled, frames) < 1e-6);
  double gx = 0.0;
  for (const Frame& g : frames) gx = std::max(gx, op_norm(scrambled.g_x()(g)));
  CHECK(gx > 1e-2);
  const HolonomyReport rep = transparency_report(scrambled, first_geodesics(6));
  CHECK(rep.max_defect < 1e-6);

  // undoing the scramble
  const SmField r_inv = SmField(2, [r](const Frame& g) { return CMatrix(r(g).adjoint()); });
  const ConnectionOnSM back = gauge_transform(scrambled, r_inv, frames, true, step);
  for (const Frame& g : frames) CHECK(op_norm(back.g_x()(g)) < 1e-6);

  // a non-descending r is refused
  const SmField twist(2, [](const Frame& g) {
    return CMatrix(CMatrix(Eigen::Vector2cd(g.fiber_phase(), std::conj(g.fiber_phase())).asDiagonal()));
  });
  CHECK_THROWS_AS(gauge_transform(ghost({0, 0}, 2), twist, frames), Error);
}

TEST_CASE("holonomy conjugates under a descending gauge") {
  std::mt19937 rng(30);
  const CMatrix m1 = rand_matrix(2, rng);
  const std::map<int, CMatrix> modes{{1, m1}, {-1, -m1.adjoint()}};
  const SmField q = invariant_bump(bolza(), {BumpSpec{bolza().center(), 1.2, 0.3}}, modes).with_skew_hermitian();
  const ConnectionOnSM conn = perturb(ghost({0, 0}, 2), q, 1.0);
  const SmField r = descending_gauge({0, 0}, 31);
  const auto frames = sample_frames(6, 7);
  const ConnectionOnSM gauged = gauge_transform(conn, r, frames, true, {2.5e-4});
  const auto geos = first_geodesics(3);
  const HolonomyReport a = transparency_report(conn, geos);
  const HolonomyReport b = transparency_report(gauged, geos);
  CHECK(a.max_defect > 1e-3);
  for (std::size_t i = 0; i < geos.size(); ++i) {
    const CMatrix rs = r(geos[i].axis_frame);
    CHECK(op_norm(b.geodesics[i].holonomy - rs.adjoint() * a.geodesics[i].holonomy * rs) < 1e-6);
    CHECK(std::abs(a.geodesics[i].defect - b.geodesics[i].defect) < 1e-6);
  }
}

TEST_CASE("perturbed ghost is not transparent") {
  std::mt19937 rng(40);
  const CMatrix m1 = rand_matrix(2, rng);
  const std::map<int, CMatrix> modes{{1, m1}, {-1, -m1.adjoint()}};
  const SmField q = invariant_bump(bolza(), {BumpSpec{bolza().center(), 1.2, 1.0}}, modes).with_skew_hermitian();
  const ConnectionOnSM conn = perturb(ghost({1, -1}, 2), q, 1e-2);
  const auto frames = sample_frames(8, 9);
  // a pulled-back 1-form keeps the connection descending only when c = 0
  CHECK(descent_defect(perturb(ghost({0, 0}, 2), q, 1e-2), frames) < 1e-8);
  CHECK(transparency_report(conn, first_geodesics(6)).max_defect >= 1e-3);
}

TEST_CASE("abelian holonomy angles") {
  const auto geos = first_geodesics(6);
  const SmField zero = zero_field(1);
  for (const auto& g : geos) {
    const AbelianAngle a = abelian_holonomy_angle(zero, g);
    CHECK(a.raw == 0.0);
    CHECK(a.reduced == 0.0);
  }

  // n = 1 ghost in the gauge r = e^{i chi}: theta = X(chi)
  const SmField chi = invariant_bump(bolza(), {BumpSpec{bolza().center(), 1.3, 2.0}}, {{0, CMatrix::Identity(1, 1)}});
  const SmField r(1, [chi](const Frame& g) { return CMatrix(CMatrix::Identity(1, 1) * std::exp(Complex(0, 1) * chi(g)(0, 0))); });
  const auto frames = sample_frames(4, 11);
  const ConnectionOnSM scrambled = gauge_transform(ghost({0}, 2), r, frames, true, {2.5e-4});
  const SmField theta = Complex(0, -1) * scrambled.g_x();
  double largest_theta = 0.0;
  for (const auto& g : geos) {
    const AbelianAngle a = abelian_holonomy_angle(theta, g);
    CHECK(std::abs(a.raw - 2 * kPi * std::round(a.raw / (2 * kPi))) < 1e-6);
    largest_theta = std::max(largest_theta, std::abs(theta(frame_flow(g.axis_frame, FrameField::X, 0.3))(0, 0)));
  }
  CHECK(largest_theta > 1e-3);

  // a generic small 1-form
  const std::map<int, CMatrix> modes{{1, CMatrix::Constant(1, 1, Complex(0.3, 0.2))},
                                     {-1, CMatrix::Constant(1, 1, Complex(0.3, -0.2))}};
  const SmField generic = invariant_bump(bolza(), {BumpSpec{bolza().center(), 1.3, 0.05}}, modes);
  double worst = 0.0;
  for (const auto& g : geos) worst = std::max(worst, std::abs(abelian_holonomy_angle(generic, g).reduced));
  CHECK(worst > 1e-4);
}

TEST_CASE("reconstruction from constant curvature") {
  const CMatrix k = (CMatrix(2, 2) << Complex(0, 1), 0.5, -0.5, Complex(0, -2)).finished();
  const Frame g = sample_frames(1, 13)[0];
  const Reconstruction r = reconstruct_f_from_curvature(constant_field(2.0 * k), bolza(), g, 20.0);
  // 2f = (int_0^inf + int_-inf^0) e^{-|s|} 2k ds = 4k
  CHECK(op_norm(r.f - 2.0 * k) < op_norm(k) * std::exp(-20.0) * 2 + 1e-12);
  CHECK(r.truncation_bound <= std::exp(-20.0) * op_norm(2.0 * k) * (1 + 1e-12));

  // truncation oracle on a varying field
  const SmField field(1, [](const Frame& h) {
    const Complex z = h.base_point();
    return CMatrix::Constant(1, 1, Complex(std::cos(3 * z.real()) + std::sin(2 * z.imag()), 0.0));
  });
  const Reconstruction a = reconstruct_f_from_curvature(field, bolza(), g, 10.0);
  const Reconstruction b = reconstruct_f_from_curvature(field, bolza(), g, 15.0);
  CHECK(op_norm(a.f - b.f) <= std::exp(-10.0) * a.max_curvature);

  // ghost curvature is c, so the reconstruction returns c
  const ConnectionOnSM pm = ghost({1, -1}, 2);
  CHECK(op_norm(reconstruct_f_from_curvature(pm, bolza(), g, 20.0).f - pm.c()) < 1e-8);
}
