#include "tcon/fields/quadrature.hpp"

#include <cmath>
#include <numeric>

#include "tcon/gauss.hpp"
#include "tcon/parallel.hpp"

namespace tcon {

Quadrature::Quadrature(const FuchsianSurface& surface, QuadratureSpec spec) : spec_(spec) {
  if (spec.angular < 1 || spec.radial < 1 || spec.fiber < 1 || spec.order < 1) {
    throw Error(ErrorKind::kContract, "quadrature resolution must be positive");
  }
  const auto [gx, gw] = gauss_legendre(spec.order);
  for (const auto& side : surface.sides()) {
    // Angular variable: arc length sigma along the side from the foot of the
    // perpendicular, tan(psi) = tanh(sigma) / sinh(r_in). The disc angle has a
    // nearby complex singularity, sigma does not.
    const double foot = std::arg(side.circle_center);
    const double r_in = 2.0 * std::atanh(FuchsianSurface::boundary_radius(side, foot));
    const double sh = std::sinh(r_in);
    auto sigma_of = [&](double phi) { return std::atanh(std::tan(std::remainder(phi - foot, 2.0 * kPi)) * sh); };
    const double s0 = sigma_of(side.phi_begin), s1 = sigma_of(side.phi_end);
    const double dsig = (s1 - s0) / spec.angular;
    const double dt = 1.0 / spec.radial;
    for (int a = 0; a < spec.angular; ++a) {
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double sigma = s0 + (a + 0.5 * (gx[i] + 1.0)) * dsig;
        const double psi = std::atan(std::tanh(sigma) / sh);
        const double dpsi = std::pow(std::cos(psi) / std::cosh(sigma), 2) / sh;
        // hyperbolic radius to the side, dA = sinh(s) ds dphi
        const double smax = std::acosh(std::cosh(r_in) * std::cosh(sigma));
        for (int r = 0; r < spec.radial; ++r) {
          for (std::size_t j = 0; j < gx.size(); ++j) {
            const double t = (r + 0.5 * (gx[j] + 1.0)) * dt;
            const double jac = dpsi * smax * std::sinh(t * smax);
            nodes_.push_back({surface.from_disc(std::polar(std::tanh(0.5 * t * smax), foot + psi)),
                              0.25 * dsig * dt * gw[i] * gw[j] * jac});
          }
        }
      }
    }
  }
}

double Quadrature::area() const {
  double a = 0.0;
  for (const auto& n : nodes_) a += n.weight;
  return a;
}

double Quadrature::total_measure() const { return 2.0 * kPi * area(); }

std::vector<Complex> Quadrature::integrate_many(const std::function<std::vector<Complex>(const Frame&)>& fn,
                                                std::size_t count) const {
  const int nf = spec_.fiber;
  std::vector<std::vector<Complex>> partial(nodes_.size(), std::vector<Complex>(count, 0.0));
  parallel_for(nodes_.size(), [&](std::size_t i) {
    const double w = nodes_[i].weight * 2.0 * kPi / nf;
    for (int j = 0; j < nf; ++j) {
      const auto v = fn(Frame::at(nodes_[i].z, 2.0 * kPi * (j + 0.5) / nf));
      for (std::size_t c = 0; c < count; ++c) partial[i][c] += w * v.at(c);
    }
  });
  std::vector<Complex> out(count, 0.0);
  for (const auto& p : partial) {
    for (std::size_t c = 0; c < count; ++c) out[c] += p[c];
  }
  return out;
}

Complex Quadrature::integrate(const std::function<Complex(const Frame&)>& fn) const {
  return integrate_many([&fn](const Frame& g) { return std::vector<Complex>{fn(g)}; }, 1).front();
}

Complex l2_inner(const SmField& u, const SmField& w, const Quadrature& q) {
  if (u.rank() != w.rank()) throw Error(ErrorKind::kContract, "l2_inner: ranks differ");
  return q.integrate([&](const Frame& g) { return (u(g) * w(g).adjoint()).trace(); });
}

Complex l2_inner(const SmField& u, const SmField& w, const Quadrature& q, double defect_budget,
                 std::vector<std::string>& warnings) {
  for (const SmField* f : {&u, &w}) {
    if (f->invariance_defect() > defect_budget) {
      warnings.push_back("invariance defect of " + f->label() + " is " + std::to_string(f->invariance_defect()));
    }
  }
  return l2_inner(u, w, q);
}

namespace {

const char* const kL2Names[] = {"cor1", "pestov", "pestov_solution"};

double re_inner(const CMatrix& a, const CMatrix& b) { return (a * b.adjoint()).trace().real(); }

}  // namespace

const char* to_string(L2Identity id) { return kL2Names[static_cast<int>(id)]; }

L2Identity parse_l2_identity(const std::string& name) {
  for (int i = 0; i < 3; ++i) {
    if (name == kL2Names[i]) return static_cast<L2Identity>(i);
  }
  throw Error(ErrorKind::kParse, "unknown integral identity " + name);
}

L2Report verify_l2_identity(L2Identity id, const SmField& field, const OperatorContext& ctx, const Quadrature& q,
                            double defect_budget) {
  L2Report rep;
  rep.identity = to_string(id);
  rep.frames = q.frame_count();
  if (field.invariance_defect() > defect_budget) {
    rep.warnings.push_back("invariance defect " + std::to_string(field.invariance_defect()) + " above budget");
  }
  const double k = ctx.curvature;
  Complex lhs, rhs;
  if (id == L2Identity::cor1) {
    const SmField mp = apply_operator(Operator::mu_plus, field, ctx);
    const SmField mm = apply_operator(Operator::mu_minus, field, ctx);
    const SmField dv = apply_operator(Operator::D_V, field, ctx);
    if (!ctx.star_f || !ctx.star_f0) throw Error(ErrorKind::kContract, "cor1 needs *F and *F0");
    const SmField sf = *ctx.star_f, sf0 = *ctx.star_f0;
    const auto v = q.integrate_many(
        [&](const Frame& g) {
          const CMatrix u = field(g), a = mp(g), b = mm(g);
          const CMatrix uu = u.adjoint();
          return std::vector<Complex>{(a * a.adjoint()).trace(), (b * b.adjoint()).trace(),
                                      (k * dv(g) * uu).trace(), (sf0(g) * u * uu).trace(),
                                      (u * sf(g) * uu).trace()};
        },
        5);
    lhs = v[0];
    rhs = v[1] + 0.5 * kI * (v[2] + v[3] - v[4]);
  } else {
    const SmField xf = derivative(field, FrameField::X, ctx.step);
    const SmField hf = derivative(field, FrameField::H, ctx.step);
    const SmField vf = derivative(field, FrameField::V, ctx.step);
    const SmField vxf = derivative(xf, FrameField::V, ctx.step);
    const bool solution = id == L2Identity::pestov_solution;
    const auto v = q.integrate_many(
        [&](const Frame& g) {
          const CMatrix x = xf(g), h = hf(g), vv = vf(g);
          const CMatrix mixed = solution ? commutator(x, field(g)) : vxf(g);
          return std::vector<Complex>{re_inner(h, mixed), re_inner(h, h), re_inner(x, x), re_inner(vv, vv)};
        },
        4);
    lhs = 2.0 * v[0];
    rhs = (solution ? 3.0 : 1.0) * v[1] + v[2] - k * v[3];
  }
  rep.lhs = lhs.real();
  rep.rhs = rhs.real();
  rep.relative_residual = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
  return rep;
}

}  // namespace tcon
