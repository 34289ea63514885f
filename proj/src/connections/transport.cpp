#include "tcon/connections/transport.hpp"

#include <cmath>
#include <functional>

#include "tcon/gauss.hpp"
#include "tcon/parallel.hpp"

namespace tcon {

namespace {

CMatrix rk4_step(const ConnectionOnSM& conn, const Frame& g0, double t, double h, const CMatrix& d) {
  auto rhs = [&](double s, const CMatrix& m) -> CMatrix {
    return -conn.g_x()(frame_flow(g0, FrameField::X, s)) * m;
  };
  const CMatrix k1 = rhs(t, d);
  const CMatrix k2 = rhs(t + 0.5 * h, d + 0.5 * h * k1);
  const CMatrix k3 = rhs(t + 0.5 * h, d + 0.5 * h * k2);
  const CMatrix k4 = rhs(t + h, d + h * k3);
  return d + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double unitarity(const CMatrix& d) {
  return op_norm(d.adjoint() * d - CMatrix::Identity(d.rows(), d.cols()));
}

}  // namespace

TransportResult transport(const ConnectionOnSM& conn, const Frame& g0, double t_end, TransportOptions opts) {
  if (!std::isfinite(t_end)) throw Error(ErrorKind::kContract, "transport time must be finite");
  if (!(opts.tol > 0.0) || !(opts.min_step > 0.0)) throw Error(ErrorKind::kContract, "transport tolerances");
  const int n = conn.rank();
  TransportResult out{CMatrix::Identity(n, n)};
  const double span = std::abs(t_end);
  if (span == 0.0) return out;
  const double dir = t_end > 0 ? 1.0 : -1.0;
  double t = 0.0;
  double h = std::min(opts.initial_step, span);
  while (t < span) {
    h = std::min(h, span - t);
    const CMatrix full = rk4_step(conn, g0, dir * t, dir * h, out.d);
    const CMatrix half = rk4_step(conn, g0, dir * t, dir * 0.5 * h, out.d);
    const CMatrix two = rk4_step(conn, g0, dir * (t + 0.5 * h), dir * 0.5 * h, half);
    const double err = op_norm(two - full) / 15.0;
    const double allowed = opts.tol * h / span;
    if (err <= allowed || h <= opts.min_step) {
      if (err > allowed) throw Error(ErrorKind::kIntegration, "transport step underflow");
      CMatrix next = two + (two - full) / 15.0;
      if (unitarity(next) > 0.0) next = polar_unitary(next);
      out.d = next;
      out.error_estimate += err;
      ++out.steps;
      t += h;
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.2) : 2.0;
    h = std::clamp(h * std::clamp(grow, 0.2, 2.0), opts.min_step, opts.max_step);
  }
  out.unitarity_defect = unitarity(out.d);
  return out;
}

HolonomyReport transparency_report(const ConnectionOnSM& conn, const std::vector<ClosedGeodesic>& geodesics,
                                   TransportOptions opts, HolonomyBudget budget) {
  HolonomyReport report;
  report.connection = conn.label();
  report.geodesics.resize(geodesics.size());
  std::vector<double> unit(geodesics.size(), 0.0);
  parallel_for(geodesics.size(), [&](std::size_t i) {
    const ClosedGeodesic& gam = geodesics[i];
    const TransportResult r = transport(conn, gam.axis_frame, gam.length, opts);
    GeodesicHolonomy& h = report.geodesics[i];
    h.word = word_to_string(gam.word);
    h.length = gam.length;
    h.holonomy = r.d;
    h.defect = op_norm(r.d - CMatrix::Identity(conn.rank(), conn.rank()));
    h.steps = r.steps;
    h.ode_error = r.error_estimate;
    unit[i] = r.unitarity_defect;
  });
  budget.ode = std::max(budget.ode, opts.tol);
  report.budget = budget;
  for (std::size_t i = 0; i < geodesics.size(); ++i) {
    report.max_defect = std::max(report.max_defect, report.geodesics[i].defect);
    report.max_unitarity_defect = std::max(report.max_unitarity_defect, unit[i]);
  }
  return report;
}

AbelianAngle abelian_holonomy_angle(const SmField& theta, const ClosedGeodesic& gamma, int panels) {
  if (theta.rank() != 1) throw Error(ErrorKind::kContract, "abelian_holonomy_angle needs a rank-one field");
  const auto [x, w] = gauss_legendre(8);
  const double len = gamma.length / panels;
  double raw = 0.0;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = (p + 0.5 * (x[i] + 1.0)) * len;
      raw += 0.5 * len * w[i] * theta(frame_flow(gamma.axis_frame, FrameField::X, t))(0, 0).real();
    }
  }
  return {raw, -std::remainder(-raw, 2.0 * kPi)};
}

Reconstruction reconstruct_f_from_curvature(const SmField& curvature, const FuchsianSurface& surface, const Frame& g,
                                            double t_trunc, double panel_length, int order, double tol) {
  if (!(t_trunc > 0.0) || !(panel_length > 0.0)) throw Error(ErrorKind::kContract, "reconstruction window");
  const auto [x, w] = gauss_legendre(order);
  const int panels = static_cast<int>(std::ceil(t_trunc / panel_length));
  const double len = t_trunc / panels;
  const int n = curvature.rank();
  std::vector<CMatrix> partial(2 * panels, CMatrix::Zero(n, n));
  std::vector<double> peak(2 * panels, 0.0);
  // Panel starts are reduced into the polygon so long flows keep full precision.
  std::vector<Frame> start(2 * panels);
  for (int dir = 0; dir < 2; ++dir) {
    Frame cur = reduce_frame(surface, g).frame0;
    for (int p = 0; p < panels; ++p) {
      start[2 * p + dir] = cur;
      cur = reduce_frame(surface, frame_flow(cur, FrameField::X, dir == 0 ? len : -len)).frame0;
    }
  }
  std::vector<double> qerr(2 * panels, 0.0);
  parallel_for(2 * panels, [&](std::size_t k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const int p = static_cast<int>(k / 2);
    // Gauss rule on [a, b] of the panel-local time, weighted by e^{-s}.
    auto rule = [&](double a, double b) {
      CMatrix acc = CMatrix::Zero(n, n);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double local = a + 0.5 * (x[i] + 1.0) * (b - a);
        const CMatrix fv = curvature(frame_flow(start[k], FrameField::X, sign * local));
        acc += 0.5 * (b - a) * w[i] * std::exp(-(p * len + local)) * fv;
        peak[k] = std::max(peak[k], op_norm(fv));
      }
      return acc;
    };
    std::function<CMatrix(double, double, const CMatrix&, int)> adapt = [&](double a, double b, const CMatrix& whole,
                                                                            int depth) -> CMatrix {
      const double m = 0.5 * (a + b);
      const CMatrix left = rule(a, m), right = rule(m, b);
      const CMatrix sum = left + right;
      const double diff = op_norm(sum - whole);
      if (diff <= tol * (b - a) / len || depth >= 14) {
        qerr[k] += diff;
        return sum;
      }
      return CMatrix(adapt(a, m, left, depth + 1) + adapt(m, b, right, depth + 1));
    };
    partial[k] = adapt(0.0, len, rule(0.0, len), 0);
  });
  Reconstruction out{CMatrix::Zero(n, n)};
  for (std::size_t k = 0; k < partial.size(); ++k) {
    out.f += partial[k];
    out.max_curvature = std::max(out.max_curvature, peak[k]);
    out.quadrature_error += 0.5 * qerr[k];
  }
  out.f *= 0.5;
  out.truncation_bound = std::exp(-t_trunc) * out.max_curvature;
  return out;
}

Reconstruction reconstruct_f_from_curvature(const ConnectionOnSM& conn, const FuchsianSurface& surface, const Frame& g,
                                            double t_trunc, FdStep step) {
  return reconstruct_f_from_curvature(curvature_XH_field(conn, step), surface, g, t_trunc);
}

}  // namespace tcon
