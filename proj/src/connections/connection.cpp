#include "tcon/connections/connection.hpp"

#include <cmath>

#include "tcon/parallel.hpp"

namespace tcon {

ConnectionOnSM::ConnectionOnSM(SmField g_x, SmField g_h, CMatrix c, int genus, std::string label)
    : g_x_(std::move(g_x)), g_h_(std::move(g_h)), c_(std::move(c)), genus_(genus), label_(std::move(label)) {
  if (c_.rows() != c_.cols() || g_x_.rank() != c_.rows() || g_h_.rank() != c_.rows()) {
    throw Error(ErrorKind::kContract, "connection components have inconsistent ranks");
  }
}

SmField ConnectionOnSM::g_v() const { return g_v_ ? *g_v_ : constant_field(c_, "c"); }

ConnectionOnSM ConnectionOnSM::with_vertical(SmField g_v) const {
  if (g_v.rank() != rank()) throw Error(ErrorKind::kContract, "vertical field rank differs");
  ConnectionOnSM out = *this;
  out.g_v_ = std::move(g_v);
  return out;
}

ConnectionOnSM ConnectionOnSM::with_label(std::string label) const {
  ConnectionOnSM out = *this;
  out.label_ = std::move(label);
  return out;
}

long ConnectionOnSM::chern_number() const {
  return std::lround((2.0 * genus_ - 2.0) * (kI * c_.trace()).real());
}

double ConnectionOnSM::periodicity_defect() const {
  return op_norm(unitary_exp(2.0 * kPi * c_) - CMatrix::Identity(rank(), rank()));
}

double ConnectionOnSM::skew_defect(const std::vector<Frame>& frames) const {
  double d = op_norm(c_ + c_.adjoint());
  d = std::max(d, g_x_.skew_defect(frames));
  d = std::max(d, g_h_.skew_defect(frames));
  if (g_v_) d = std::max(d, g_v_->skew_defect(frames));
  return d;
}

ConnectionOnSM ghost(const std::vector<int>& s, int genus) {
  if (s.empty()) throw Error(ErrorKind::kContract, "ghost needs at least one weight");
  const int n = static_cast<int>(s.size());
  CMatrix c = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) c(k, k) = Complex(0.0, -s[k]);
  std::string label = "ghost(";
  for (int k = 0; k < n; ++k) label += (k ? "," : "") + std::to_string(s[k]);
  label += ")";
  return ConnectionOnSM(zero_field(n), zero_field(n), c, genus, label);
}

namespace {

CMatrix field_derivative(const SmField& u, const Frame& g, FrameField field, FdStep step) {
  if (const SmField* d = u.exact_derivative(field)) return (*d)(g);
  return directional_derivative([&u](const Frame& f) { return u(f); }, g, field, 1, step);
}

}  // namespace

double descent_defect(const ConnectionOnSM& conn, const std::vector<Frame>& frames, FdStep step) {
  std::vector<double> d(frames.size(), 0.0);
  const SmField gv = conn.g_v();
  const bool constant = conn.constant_vertical();
  parallel_for(frames.size(), [&](std::size_t i) {
    const Frame& g = frames[i];
    const CMatrix gx = conn.g_x()(g), gh = conn.g_h()(g), v = gv(g);
    CMatrix fvx = field_derivative(conn.g_x(), g, FrameField::V, step) + commutator(v, gx) - gh;
    CMatrix fvh = field_derivative(conn.g_h(), g, FrameField::V, step) + commutator(v, gh) + gx;
    if (!constant) {
      fvx -= field_derivative(gv, g, FrameField::X, step);
      fvh -= field_derivative(gv, g, FrameField::H, step);
    }
    d[i] = std::max(op_norm(fvx), op_norm(fvh));
  });
  double m = 0.0;
  for (double x : d) m = std::max(m, x);
  return m;
}

CMatrix curvature_XH(const ConnectionOnSM& conn, const Frame& g, FdStep step) {
  const double k = -1.0;
  const CMatrix gx = conn.g_x()(g), gh = conn.g_h()(g);
  return field_derivative(conn.g_h(), g, FrameField::X, step) - field_derivative(conn.g_x(), g, FrameField::H, step) -
         k * conn.g_v()(g) + commutator(gx, gh);
}

SmField curvature_XH_field(const ConnectionOnSM& conn, FdStep step) {
  return SmField(conn.rank(), [conn, step](const Frame& g) { return curvature_XH(conn, g, step); }, "F(X,H)");
}

ConnectionOnSM gauge_transform(const ConnectionOnSM& conn, const SmField& r, const std::vector<Frame>& check_frames,
                               bool require_descending, FdStep step, double tol) {
  const int n = conn.rank();
  if (r.rank() != n) throw Error(ErrorKind::kContract, "gauge rank differs from connection rank");
  const CMatrix id = CMatrix::Identity(n, n);
  for (const Frame& g : check_frames) {
    const CMatrix rv = r(g);
    if (op_norm(rv.adjoint() * rv - id) > tol) throw Error(ErrorKind::kContract, "gauge is not unitary");
    if (require_descending) {
      const CMatrix dv = field_derivative(r, g, FrameField::V, step) + commutator(conn.c(), rv);
      if (op_norm(dv) > tol) throw Error(ErrorKind::kContract, "gauge does not descend: D_V r != 0");
    }
  }
  auto transformed = [r, step](const SmField& gf, FrameField field) {
    return SmField(gf.rank(), [r, gf, field, step](const Frame& g) {
      const CMatrix rv = r(g);
      return CMatrix(rv.adjoint() * field_derivative(r, g, field, step) + rv.adjoint() * gf(g) * rv);
    });
  };
  ConnectionOnSM out(transformed(conn.g_x(), FrameField::X).with_skew_hermitian(),
                     transformed(conn.g_h(), FrameField::H).with_skew_hermitian(), conn.c(), conn.genus(),
                     conn.label() + " (gauged)");
  if (!require_descending || !conn.constant_vertical()) {
    out = out.with_vertical(transformed(conn.g_v(), FrameField::V).with_skew_hermitian());
  }
  return out;
}

ConnectionOnSM perturb(const ConnectionOnSM& conn, const SmField& q, double eps) {
  const SmField rotated(q.rank(), [q](const Frame& g) { return q(frame_flow(g, FrameField::V, kPi / 2)); });
  ConnectionOnSM out(conn.g_x() + Complex(eps) * q, conn.g_h() + Complex(eps) * rotated, conn.c(), conn.genus(),
                     conn.label() + " (perturbed)");
  if (!conn.constant_vertical()) out = out.with_vertical(conn.g_v());
  return out;
}

CMatrix unitary_exp(const CMatrix& skew) {
  // skew = i h with h Hermitian
  const CMatrix h = Complex(0, -1) * skew;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXcd phases = (kI * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace tcon
