#include "tcon/fields/sm_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tcon {

namespace {

int field_index(FrameField f) { return f == FrameField::X ? 0 : f == FrameField::H ? 1 : 2; }

void require_same_rank(const SmField& a, const SmField& b, const char* op) {
  if (!a.valid() || !b.valid() || a.rank() != b.rank()) {
    throw Error(ErrorKind::kContract, std::string(op) + ": fields must be valid and of equal rank");
  }
}

}  // namespace

SmField::SmField(int rank, Eval eval, std::string label) {
  if (rank < 1) throw Error(ErrorKind::kContract, "SmField rank must be positive");
  Impl impl;
  impl.rank = rank;
  impl.eval = std::move(eval);
  impl.label = std::move(label);
  impl_ = std::make_shared<const Impl>(std::move(impl));
}

const std::string& SmField::label() const {
  static const std::string empty;
  return impl_ ? impl_->label : empty;
}

SmField::Impl SmField::copy_impl() const {
  if (!impl_) throw Error(ErrorKind::kContract, "empty SmField");
  return *impl_;
}

SmField SmField::with_label(std::string label) const {
  Impl i = copy_impl();
  i.label = std::move(label);
  return SmField(std::make_shared<const Impl>(std::move(i)));
}

SmField SmField::with_skew_hermitian(bool flag) const {
  Impl i = copy_impl();
  i.skew = flag;
  return SmField(std::make_shared<const Impl>(std::move(i)));
}

SmField SmField::with_invariance_defect(double defect) const {
  Impl i = copy_impl();
  i.defect = defect;
  return SmField(std::make_shared<const Impl>(std::move(i)));
}

SmField SmField::with_band_limit(int band) const {
  Impl i = copy_impl();
  i.band = band;
  return SmField(std::make_shared<const Impl>(std::move(i)));
}

SmField SmField::with_derivative(FrameField field, SmField d) const {
  require_same_rank(*this, d, "with_derivative");
  Impl i = copy_impl();
  i.derivs[field_index(field)] = std::make_shared<const SmField>(std::move(d));
  return SmField(std::make_shared<const Impl>(std::move(i)));
}

const SmField* SmField::exact_derivative(FrameField field) const {
  return impl_ ? impl_->derivs[field_index(field)].get() : nullptr;
}

double SmField::skew_defect(const std::vector<Frame>& frames) const {
  double d = 0.0;
  for (const Frame& g : frames) {
    const CMatrix v = (*this)(g);
    d = std::max(d, max_abs(v + v.adjoint()));
  }
  return d;
}

SmField constant_field(const CMatrix& value, std::string label) {
  if (value.rows() != value.cols()) throw Error(ErrorKind::kContract, "constant_field needs a square matrix");
  const SmField zero(static_cast<int>(value.rows()),
                     [n = value.rows()](const Frame&) { return CMatrix::Zero(n, n).eval(); }, "0");
  SmField f(static_cast<int>(value.rows()), [value](const Frame&) { return value; }, std::move(label));
  f = f.with_band_limit(0);
  for (FrameField u : {FrameField::X, FrameField::H, FrameField::V}) f = f.with_derivative(u, zero);
  return f;
}

SmField zero_field(int rank) { return constant_field(CMatrix::Zero(rank, rank), "0"); }
SmField identity_field(int rank) { return constant_field(CMatrix::Identity(rank, rank), "Id"); }

SmField operator+(const SmField& a, const SmField& b) {
  require_same_rank(a, b, "+");
  return SmField(a.rank(), [a, b](const Frame& g) { return (a(g) + b(g)).eval(); },
                 "(" + a.label() + "+" + b.label() + ")");
}

SmField operator-(const SmField& a, const SmField& b) {
  require_same_rank(a, b, "-");
  return SmField(a.rank(), [a, b](const Frame& g) { return (a(g) - b(g)).eval(); },
                 "(" + a.label() + "-" + b.label() + ")");
}

SmField operator-(const SmField& a) {
  return SmField(a.rank(), [a](const Frame& g) { return (-a(g)).eval(); }, "-" + a.label());
}

SmField operator*(const SmField& a, const SmField& b) {
  require_same_rank(a, b, "*");
  return SmField(a.rank(), [a, b](const Frame& g) { return (a(g) * b(g)).eval(); },
                 a.label() + "*" + b.label());
}

SmField operator*(Complex s, const SmField& a) {
  return SmField(a.rank(), [s, a](const Frame& g) { return (s * a(g)).eval(); }, a.label());
}

SmField operator*(const CMatrix& m, const SmField& a) {
  return SmField(a.rank(), [m, a](const Frame& g) { return (m * a(g)).eval(); }, a.label());
}

SmField operator*(const SmField& a, const CMatrix& m) {
  return SmField(a.rank(), [m, a](const Frame& g) { return (a(g) * m).eval(); }, a.label());
}

SmField adjoint(const SmField& a) {
  return SmField(a.rank(), [a](const Frame& g) { return CMatrix(a(g).adjoint()); }, a.label() + "*");
}

SmField commutator(const SmField& a, const SmField& b) {
  require_same_rank(a, b, "commutator");
  return SmField(a.rank(), [a, b](const Frame& g) { return commutator(a(g), b(g)); },
                 "[" + a.label() + "," + b.label() + "]");
}

SmField scalar_times(const SmField& s, const SmField& a) {
  if (s.rank() != 1) throw Error(ErrorKind::kContract, "scalar_times needs a rank-1 scalar field");
  return SmField(a.rank(), [s, a](const Frame& g) { return (s(g)(0, 0) * a(g)).eval(); },
                 s.label() + "." + a.label());
}

SmField derivative(const SmField& u, FrameField field, FdStep step) {
  if (!u.valid()) throw Error(ErrorKind::kContract, "derivative of an empty field");
  if (const SmField* d = u.exact_derivative(field)) return *d;
  return SmField(
      u.rank(),
      [u, field, step](const Frame& g) {
        const CMatrix r = directional_derivative([&u](const Frame& h) { return u(h); }, g, field, 1, step);
        if (!r.allFinite()) throw Error(ErrorKind::kDomain, "non-finite field value in derivative");
        return r;
      },
      std::string(to_string(field)) + "(" + u.label() + ")");
}

CMatrix FourierModes::evaluate(double theta) const {
  CMatrix out = CMatrix::Zero(coeffs.front().rows(), coeffs.front().cols());
  for (int m = -band; m <= band; ++m) out += std::polar(1.0, m * theta) * (*this)[m];
  return out;
}

int FourierModes::degree(double tol) const {
  int d = 0;
  for (int m = -band; m <= band; ++m) {
    if (max_abs((*this)[m]) > tol) d = std::max(d, std::abs(m));
  }
  return d;
}

FourierModes fiber_modes(const SmField& u, const Frame& g, int band, double tol) {
  if (band < 0) throw Error(ErrorKind::kContract, "band limit must be non-negative");
  const int nodes = 4 * band + 4;
  std::vector<CMatrix> samples(nodes);
  for (int j = 0; j < nodes; ++j) samples[j] = u(frame_flow(g, FrameField::V, 2.0 * kPi * j / nodes));
  auto coefficient = [&](int m) {
    CMatrix c = CMatrix::Zero(samples[0].rows(), samples[0].cols());
    for (int j = 0; j < nodes; ++j) c += std::polar(1.0, -2.0 * kPi * m * j / nodes) * samples[j];
    return CMatrix(c / static_cast<double>(nodes));
  };
  FourierModes out;
  out.base = g;
  out.band = band;
  double scale = 1.0;
  for (int m = -band; m <= band; ++m) {
    out.coeffs.push_back(coefficient(m));
    scale = std::max(scale, max_abs(out.coeffs.back()));
  }
  double stray = 0.0;
  for (int m = band + 1; m <= 2 * band + 1; ++m) {
    stray = std::max({stray, max_abs(coefficient(m)), m < 2 * band + 2 ? max_abs(coefficient(-m)) : 0.0});
  }
  if (stray > tol * scale) {
    std::ostringstream msg;
    msg << "fiber modes beyond " << band << " reach " << stray << " (tolerance " << tol * scale << ")";
    throw Error(ErrorKind::kBandLimit, msg.str());
  }
  return out;
}

int degree(const SmField& u, const std::vector<Frame>& frames, double tol, int band) {
  int d = 0;
  for (const Frame& g : frames) d = std::max(d, fiber_modes(u, g, band, tol).degree(tol));
  return d;
}

std::vector<int> mode_support(const SmField& u, const std::vector<Frame>& frames, double tol, int band) {
  std::vector<double> mass(2 * band + 1, 0.0);
  for (const Frame& g : frames) {
    const FourierModes modes = fiber_modes(u, g, band, tol);
    for (int m = -band; m <= band; ++m) mass[m + band] = std::max(mass[m + band], max_abs(modes[m]));
  }
  std::vector<int> out;
  for (int m = -band; m <= band; ++m) {
    if (mass[m + band] > tol) out.push_back(m);
  }
  return out;
}

OneFormSplit split_one_form(const SmField& a, const std::vector<Frame>& check_frames, double tol) {
  for (const Frame& g : check_frames) {
    const FourierModes modes = fiber_modes(a, g, 3, tol);
    const double scale = std::max(1.0, std::max(max_abs(modes[1]), max_abs(modes[-1])));
    for (int m = -3; m <= 3; ++m) {
      if (std::abs(m) == 1) continue;
      if (max_abs(modes[m]) > tol * scale) {
        std::ostringstream msg;
        msg << "field has fiber mode " << m << " of size " << max_abs(modes[m]);
        throw Error(ErrorKind::kNotAOneForm, msg.str());
      }
    }
  }
  auto rotated = [a](const Frame& g) { return a(frame_flow(g, FrameField::V, 0.5 * kPi)); };
  SmField plus(a.rank(), [a, rotated](const Frame& g) { return CMatrix(0.5 * (a(g) - kI * rotated(g))); },
               a.label() + "_1");
  SmField minus(a.rank(), [a, rotated](const Frame& g) { return CMatrix(0.5 * (a(g) + kI * rotated(g))); },
                a.label() + "_-1");
  return {plus.with_band_limit(1), minus.with_band_limit(1)};
}

}  // namespace tcon
