#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcon/geom/frame.hpp"

namespace tcon {

/// A section over SM with values in n x n complex matrices, given as a pure
/// evaluator on frames.
///
/// A field may carry exact derivative fields along X, H or V; `derivative`
/// uses them when present and falls back on fourth-order finite differences
/// otherwise.
class SmField {
 public:
  using Eval = std::function<CMatrix(const Frame&)>;

  SmField() = default;
  SmField(int rank, Eval eval, std::string label = "field");

  int rank() const { return impl_ ? impl_->rank : 0; }
  bool valid() const { return static_cast<bool>(impl_); }
  const std::string& label() const;
  CMatrix operator()(const Frame& g) const { return impl_->eval(g); }

  bool skew_hermitian() const { return impl_ && impl_->skew; }
  double invariance_defect() const { return impl_ ? impl_->defect : 0.0; }
  /// Declared fiber band limit, -1 if unknown.
  int band_limit() const { return impl_ ? impl_->band : -1; }

  SmField with_label(std::string label) const;
  SmField with_skew_hermitian(bool flag = true) const;
  SmField with_invariance_defect(double defect) const;
  SmField with_band_limit(int band) const;
  /// Attach the exact derivative along `field`.
  SmField with_derivative(FrameField field, SmField d) const;
  const SmField* exact_derivative(FrameField field) const;

  /// Largest |value* + value| over the frames (0 for an empty list).
  double skew_defect(const std::vector<Frame>& frames) const;

 private:
  struct Impl {
    int rank = 0;
    Eval eval;
    std::string label;
    bool skew = false;
    double defect = 0.0;
    int band = -1;
    std::array<std::shared_ptr<const SmField>, 3> derivs{};
  };
  std::shared_ptr<const Impl> impl_;
  SmField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Impl copy_impl() const;
};

SmField constant_field(const CMatrix& value, std::string label = "constant");
SmField zero_field(int rank);
SmField identity_field(int rank);

SmField operator+(const SmField& a, const SmField& b);
SmField operator-(const SmField& a, const SmField& b);
SmField operator-(const SmField& a);
/// Pointwise matrix product.
SmField operator*(const SmField& a, const SmField& b);
SmField operator*(Complex s, const SmField& a);
SmField operator*(const CMatrix& m, const SmField& a);
SmField operator*(const SmField& a, const CMatrix& m);
SmField adjoint(const SmField& a);
SmField commutator(const SmField& a, const SmField& b);
/// Scalar field times a matrix field; `s` must have rank 1.
SmField scalar_times(const SmField& s, const SmField& a);

/// U(u) for U in {X, H, V}: exact if attached, else a fourth-order central
/// difference with step `step`.
SmField derivative(const SmField& u, FrameField field, FdStep step = {});

/// Fiber-Fourier coefficients u_m, |m| <= N, of theta -> u(flow_V(g, theta)).
struct FourierModes {
  Frame base;
  int band = 0;
  std::vector<CMatrix> coeffs;  // coeffs[m + band]

  const CMatrix& operator[](int m) const { return coeffs.at(m + band); }
  /// Inverse transform at fiber angle theta relative to base.
  CMatrix evaluate(double theta) const;
  /// Largest |m| with max |u_m| > tol, 0 if none.
  int degree(double tol) const;
};

/// DFT of theta -> u(flow_V(g, theta)) on 4N + 4 equispaced nodes. The modes
/// N < |m| <= 2N + 1 must be below `tol` relative to max(1, max |u_m|),
/// otherwise a band-limit error is raised.
FourierModes fiber_modes(const SmField& u, const Frame& g, int band, double tol = 1e-8);

/// Max over frames of the fiber degree at tolerance tol.
int degree(const SmField& u, const std::vector<Frame>& frames, double tol = 1e-8, int band = 8);

/// Mode support {m : max over frames |u_m| > tol}.
std::vector<int> mode_support(const SmField& u, const std::vector<Frame>& frames, double tol = 1e-8,
                              int band = 8);

/// A = A_1 + A_{-1} with A_{+-1} = (A -+ i D_V A) / 2. For a 1-form D_V A is
/// rotation of the vector by pi/2, which is used exactly here. Frames are
/// used to check that A has modes only at +-1 (kNotAOneForm otherwise).
struct OneFormSplit {
  SmField plus;   // A_1
  SmField minus;  // A_{-1}
};
OneFormSplit split_one_form(const SmField& a, const std::vector<Frame>& check_frames, double tol = 1e-8);

}  // namespace tcon
