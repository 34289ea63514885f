#include "tcon/geom/frame.hpp"

namespace tcon {

const char* to_string(FrameField field) {
  switch (field) {
    case FrameField::X: return "X";
    case FrameField::H: return "H";
    case FrameField::V: return "V";
  }
  return "?";
}

Frame Frame::at(Complex z, double theta) {
  if (!(z.imag() > 0.0)) throw Error(ErrorKind::kDomain, "frame base point must have Im > 0");
  const double sy = std::sqrt(z.imag());
  const MoebiusD lift(sy, z.real() / sy, 0.0, 1.0 / sy);
  return frame_flow(Frame(lift), FrameField::V, theta);
}

Eigen::Matrix2d generator(FrameField field) {
  Eigen::Matrix2d m;
  switch (field) {
    case FrameField::X: m << 0.5, 0.0, 0.0, -0.5; break;
    case FrameField::H: m << 0.0, -0.5, -0.5, 0.0; break;
    case FrameField::V: m << 0.0, 0.5, -0.5, 0.0; break;
  }
  return m;
}

MoebiusD one_parameter_subgroup(FrameField field, double t) {
  const double s = 0.5 * t;
  switch (field) {
    case FrameField::X: return MoebiusD(std::exp(s), 0.0, 0.0, std::exp(-s));
    case FrameField::H: return MoebiusD(std::cosh(s), -std::sinh(s), -std::sinh(s), std::cosh(s));
    case FrameField::V: return MoebiusD(std::cos(s), std::sin(s), -std::sin(s), std::cos(s));
  }
  return MoebiusD();
}

}  // namespace tcon
