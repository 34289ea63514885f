#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tcon {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CMatrix2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Failure categories raised by the library. Every public operation that can
/// fail throws `Error` with one of these kinds attached.
enum class ErrorKind {
  kSingularInput,
  kDomain,
  kConvergence,
  kBandLimit,
  kContract,
  kConstruction,
  kIntegration,
  kReduction,
  kIndeterminate,
  kNotAOneForm,
  kAveraging,
  kParse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Largest singular value.
inline double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace tcon
