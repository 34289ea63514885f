#include "tcon/core.hpp"

namespace tcon {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSingularInput: return "singular input";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kConvergence: return "convergence error";
    case ErrorKind::kBandLimit: return "band-limit error";
    case ErrorKind::kContract: return "contract error";
    case ErrorKind::kConstruction: return "construction error";
    case ErrorKind::kIntegration: return "integration error";
    case ErrorKind::kReduction: return "reduction error";
    case ErrorKind::kIndeterminate: return "indeterminate point";
    case ErrorKind::kNotAOneForm: return "not a 1-form";
    case ErrorKind::kAveraging: return "averaging error";
    case ErrorKind::kParse: return "parse error";
  }
  return "error";
}

}  // namespace tcon
