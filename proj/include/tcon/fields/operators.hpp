#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcon/fields/sm_field.hpp"

namespace tcon {

/// Data the first-order operators need. In trivialized form
///   D_V u = V(u) + [c, u],  D_X u = X(u) + [G_X, u],  D_H u = H(u) + [G_H, u],
///   eta_+- = (D_X -+ i D_H) / 2,  mu_+- = eta_+- + A_{+-1} (left multiplication).
struct OperatorContext {
  std::optional<CMatrix> c;
  std::optional<SmField> g_x, g_h;
  std::optional<SmField> a;        // 1-form A with nabla^0 = nabla + A, as a field
  std::optional<SmField> star_f;   // *F of nabla
  std::optional<SmField> star_f0;  // *F of nabla^0
  std::optional<SmField> star_da;  // *(nabla A + A ^ A), independently computed
  double curvature = -1.0;
  FdStep step{1e-3};
  std::vector<Frame> one_form_check;  // frames used to validate A

  /// c = 0 and G = 0 for rank n.
  static OperatorContext trivial(int rank);
};

enum class Operator { D_V, D_X, D_H, eta_plus, eta_minus, mu_plus, mu_minus };

const char* to_string(Operator op);
Operator parse_operator(const std::string& name);

/// The operator as a lazily evaluated field. Throws kContract if ctx lacks
/// what the operator needs.
SmField apply_operator(Operator op, const SmField& u, const OperatorContext& ctx);

struct ResidualReport {
  std::string identity;
  double max_residual = 0.0;
  double budget = 0.0;
  int samples = 0;
  std::vector<double> residuals;
};

enum class Identity { commeta_1, commeta_2, commeta_3, auxiliar, mu_commutator };

const char* to_string(Identity id);
Identity parse_identity(const std::string& name);

/// Pointwise residual (operator norm of LHS - RHS), maximized over frames and
/// test sections:
///   commeta_1     [-i D_V, eta_+] u - eta_+ u
///   commeta_2     [-i D_V, eta_-] u + eta_- u
///   commeta_3     [eta_+, eta_-] u - i/2 (K D_V u + [*F, u])
///   auxiliar      i/2 *(nabla A + A ^ A) - (eta_+(A_-1) - eta_-(A_1) + A_1 A_-1 - A_-1 A_1)
///   mu_commutator [mu_+, mu_-] u - i/2 (K D_V u + (*F0) u - u (*F))
/// For auxiliar the sections are ignored and ctx.a, ctx.star_da are used.
ResidualReport verify_identity(Identity id, const OperatorContext& ctx, const std::vector<SmField>& sections,
                               const std::vector<Frame>& frames);

}  // namespace tcon
