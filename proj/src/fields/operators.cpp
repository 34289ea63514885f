#include "tcon/fields/operators.hpp"

#include <algorithm>

namespace tcon {

OperatorContext OperatorContext::trivial(int rank) {
  OperatorContext ctx;
  ctx.c = CMatrix::Zero(rank, rank);
  ctx.g_x = zero_field(rank);
  ctx.g_h = zero_field(rank);
  return ctx;
}

namespace {

const char* const kOperatorNames[] = {"D_V", "D_X", "D_H", "eta_plus", "eta_minus", "mu_plus", "mu_minus"};
const char* const kIdentityNames[] = {"commeta_1", "commeta_2", "commeta_3", "auxiliar", "mu_commutator"};

const SmField& need(const std::optional<SmField>& f, const char* what) {
  if (!f) throw Error(ErrorKind::kContract, std::string("operator context lacks ") + what);
  return *f;
}

SmField covariant(const SmField& u, FrameField field, const SmField& g, FdStep step) {
  if (g.rank() != u.rank()) throw Error(ErrorKind::kContract, "connection rank differs from section rank");
  return derivative(u, field, step) + commutator(g, u);
}

}  // namespace

const char* to_string(Operator op) { return kOperatorNames[static_cast<int>(op)]; }
const char* to_string(Identity id) { return kIdentityNames[static_cast<int>(id)]; }

Operator parse_operator(const std::string& name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kOperatorNames[i]) return static_cast<Operator>(i);
  }
  throw Error(ErrorKind::kParse, "unknown operator " + name);
}

Identity parse_identity(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kIdentityNames[i]) return static_cast<Identity>(i);
  }
  throw Error(ErrorKind::kParse, "unknown identity " + name);
}

SmField apply_operator(Operator op, const SmField& u, const OperatorContext& ctx) {
  switch (op) {
    case Operator::D_V: {
      if (!ctx.c) throw Error(ErrorKind::kContract, "D_V needs the fiber component c");
      if (ctx.c->rows() != u.rank()) throw Error(ErrorKind::kContract, "c rank differs from section rank");
      return derivative(u, FrameField::V, ctx.step) + commutator(constant_field(*ctx.c), u);
    }
    case Operator::D_X:
      return covariant(u, FrameField::X, need(ctx.g_x, "G_X"), ctx.step);
    case Operator::D_H:
      return covariant(u, FrameField::H, need(ctx.g_h, "G_H"), ctx.step);
    case Operator::eta_plus:
    case Operator::eta_minus: {
      const SmField dx = apply_operator(Operator::D_X, u, ctx);
      const SmField dh = apply_operator(Operator::D_H, u, ctx);
      const Complex s = op == Operator::eta_plus ? -kI : kI;
      return 0.5 * (dx + s * dh);
    }
    case Operator::mu_plus:
    case Operator::mu_minus: {
      const OneFormSplit split = split_one_form(need(ctx.a, "the 1-form A"), ctx.one_form_check);
      const bool plus = op == Operator::mu_plus;
      const SmField eta = apply_operator(plus ? Operator::eta_plus : Operator::eta_minus, u, ctx);
      return eta + (plus ? split.plus : split.minus) * u;
    }
  }
  throw Error(ErrorKind::kContract, "unknown operator");
}

ResidualReport verify_identity(Identity id, const OperatorContext& ctx, const std::vector<SmField>& sections,
                               const std::vector<Frame>& frames) {
  ResidualReport rep;
  rep.identity = to_string(id);
  auto sweep = [&](const SmField& residual) {
    for (const Frame& g : frames) {
      const double r = op_norm(residual(g));
      rep.residuals.push_back(r);
      rep.max_residual = std::max(rep.max_residual, r);
      ++rep.samples;
    }
  };
  auto op = [&](Operator o, const SmField& u) { return apply_operator(o, u, ctx); };
  const double k = ctx.curvature;

  if (id == Identity::auxiliar) {
    const SmField& a = need(ctx.a, "the 1-form A");
    const SmField& lhs = need(ctx.star_da, "*(nabla A + A ^ A)");
    const OneFormSplit s = split_one_form(a, ctx.one_form_check);
    const SmField rhs = op(Operator::eta_plus, s.minus) - op(Operator::eta_minus, s.plus) + s.plus * s.minus -
                        s.minus * s.plus;
    sweep((0.5 * kI) * lhs - rhs);
    return rep;
  }

  for (const SmField& u : sections) {
    const SmField dv = op(Operator::D_V, u);
    switch (id) {
      case Identity::commeta_1: {
        const SmField ep = op(Operator::eta_plus, u);
        sweep((-kI) * op(Operator::D_V, ep) + kI * op(Operator::eta_plus, dv) - ep);
        break;
      }
      case Identity::commeta_2: {
        const SmField em = op(Operator::eta_minus, u);
        sweep((-kI) * op(Operator::D_V, em) + kI * op(Operator::eta_minus, dv) + em);
        break;
      }
      case Identity::commeta_3: {
        const SmField& sf = need(ctx.star_f, "*F");
        const SmField lhs = op(Operator::eta_plus, op(Operator::eta_minus, u)) -
                            op(Operator::eta_minus, op(Operator::eta_plus, u));
        sweep(lhs - (0.5 * kI) * (Complex(k) * dv + commutator(sf, u)));
        break;
      }
      case Identity::mu_commutator: {
        const SmField& sf = need(ctx.star_f, "*F");
        const SmField& sf0 = need(ctx.star_f0, "*F0");
        const SmField lhs =
            op(Operator::mu_plus, op(Operator::mu_minus, u)) - op(Operator::mu_minus, op(Operator::mu_plus, u));
        sweep(lhs - (0.5 * kI) * (Complex(k) * dv + sf0 * u - u * sf));
        break;
      }
      case Identity::auxiliar:
        break;
    }
  }
  return rep;
}

}  // namespace tcon
