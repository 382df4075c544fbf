#include "kernel_common.hpp"

#include <cstdlib>
#include <cstring>

namespace flagres::kernel {

// ---------------------------------------------------------------- builder

std::uint32_t ProgramBuilder::emit(Instr ins) {
  prog_.code.push_back(ins);
  return static_cast<std::uint32_t>(prog_.code.size() - 1);
}

std::uint32_t ProgramBuilder::var(std::size_t index) {
  if (index >= prog_.nvars) throw EvalError(EvalErrorKind::UnboundVariable, "variable index out of range");
  if (auto it = vars_.find(index); it != vars_.end()) return it->second;
  Instr ins{Op::LoadVar, static_cast<std::uint32_t>(index)};
  return vars_[index] = emit(ins);
}

std::uint32_t ProgramBuilder::constant(Complex c) {
  Instr ins{Op::LoadConst};
  ins.re = c.real();
  ins.im = c.imag();
  return emit(ins);
}

std::uint32_t ProgramBuilder::expr(const Expr& e) {
  if (auto it = memo_.find(e); it != memo_.end()) return it->second;
  std::uint32_t r = 0;
  if (e.is_closed()) {
    r = constant(eval(e, {}, prog_.eval_guard));
  } else {
    switch (e.kind()) {
      case ExprKind::Constant: r = constant({to_double(e.value()), 0.0}); break;
      case ExprKind::Variable: r = var(e.var_index()); break;
      case ExprKind::Sum:
      case ExprKind::Product: {
        const auto ch = e.children();
        r = expr(ch[0]);
        for (std::size_t i = 1; i < ch.size(); ++i) {
          const std::uint32_t c = expr(ch[i]);
          r = e.kind() == ExprKind::Sum ? add(r, c) : mul(r, c);
        }
        break;
      }
      case ExprKind::Power: {
        const std::uint32_t b = expr(e.base());
        const Rational& x = e.exponent();
        Instr ins{is_integer(x) ? Op::IPow : Op::RPow, b};
        if (is_integer(x))
          ins.n = static_cast<std::int32_t>(x.get_num().get_si());
        else
          ins.re = to_double(x);
        r = emit(ins);
        break;
      }
    }
  }
  memo_.emplace(e, r);
  return r;
}

Program ProgramBuilder::finish(std::uint32_t output, double eval_guard, double denominator_guard) {
  Program p = prog_;
  p.output = output;
  p.eval_guard = eval_guard;
  p.denominator_guard = denominator_guard;
  return p;
}

// ---------------------------------------------------------------- scalar kernel

Status run_scalar(const Program& p, const double* in_re, const double* in_im, std::size_t count, double* out_re,
                  double* out_im, Workspace& ws) {
  ws.prepare(p.code.size());
  Status st;
  for (std::size_t k = 0; k < p.code.size(); ++k) {
    const Instr& ins = p.code[k];
    if (!detail::precheck(p, ins, k, ws, count, st)) return st;
    double* dr = ws.re(k);
    double* di = ws.im(k);
    const double* ar = ws.re(ins.a);
    const double* ai = ws.im(ins.a);
    const double* br = ws.re(ins.b);
    const double* bi = ws.im(ins.b);
    switch (ins.op) {
      case Op::LoadVar:
        std::memcpy(dr, in_re + ins.a * kBatch, count * sizeof(double));
        std::memcpy(di, in_im + ins.a * kBatch, count * sizeof(double));
        break;
      case Op::LoadConst:
        for (std::size_t l = 0; l < count; ++l) {
          dr[l] = ins.re;
          di[l] = ins.im;
        }
        break;
      case Op::Add:
        for (std::size_t l = 0; l < count; ++l) {
          dr[l] = ar[l] + br[l];
          di[l] = ai[l] + bi[l];
        }
        break;
      case Op::Sub:
        for (std::size_t l = 0; l < count; ++l) {
          dr[l] = ar[l] - br[l];
          di[l] = ai[l] - bi[l];
        }
        break;
      case Op::Mul:
        for (std::size_t l = 0; l < count; ++l) arith::mul(ar[l], ai[l], br[l], bi[l], dr[l], di[l]);
        break;
      case Op::Div:
        for (std::size_t l = 0; l < count; ++l) arith::div(ar[l], ai[l], br[l], bi[l], dr[l], di[l]);
        break;
      case Op::IPow: {
        const unsigned m = static_cast<unsigned>(ins.n < 0 ? -ins.n : ins.n);
        for (std::size_t l = 0; l < count; ++l) {
          double pr, pi;
          arith::ipow(ar[l], ai[l], m, pr, pi);
          if (ins.n > 0) {
            dr[l] = pr;
            di[l] = pi;
          } else {
            arith::div(1.0, 0.0, pr, pi, dr[l], di[l]);
          }
        }
        break;
      }
      case Op::RPow: detail::rpow_lanes(ar, ai, ins.re, count, dr, di); break;
      case Op::Guard:
        std::memcpy(dr, ar, count * sizeof(double));
        std::memcpy(di, ai, count * sizeof(double));
        break;
    }
  }
  return detail::finish(p, ws, count, out_re, out_im);
}

}  // namespace flagres::kernel
