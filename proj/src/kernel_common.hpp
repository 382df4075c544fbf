#pragma once

// Lane checks shared by every kernel, so error detection agrees across them.

#include "flagres/complex.hpp"
#include "flagres/kernel.hpp"

#include <cmath>
#include <cstring>

namespace flagres::kernel::detail {

inline bool fail(Status& st, EvalErrorKind kind, std::size_t instr, std::size_t lane) {
  st.ok = false;
  st.kind = kind;
  st.instr = instr;
  st.lane = lane;
  return false;
}

inline bool check_small(const double* re, const double* im, std::size_t count, double guard, EvalErrorKind kind,
                        std::size_t instr, Status& st) {
  const double g2 = guard * guard;
  for (std::size_t l = 0; l < count; ++l)
    if (arith::norm2(re[l], im[l]) < g2) return fail(st, kind, instr, l);
  return true;
}

inline bool check_branch(const double* re, const double* im, std::size_t count, double guard, std::size_t instr,
                         Status& st) {
  for (std::size_t l = 0; l < count; ++l)
    if (distance_to_branch_cut(re[l], im[l]) <= guard) return fail(st, EvalErrorKind::BranchCut, instr, l);
  return true;
}

inline bool check_finite(const double* re, const double* im, std::size_t count, std::size_t instr, Status& st) {
  for (std::size_t l = 0; l < count; ++l)
    if (!std::isfinite(re[l]) || !std::isfinite(im[l])) return fail(st, EvalErrorKind::Overflow, instr, l);
  return true;
}

// Runs the lane-wise precondition of a fallible instruction.
inline bool precheck(const Program& p, const Instr& ins, std::size_t k, Workspace& ws, std::size_t count,
                     Status& st) {
  switch (ins.op) {
    case Op::Div:
      return check_small(ws.re(ins.b), ws.im(ins.b), count, p.eval_guard, EvalErrorKind::DivisionByZero, k, st);
    case Op::IPow:
      if (ins.n < 0)
        return check_small(ws.re(ins.a), ws.im(ins.a), count, p.eval_guard, EvalErrorKind::DivisionByZero, k, st);
      return true;
    case Op::RPow: return check_branch(ws.re(ins.a), ws.im(ins.a), count, p.eval_guard, k, st);
    case Op::Guard:
      return check_small(ws.re(ins.a), ws.im(ins.a), count, p.denominator_guard, EvalErrorKind::DenominatorVanishes,
                         k, st);
    default: return true;
  }
}

inline void rpow_lanes(const double* ar, const double* ai, double e, std::size_t count, double* dr, double* di) {
  for (std::size_t l = 0; l < count; ++l) {
    const Complex r = principal_pow(ar[l], ai[l], e);
    dr[l] = r.real();
    di[l] = r.imag();
  }
}

inline Status finish(const Program& p, Workspace& ws, std::size_t count, double* out_re, double* out_im) {
  Status st;
  const double* r = ws.re(p.output);
  const double* i = ws.im(p.output);
  if (!check_finite(r, i, count, p.code.size(), st)) return st;
  std::memcpy(out_re, r, count * sizeof(double));
  std::memcpy(out_im, i, count * sizeof(double));
  return st;
}

}  // namespace flagres::kernel::detail
