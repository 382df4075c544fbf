#pragma once

#include "flagres/complex.hpp"
#include "flagres/error.hpp"
#include "flagres/expr.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

/// Straight-line register programs for evaluating expressions on batches of grid
/// points. Instruction k writes register k. The scalar kernel is the reference;
/// SIMD kernels must reproduce it bit for bit.
namespace flagres::kernel {

enum class Op : std::uint8_t { LoadVar, LoadConst, Add, Sub, Mul, Div, IPow, RPow, Guard };

struct Instr {
  Op op = Op::LoadConst;
  std::uint32_t a = 0;  // operand register; variable index for LoadVar
  std::uint32_t b = 0;
  double re = 0.0;      // LoadConst value, RPow exponent
  double im = 0.0;
  std::int32_t n = 0;   // IPow exponent (nonzero, may be negative)
};

struct Program {
  std::size_t nvars = 0;
  std::vector<Instr> code;
  std::uint32_t output = 0;
  double eval_guard = kEvalGuard;
  double denominator_guard = 1e-8;
};

/// Builds programs from expressions with common-subexpression sharing. Closed
/// subtrees are folded to constants through the tree evaluator.
class ProgramBuilder {
public:
  explicit ProgramBuilder(std::size_t nvars) { prog_.nvars = nvars; }

  std::uint32_t expr(const Expr& e);
  std::uint32_t var(std::size_t index);
  std::uint32_t constant(Complex c);
  std::uint32_t add(std::uint32_t a, std::uint32_t b) { return emit({Op::Add, a, b}); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return emit({Op::Sub, a, b}); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) { return emit({Op::Mul, a, b}); }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) { return emit({Op::Div, a, b}); }
  /// Passes `a` through; fails with DenominatorVanishes when |a| is below the denominator guard.
  std::uint32_t guard(std::uint32_t a) { return emit({Op::Guard, a}); }

  Program finish(std::uint32_t output, double eval_guard = kEvalGuard, double denominator_guard = 1e-8);

private:
  std::uint32_t emit(Instr ins);

  Program prog_;
  std::map<Expr, std::uint32_t> memo_;
  std::map<std::size_t, std::uint32_t> vars_;
};

inline constexpr std::size_t kBatch = 64;

struct Status {
  bool ok = true;
  EvalErrorKind kind = EvalErrorKind::Overflow;
  std::size_t instr = 0;
  std::size_t lane = 0;
};

/// Register file for one batch: structure of arrays, kBatch lanes per register.
class Workspace {
public:
  void prepare(std::size_t nregs) {
    if (re_.size() < nregs * kBatch) {
      re_.resize(nregs * kBatch);
      im_.resize(nregs * kBatch);
    }
  }
  double* re(std::size_t reg) { return re_.data() + reg * kBatch; }
  double* im(std::size_t reg) { return im_.data() + reg * kBatch; }

private:
  std::vector<double> re_, im_;
};

/// Inputs are laid out as in_re[var * kBatch + lane]; count <= kBatch.
using BatchFn = Status (*)(const Program&, const double* in_re, const double* in_im, std::size_t count,
                           double* out_re, double* out_im, Workspace&);

Status run_scalar(const Program&, const double* in_re, const double* in_im, std::size_t count, double* out_re,
                  double* out_im, Workspace&);

enum class KernelKind { Scalar, Avx2 };

const char* to_string(KernelKind k) noexcept;
bool kernel_available(KernelKind k) noexcept;
/// AVX2 when the CPU supports it, unless FLAGRES_KERNEL=scalar is set.
KernelKind default_kernel() noexcept;
BatchFn kernel_function(KernelKind k);

}  // namespace flagres::kernel
