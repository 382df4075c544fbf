// Compiled with -mavx2 only: no FMA, so every lane rounds exactly like the scalar kernel.
#include "kernel_common.hpp"

#include <immintrin.h>

#include <cstring>

namespace flagres::kernel {

namespace {

struct V {
  __m256d re, im;
};

inline V load(const double* r, const double* i, std::size_t l) { return {_mm256_loadu_pd(r + l), _mm256_loadu_pd(i + l)}; }
inline void store(double* r, double* i, std::size_t l, V v) {
  _mm256_storeu_pd(r + l, v.re);
  _mm256_storeu_pd(i + l, v.im);
}

inline V vmul(V a, V b) {
  return {_mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)),
          _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re))};
}

inline V vdiv(V a, V b) {
  const __m256d d = _mm256_add_pd(_mm256_mul_pd(b.re, b.re), _mm256_mul_pd(b.im, b.im));
  return {_mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)), d),
          _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(a.im, b.re), _mm256_mul_pd(a.re, b.im)), d)};
}

inline V vipow(V a, unsigned n) {
  int top = 31;
  while (!((n >> top) & 1u)) --top;
  V x = a;
  for (int bit = top - 1; bit >= 0; --bit) {
    x = vmul(x, x);
    if ((n >> bit) & 1u) x = vmul(x, a);
  }
  return x;
}

}  // namespace

Status run_avx2(const Program& p, const double* in_re, const double* in_im, std::size_t count, double* out_re,
                double* out_im, Workspace& ws) {
  ws.prepare(p.code.size());
  Status st;
  const std::size_t full = count & ~std::size_t{3};
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
        continue;
      case Op::LoadConst:
        for (std::size_t l = 0; l < count; ++l) {
          dr[l] = ins.re;
          di[l] = ins.im;
        }
        continue;
      case Op::Guard:
        std::memcpy(dr, ar, count * sizeof(double));
        std::memcpy(di, ai, count * sizeof(double));
        continue;
      case Op::RPow: detail::rpow_lanes(ar, ai, ins.re, count, dr, di); continue;
      default: break;
    }
    const unsigned m = static_cast<unsigned>(ins.n < 0 ? -ins.n : ins.n);
    const V one{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
    for (std::size_t l = 0; l < full; l += 4) {
      const V a = load(ar, ai, l);
      V r;
      switch (ins.op) {
        case Op::Add: {
          const V b = load(br, bi, l);
          r = {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)};
          break;
        }
        case Op::Sub: {
          const V b = load(br, bi, l);
          r = {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)};
          break;
        }
        case Op::Mul: r = vmul(a, load(br, bi, l)); break;
        case Op::Div: r = vdiv(a, load(br, bi, l)); break;
        case Op::IPow: r = ins.n > 0 ? vipow(a, m) : vdiv(one, vipow(a, m)); break;
        default: r = a; break;
      }
      store(dr, di, l, r);
    }
    for (std::size_t l = full; l < count; ++l) {
      switch (ins.op) {
        case Op::Add:
          dr[l] = ar[l] + br[l];
          di[l] = ai[l] + bi[l];
          break;
        case Op::Sub:
          dr[l] = ar[l] - br[l];
          di[l] = ai[l] - bi[l];
          break;
        case Op::Mul: arith::mul(ar[l], ai[l], br[l], bi[l], dr[l], di[l]); break;
        case Op::Div: arith::div(ar[l], ai[l], br[l], bi[l], dr[l], di[l]); break;
        case Op::IPow: {
          double pr, pi;
          arith::ipow(ar[l], ai[l], m, pr, pi);
          if (ins.n > 0) {
            dr[l] = pr;
            di[l] = pi;
          } else {
            arith::div(1.0, 0.0, pr, pi, dr[l], di[l]);
          }
          break;
        }
        default: break;
      }
    }
  }
  return detail::finish(p, ws, count, out_re, out_im);
}

}  // namespace flagres::kernel
