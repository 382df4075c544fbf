#include "flagres/quad.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace flagres {

namespace {

constexpr double kDefaultRadius = 0.5;
// Cap on the grid size so 4-variable problems stay within a desk-scale budget.
constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t grid_size(unsigned nodes, std::size_t nvars) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < nvars; ++k) {
    if (total > kMaxGridPoints / nodes) return kMaxGridPoints + 1;
    total *= nodes;
  }
  return total;
}

std::vector<double> resolve_radii(const QuadSettings& s, std::size_t n) {
  if (s.radii.empty()) return std::vector<double>(n, kDefaultRadius);
  if (s.radii.size() == 1) return std::vector<double>(n, s.radii.front());
  if (s.radii.size() != n) throw Error("expected " + std::to_string(n) + " radii, got " + std::to_string(s.radii.size()));
  return s.radii;
}

std::optional<long long> snap(Complex v, double tol) {
  const double r = std::round(v.real());
  if (std::fabs(v.real() - r) < tol && std::fabs(v.imag()) < tol) return static_cast<long long>(r);
  return std::nullopt;
}

kernel::Program build_integrand(const Expr& numerator, std::span<const Expr> denominators,
                                std::span<const Complex> center, double denominator_guard) {
  const std::size_t n = denominators.size();
  kernel::ProgramBuilder b(n);
  std::uint32_t acc = b.expr(numerator);
  const std::uint32_t one = b.constant({1.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t dz = b.sub(b.var(k), b.constant(center[k]));
    const std::uint32_t den = b.guard(b.expr(denominators[k]));
    acc = b.mul(acc, dz);
    acc = b.mul(acc, b.div(one, den));
  }
  return b.finish(acc, kEvalGuard, denominator_guard);
}

std::string describe(const kernel::Status& st) {
  return std::string("evaluation failed on the torus (") + to_string(st.kind) + ")";
}

}  // namespace

void TorusSpec::validate(std::size_t nvars) const {
  if (center.size() != nvars || radii.size() != nvars)
    throw Error("torus dimension does not match the number of denominators");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw Error("torus radii must be positive");
  if (nodes_per_circle < 4 || !is_power_of_two(nodes_per_circle))
    throw Error("nodes per circle must be a power of two >= 4");
}

void PairwiseAccumulator::add(Complex v) {
  std::size_t k = 0;
  while (k < used_.size() && used_[k]) {
    v = slots_[k] + v;
    used_[k] = false;
    ++k;
  }
  if (k == used_.size()) {
    slots_.emplace_back();
    used_.push_back(false);
  }
  slots_[k] = v;
  used_[k] = true;
  ++count_;
}

Complex PairwiseAccumulator::total() const {
  Complex t{0.0, 0.0};
  bool first = true;
  for (std::size_t k = slots_.size(); k-- > 0;) {
    if (!used_[k]) continue;
    t = first ? slots_[k] : t + slots_[k];
    first = false;
  }
  return t;
}

namespace {

// Grid mean of the program over the torus, summed pairwise in grid order.
Complex torus_mean(const kernel::Program& prog, const TorusSpec& torus, std::optional<kernel::KernelKind> which) {
  const std::size_t n = torus.center.size();
  const unsigned N = torus.nodes_per_circle;
  const std::size_t total = grid_size(N, n);
  if (total > kMaxGridPoints) throw Error("quadrature grid exceeds " + std::to_string(kMaxGridPoints) + " points");
  const kernel::BatchFn run = kernel::kernel_function(which.value_or(kernel::default_kernel()));

  // Node coordinates per variable.
  std::vector<std::vector<double>> zr(n, std::vector<double>(N)), zi(n, std::vector<double>(N));
  for (std::size_t k = 0; k < n; ++k)
    for (unsigned j = 0; j < N; ++j) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N);
      zr[k][j] = torus.center[k].real() + torus.radii[k] * std::cos(t);
      zi[k][j] = torus.center[k].imag() + torus.radii[k] * std::sin(t);
    }

  std::vector<double> in_re(n * kernel::kBatch), in_im(n * kernel::kBatch);
  std::vector<double> out_re(kernel::kBatch), out_im(kernel::kBatch);
  kernel::Workspace ws;
  PairwiseAccumulator acc;
  std::vector<unsigned> digit(n, 0);  // variable 0 varies slowest

  for (std::size_t start = 0; start < total; start += kernel::kBatch) {
    const std::size_t count = std::min(kernel::kBatch, total - start);
    for (std::size_t l = 0; l < count; ++l) {
      for (std::size_t k = 0; k < n; ++k) {
        in_re[k * kernel::kBatch + l] = zr[k][digit[k]];
        in_im[k * kernel::kBatch + l] = zi[k][digit[k]];
      }
      for (std::size_t k = n; k-- > 0;) {
        if (++digit[k] < N) break;
        digit[k] = 0;
      }
    }
    const kernel::Status st = run(prog, in_re.data(), in_im.data(), count, out_re.data(), out_im.data(), ws);
    if (!st.ok) throw EvalError(st.kind, describe(st));
    for (std::size_t l = 0; l < count; ++l) acc.add({out_re[l], out_im[l]});
  }
  return acc.total() / static_cast<double>(total);
}

}  // namespace

Complex grothendieck_residue(const Expr& numerator, std::span<const Expr> denominators, const TorusSpec& torus,
                             double denominator_guard, std::optional<kernel::KernelKind> which) {
  const std::size_t n = denominators.size();
  if (n == 0) throw Error("at least one denominator is required");
  torus.validate(n);
  return torus_mean(build_integrand(numerator, denominators, torus.center, denominator_guard), torus, which);
}

ResidueEstimate refine_until_stable(const ResidueProblem& problem, const QuadSettings& settings) {
  const std::size_t n = problem.denominators.size();
  if (problem.center.size() != n) throw Error("residue point dimension does not match the denominators");
  if (!is_power_of_two(settings.initial_nodes) || settings.initial_nodes < 4)
    throw Error("initial node count must be a power of two >= 4");
  TorusSpec torus{problem.center, resolve_radii(settings, n), settings.initial_nodes};

  ResidueEstimate est;
  est.radii_used = torus.radii;
  std::optional<Complex> prev;
  for (unsigned N = settings.initial_nodes; N <= settings.max_nodes && grid_size(N, n) <= kMaxGridPoints; N *= 2) {
    torus.nodes_per_circle = N;
    const Complex v =
        grothendieck_residue(problem.numerator, problem.denominators, torus, settings.denominator_guard, settings.kernel);
    est.node_history.emplace_back(N, v);
    est.value = v;
    if (prev) {
      const double tol = std::max(settings.rel_tol, settings.rel_tol * std::abs(v));
      if (std::abs(v - *prev) <= tol) {
        est.converged = true;
        break;
      }
    }
    prev = v;
  }
  if (est.node_history.empty()) throw Error("no admissible node count below the limits");
  est.snapped_integer = snap(est.value, settings.snap_tolerance);
  if (!est.converged) est.diagnostic = "not converged at " + std::to_string(est.node_history.back().first) + " nodes";
  return est;
}

ResidueEstimate estimate_residue(const ResidueProblem& problem, const QuadSettings& settings) {
  QuadSettings s = settings;
  s.radii = resolve_radii(settings, problem.denominators.size());
  for (int halvings = 0;; ++halvings) {
    try {
      ResidueEstimate est = refine_until_stable(problem, s);
      if (halvings > 0) {
        const std::string note = "radii halved " + std::to_string(halvings) + " time(s) after a guard tripped";
        est.diagnostic = est.diagnostic.empty() ? note : note + "; " + est.diagnostic;
      }
      return est;
    } catch (const EvalError& e) {
      const bool geometric = e.kind() == EvalErrorKind::DenominatorVanishes || e.kind() == EvalErrorKind::BranchCut ||
                             e.kind() == EvalErrorKind::DivisionByZero;
      if (!geometric || halvings >= settings.max_radius_halvings) throw;
      for (double& r : s.radii) r /= 2.0;
    }
  }
}

Expr jacobian_determinant(std::span<const Expr> X) {
  const std::size_t n = X.size();
  std::vector<std::vector<Expr>> J(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) J[i][j] = diff(X[i], j);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Expr> terms;
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    std::vector<Expr> f;
    bool zero = false;
    for (std::size_t i = 0; i < n && !zero; ++i) {
      zero = J[i][perm[i]].is_zero();
      f.push_back(J[i][perm[i]]);
    }
    if (zero) continue;
    if (inversions % 2) f.push_back(Expr::constant(-1));
    terms.push_back(Expr::product(std::move(f)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Expr::sum(std::move(terms));
}

Expr jacobian_trace(std::span<const Expr> X) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < X.size(); ++i) terms.push_back(diff(X[i], i));
  return Expr::sum(std::move(terms));
}

TorusOrientation torus_orientation(std::span<const Expr> X, std::span<const Complex> center,
                                   std::span<const double> radii, const QuadSettings& settings) {
  const std::size_t n = X.size();
  TorusOrientation o;
  o.winding.assign(n, std::vector<long long>(n, 0));
  const TorusSpec torus{{center.begin(), center.end()}, {radii.begin(), radii.end()}, 16};
  std::vector<Rational> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Expr dk = diff(X[i], k);
      if (dk.is_zero()) continue;
      // Grid mean of (z_k - c_k) d_k X_i / X_i.
      kernel::ProgramBuilder b(n);
      const std::uint32_t dz = b.sub(b.var(k), b.constant(center[k]));
      const std::uint32_t q = b.div(b.mul(b.expr(dk), dz), b.guard(b.expr(X[i])));
      const Complex w = torus_mean(b.finish(q, kEvalGuard, settings.denominator_guard), torus, settings.kernel);
      const double r = std::round(w.real());
      if (std::fabs(w.real() - r) > 0.05 || std::fabs(w.imag()) > 0.05) o.integral = false;
      o.winding[i][k] = static_cast<long long>(r);
      m[i * n + k] = Rational(static_cast<long>(r));
    }
  // Exact determinant by fraction-free elimination over the rationals.
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv * n + c] == 0) ++piv;
    if (piv == n) {
      det = 0;
      break;
    }
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[piv * n + k], m[c * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  o.degree = det.get_num().get_si();
  return o;
}

namespace {

void orient(ResidueEstimate& est, std::span<const Expr> X, std::span<const Complex> point,
            const QuadSettings& settings) {
  auto note = [&](const std::string& s) { est.diagnostic = est.diagnostic.empty() ? s : est.diagnostic + "; " + s; };
  TorusOrientation o;
  try {
    o = torus_orientation(X, point, est.radii_used, settings);
  } catch (const EvalError& e) {
    note(std::string("torus orientation unavailable: ") + e.what());
    return;
  }
  if (!o.adapted()) {
    note("torus not adapted to X (winding matrix " + std::string(o.integral ? "singular" : "not integral") +
         "); value is the raw torus integral");
    return;
  }
  if (o.sign() > 0) return;
  est.orientation = -1;
  est.value = -est.value;
  for (auto& h : est.node_history) h.second = -h.second;
  if (est.snapped_integer) est.snapped_integer = -*est.snapped_integer;
  note("torus runs against the cycle |X_i| = eps (winding determinant " + std::to_string(o.degree) + ")");
}

}  // namespace

ResidueEstimate jacobian_residue(std::span<const Expr> X, std::span<const Complex> point, const QuadSettings& settings) {
  ResidueProblem p{jacobian_determinant(X), {X.begin(), X.end()}, {point.begin(), point.end()}};
  ResidueEstimate est = estimate_residue(p, settings);
  orient(est, X, point, settings);
  if (est.converged && !est.snapped_integer) {
    const std::string note = "converged to a non-integer multiplicity";
    est.diagnostic = est.diagnostic.empty() ? note : est.diagnostic + "; " + note;
  }
  return est;
}

ResidueEstimate baumbott_c1n_residue(std::span<const Expr> X, std::span<const Complex> point,
                                     const QuadSettings& settings) {
  const Expr tr = jacobian_trace(X);
  const Expr num = tr.is_zero() ? tr : Expr::power(tr, Rational(static_cast<long>(X.size())));
  ResidueProblem p{num, {X.begin(), X.end()}, {point.begin(), point.end()}};
  ResidueEstimate est = estimate_residue(p, settings);
  orient(est, X, point, settings);
  return est;
}

}  // namespace flagres
