#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/error.hpp"
#include "flagres/expr.hpp"
#include "flagres/quad.hpp"

#include <cmath>

using namespace flagres;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kZ{"z"};

Expr P(const char* s, const std::vector<std::string>& v = kXY) { return parse(s, v); }

std::vector<Expr> Ps(std::initializer_list<const char*> ss, const std::vector<std::string>& v = kXY) {
  std::vector<Expr> out;
  for (auto s : ss) out.push_back(P(s, v));
  return out;
}

TorusSpec torus(std::size_t n, double r, unsigned nodes = 16) {
  return TorusSpec{std::vector<Complex>(n), std::vector<double>(n, r), nodes};
}

}  // namespace

TEST_CASE("cauchy and coefficient extraction") {
  CHECK(std::abs(grothendieck_residue(P("1", kZ), Ps({"z"}, kZ), torus(1, 1.0)) - 1.0) < 1e-14);
  CHECK(std::abs(grothendieck_residue(P("z", kZ), Ps({"z^2"}, kZ), torus(1, 1.0)) - 1.0) < 1e-14);
  CHECK(std::abs(grothendieck_residue(P("6*x*y^2"), Ps({"x^2", "y^3"}), torus(2, 1.0)) - 6.0) < 1e-13);
  // Geometric convergence: the error on N nodes is 2^-N here.
  CHECK(std::abs(grothendieck_residue(P("1", kZ), Ps({"z - 2"}, kZ), torus(1, 1.0, 16))) < 2e-5);
  CHECK(std::abs(grothendieck_residue(P("1", kZ), Ps({"z - 2"}, kZ), torus(1, 1.0, 64))) < 1e-14);
}

TEST_CASE("guard trips near a denominator zero") {
  try {
    grothendieck_residue(P("1", kZ), Ps({"z - 1"}, kZ), torus(1, 1.0, 8));
    FAIL("expected the denominator guard to trip");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalErrorKind::DenominatorVanishes);
  }
}

TEST_CASE("refinement converges and snaps") {
  const ResidueProblem cauchy{P("1", kZ), Ps({"z"}, kZ), {Complex{}}};
  const auto a = refine_until_stable(cauchy);
  CHECK(a.converged);
  CHECK(a.node_history.size() == 2);
  CHECK(a.snapped_integer == 1);

  const ResidueProblem j{P("6*x*y^2"), Ps({"x^2", "y^3"}), {Complex{}, Complex{}}};
  const auto b = refine_until_stable(j);
  CHECK(b.converged);
  CHECK(b.snapped_integer == 6);

  const ResidueProblem none{P("1", kZ), Ps({"z - 2"}, kZ), {Complex{}}};
  QuadSettings unit;
  unit.radii = {1.0};
  const auto c = refine_until_stable(none, unit);
  CHECK(c.converged);
  CHECK(std::abs(c.value) < 1e-14);
}

TEST_CASE("radii shrink when the guard trips") {
  // Zero of the denominator at distance 1/2 from the centre: the default torus hits it.
  const ResidueProblem p{P("1", kZ), Ps({"z*(z - 1/2)"}, kZ), {Complex{}}};
  const auto est = estimate_residue(p);
  CHECK(est.converged);
  CHECK(est.radii_used.front() < 0.5);
  CHECK(std::abs(est.value + 2.0) < 1e-10);
  CHECK_FALSE(est.diagnostic.empty());
}

TEST_CASE("jacobian residues") {
  const std::vector<Complex> o{Complex{}, Complex{}};
  CHECK(jacobian_residue(Ps({"x", "y"}), o).snapped_integer == 1);
  CHECK(jacobian_residue(Ps({"x^2", "y^3"}), o).snapped_integer == 6);
  // Components swapped against the coordinates: the torus is reoriented.
  const auto swapped = jacobian_residue(Ps({"-y^3", "x^2"}), o);
  CHECK(swapped.snapped_integer == 6);
  CHECK(swapped.orientation == -1);
  CHECK(jacobian_residue(Ps({"y", "-x"}), o).snapped_integer == 1);
  CHECK(jacobian_determinant(Ps({"x^2", "y^3"})) == P("6*x*y^2"));
}

TEST_CASE("c1^n residues") {
  const std::vector<Complex> o{Complex{}, Complex{}};
  CHECK(std::abs(baumbott_c1n_residue(Ps({"x", "y"}), o).value - 4.0) < 1e-12);
  CHECK(std::abs(baumbott_c1n_residue(Ps({"2*x", "3*y"}), o).value - 25.0 / 6.0) < 1e-12);
  CHECK(jacobian_trace(Ps({"-y", "x"})).is_zero());
}

TEST_CASE("torus orientation") {
  const std::vector<Complex> o{Complex{}, Complex{}};
  const std::vector<double> r{0.5, 0.5};
  const auto d = torus_orientation(Ps({"x^2", "y^3"}), o, r);
  CHECK(d.degree == 6);
  CHECK(d.adapted());
  const auto s = torus_orientation(Ps({"y", "x"}), o, r);
  CHECK(s.degree == -1);
  // Proportional winding rows: the torus degree vanishes.
  const auto bad = torus_orientation(Ps({"x*y", "x^2*y^2 + 1/100"}), o, r);
  CHECK_FALSE(bad.adapted());
}

TEST_CASE("spectral convergence") {
  // Analytic integrand: errors drop by at least 10x per doubling until roundoff.
  const Expr num = P("(1 + x/2 + y^2/3)^(-1/2)*6*x*y^2");
  const auto dens = Ps({"x^2", "y^3"});
  const double exact_ref = std::abs(grothendieck_residue(num, dens, torus(2, 0.5, 256)));
  double prev = -1.0;
  for (unsigned N = 8; N <= 64; N *= 2) {
    const double err = std::abs(std::abs(grothendieck_residue(num, dens, torus(2, 0.5, N))) - exact_ref);
    if (prev > 1e-13) CHECK_MESSAGE(err <= prev / 10.0, "N = " << N);
    prev = err;
  }
}

TEST_CASE("radius independence") {
  const std::vector<std::vector<const char*>> problems{
      {"x^2*(1 + y)", "y^3*(1 - x)"}, {"x^2 + y^5", "y^2 + x^5"}, {"x + x^2", "y"}, {"-y^3", "x^2"}};
  const std::vector<Complex> o{Complex{}, Complex{}};
  for (const auto& p : problems) {
    std::vector<Expr> X;
    for (auto s : p) X.push_back(P(s));
    QuadSettings a, b;
    a.radii = {0.5};
    b.radii = {0.25};
    const auto va = jacobian_residue(X, o, a);
    const auto vb = jacobian_residue(X, o, b);
    REQUIRE(va.converged);
    REQUIRE(vb.converged);
    CHECK(std::abs(va.value - vb.value) < 1e-8);
  }
}

TEST_CASE("linearity in the numerator") {
  const auto dens = Ps({"x^2 + y^5", "y^2 + x^5"});
  const TorusSpec t = torus(2, 0.5, 32);
  const Expr a = P("(1 + x/2 + y/2)^(1/2)");
  const Expr b = P("x*y + 3");
  const Complex lhs = grothendieck_residue(a + b, dens, t);
  const Complex rhs = grothendieck_residue(a, dens, t) + grothendieck_residue(b, dens, t);
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("both kernels give identical residues") {
  if (!kernel::kernel_available(kernel::KernelKind::Avx2)) return;
  const Expr num = P("(1 + x^2 + y^2)^(-3/2)*x*y + 1");
  const auto dens = Ps({"x^2 + y^5", "y^3"});
  const TorusSpec t = torus(2, 0.5, 64);
  const Complex s = grothendieck_residue(num, dens, t, kDenominatorGuard, kernel::KernelKind::Scalar);
  const Complex v = grothendieck_residue(num, dens, t, kDenominatorGuard, kernel::KernelKind::Avx2);
  CHECK(s.real() == v.real());
  CHECK(s.imag() == v.imag());
}

TEST_CASE("pairwise accumulation is order fixed") {
  PairwiseAccumulator acc;
  for (int i = 1; i <= 1000; ++i) acc.add({1.0 / i, 0.0});
  double h = 0;
  for (int i = 1; i <= 1000; ++i) h += 1.0 / i;
  CHECK(std::abs(acc.total().real() - h) < 1e-12);
  CHECK(acc.count() == 1000);
}

TEST_CASE("invalid tori are rejected") {
  CHECK_THROWS_AS(torus(1, -1.0).validate(1), Error);
  CHECK_THROWS_AS(torus(1, 1.0, 6).validate(1), Error);
  CHECK_THROWS_AS(torus(2, 1.0).validate(1), Error);
}
