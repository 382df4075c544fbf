#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/expr.hpp"
#include "flagres/flag.hpp"
#include "flagres/forms.hpp"
#include "oracles.hpp"

#include <random>

using namespace flagres;

namespace {

const std::vector<std::string> kNames{"x", "y", "w", "t"};
const VarList kV = make_vars(kNames);
constexpr std::size_t kN = 4;

Expr P(const char* s) { return parse(s, kNames); }

DifferentialForm random_form(std::mt19937_64& rng, std::size_t degree) {
  DifferentialForm f(kN, degree);
  std::uniform_int_distribution<std::size_t> var(0, kN - 1);
  for (int t = 0; t < 3; ++t) {
    DifferentialForm::Index idx;
    for (std::size_t k = 0; k < degree; ++k) idx.push_back(var(rng));
    f.add_term(idx, from_polynomial(oracle::random_polynomial(rng, kV, 3, 3)));
  }
  return f;
}

// Symbolic zero test through exact expansion of every coefficient.
bool expands_to_zero(const DifferentialForm& f) { return is_zero_polynomial_form(f, kV); }

bool vanishes_at_samples(const DifferentialForm& f) {
  for (const auto& pt : sample_points(kN, 50, 17))
    for (const auto& [idx, c] : f.terms())
      if (std::abs(eval(c, pt)) > 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("wedge examples") {
  const auto dz1 = DifferentialForm::basis(kN, {0});
  const auto dz2 = DifferentialForm::basis(kN, {1});
  CHECK(wedge(dz1, dz2) == -wedge(dz2, dz1));
  CHECK(wedge(dz1, dz1).is_zero());
  const auto a = DifferentialForm::basis(kN, {0}).scale(P("x"));
  const auto b = DifferentialForm::basis(kN, {1}).scale(P("y"));
  CHECK(wedge(a, b).coefficient({0, 1}) == P("x*y"));
  CHECK(DifferentialForm::basis(kN, {1, 0}).coefficient({0, 1}) == P("-1"));
}

TEST_CASE("exterior derivative examples") {
  // d(x dy) = dx ^ dy
  const auto xdy = DifferentialForm::basis(kN, {1}).scale(P("x"));
  CHECK(d(xdy) == DifferentialForm::basis(kN, {0, 1}));
  const auto f = DifferentialForm::function(kN, P("x^2*y"));
  CHECK(d(d(f)).is_zero());
  const std::vector<Expr> c{P("y"), P("x"), Expr(), Expr()};
  CHECK(d(DifferentialForm::function(kN, P("x*y"))) == DifferentialForm::one_form(kN, c));
}

TEST_CASE("d d = 0 on random forms") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_form(rng, t % 3);
    CHECK(expands_to_zero(d(d(f))));
  }
}

TEST_CASE("graded commutativity and leibniz") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t p = t % 3, q = (t / 3) % 2 + 1;
    const auto a = random_form(rng, p);
    const auto b = random_form(rng, q);
    const int sign = (p * q) % 2 ? -1 : 1;
    const auto ba = wedge(b, a);
    CHECK(expands_to_zero(wedge(a, b) - (sign > 0 ? ba : -ba)));
    const auto rhs = wedge(d(a), b) + (p % 2 ? -wedge(a, d(b)) : wedge(a, d(b)));
    CHECK(expands_to_zero(d(wedge(a, b)) - rhs));
  }
}

TEST_CASE("forms above the ambient dimension vanish") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_form(rng, 2);
    const auto b = random_form(rng, 3);
    CHECK(wedge(a, b).is_zero());
  }
  CHECK(wedge_power(DifferentialForm::basis(kN, {0, 1}) + DifferentialForm::basis(kN, {2, 3}), 3).is_zero());
}

TEST_CASE("psi form examples") {
  // theta2 = df/f is closed, so every psi_j with j >= 1 vanishes.
  const auto theta2 = log_derivative(kN, P("1 + x*y + w^2"));
  const auto theta12 = DifferentialForm::basis(kN, {0}).scale(P("t")) + DifferentialForm::basis(kN, {3}).scale(P("y"));
  CHECK(vanishes_at_samples(psi_form(theta12, theta2, 1, 1).form));
  CHECK(psi_form(theta12, theta2, 0, 1).two_pi_i_exponent == -2);

  // Two variables: x dy ^ d(x dy) has degree 3 > 2.
  const std::vector<std::string> xy{"x", "y"};
  const auto small = DifferentialForm::basis(2, {1}).scale(parse("x", xy));
  CHECK(psi_form(small, DifferentialForm(2, 1), 0, 1).form.is_zero());

  // theta12 = w dx + x dy in three variables: d theta12 = dw ^ dx + dx ^ dy.
  const std::vector<std::string> xyw{"x", "y", "w"};
  const auto th = DifferentialForm::basis(3, {0}).scale(parse("w", xyw)) + DifferentialForm::basis(3, {1}).scale(parse("x", xyw));
  DifferentialForm dth(3, 2);
  dth.add_term({2, 0}, Expr::constant(1));
  dth.add_term({0, 1}, Expr::constant(1));
  CHECK(d(th) == dth);
  // (w dx + x dy) ^ (dw ^ dx + dx ^ dy) = w dx^dx^dy + x dy^dw^dx = x dx^dy^dw
  const auto psi = psi_form(th, DifferentialForm(3, 1), 0, 1).form;
  CHECK(psi.terms().size() == 1);
  CHECK(psi.coefficient({0, 1, 2}) == parse("x", xyw));
}

TEST_CASE("closedness checks") {
  const auto pts = sample_points(kN, 50, 99);
  CHECK(check_closed(d(DifferentialForm::function(kN, P("x^3*y - w*t"))), pts));
  CHECK_FALSE(check_closed(DifferentialForm::basis(kN, {1}).scale(P("x")), pts));
  CHECK(closedness_defect(DifferentialForm::basis(kN, {1}).scale(P("x")), pts) == doctest::Approx(1.0));
}

TEST_CASE("gv combination") {
  const auto theta2 = d(DifferentialForm::function(kN, P("x^2*t + y")));
  const auto theta12 = DifferentialForm::basis(kN, {1}).scale(P("w")) + DifferentialForm::basis(kN, {3}).scale(P("x*y"));
  // Exact theta2: lhs - rhs = -theta2 ^ (d theta12)^k1.
  const auto [lhs, rhs] = gv_combination(theta2, theta12, 2, 1);
  CHECK(expands_to_zero((lhs - rhs) + wedge(theta2, wedge_power(d(theta12), 2))));
  const auto [l0, r0] = gv_combination(theta2, theta12, 0, 0);
  CHECK(l0 == theta12);
  CHECK(r0 == theta2 + theta12);
}
