#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/error.hpp"
#include "flagres/expr.hpp"
#include "flagres/poly.hpp"
#include "oracles.hpp"

#include <random>

using namespace flagres;

namespace {

const VarList kV = make_vars({"x", "y"});

Polynomial P(const char* s) {
  const std::vector<std::string> names{"x", "y"};
  return to_polynomial(parse(s, names), kV);
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK((P("x + y") * P("x - y")) == P("x^2 - y^2"));
  CHECK((P("x^3 - 2*y") + Polynomial(kV)) == P("x^3 - 2*y"));
  CHECK((P("1/2*x") * P("2/3*y")) == P("1/3*x*y"));
  CHECK((P("x") - P("x")).is_zero());
  CHECK(P("x + 1").pow(3) == P("x^3 + 3*x^2 + 3*x + 1"));
}

TEST_CASE("ambient mismatch is rejected") {
  const Polynomial a = Polynomial::variable(make_vars({"x"}), 0);
  CHECK_THROWS_AS(a + P("x"), AmbientMismatch);
}

TEST_CASE("leading terms under the three orders") {
  CHECK(P("x^2 + y^3").leading_term(MonomialOrder::GrevLex).monomial == Monomial({0, 3}));
  CHECK(P("x^2 + y^3").leading_term(MonomialOrder::Lex).monomial == Monomial({2, 0}));
  CHECK(P("x + x^2").leading_term(MonomialOrder::Local).monomial == Monomial({1, 0}));
  CHECK(P("1 + x").leading_term(MonomialOrder::Local).monomial == Monomial({0, 0}));
  CHECK_THROWS_AS(Polynomial(kV).leading_term(MonomialOrder::Lex), AlgebraError);
}

TEST_CASE("division examples") {
  const std::vector<Polynomial> x2{P("x^2")};
  auto r = reduce(P("x^2*y"), x2, MonomialOrder::GrevLex);
  CHECK(r.remainder.is_zero());
  CHECK(r.quotients[0] == P("y"));
  CHECK(reduce(P("x + y"), x2, MonomialOrder::GrevLex).remainder == P("x + y"));
  const std::vector<Polynomial> x{P("x")};
  CHECK(reduce(P("x^2 + x*y"), x, MonomialOrder::GrevLex).remainder.is_zero());
}

TEST_CASE("division identity on random inputs") {
  std::mt19937_64 rng(99);
  for (auto order : {MonomialOrder::Lex, MonomialOrder::GrevLex}) {
    for (int t = 0; t < 60; ++t) {
      const Polynomial f = oracle::random_polynomial(rng, kV, 6, 8);
      std::vector<Polynomial> divs;
      for (int k = 0; k < 3; ++k) {
        Polynomial d = oracle::random_polynomial(rng, kV, 3, 3);
        if (!d.is_zero()) divs.push_back(d);
      }
      if (divs.empty()) continue;
      const auto r = reduce(f, divs, order);
      Polynomial sum = r.remainder;
      for (std::size_t i = 0; i < divs.size(); ++i) sum = sum + r.quotients[i] * divs[i];
      CHECK(sum == f);
      for (const auto& [m, c] : r.remainder.terms())
        for (const auto& d : divs) CHECK_FALSE(d.leading_term(order).monomial.divides(m));
    }
  }
}

TEST_CASE("monomial orders are total and multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> e(0, 4);
  auto rand_mono = [&] { return Monomial({e(rng), e(rng), e(rng)}); };
  for (auto order : {MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Local}) {
    for (int t = 0; t < 500; ++t) {
      const Monomial a = rand_mono(), b = rand_mono(), m = rand_mono();
      const int ab = compare(order, a, b);
      CHECK((ab == 0) == (a == b));
      CHECK(compare(order, b, a) == -ab);
      if (ab < 0) CHECK(compare(order, m * a, m * b) < 0);
    }
  }
  // The local order ranks the constant largest; the global ones rank it smallest.
  const Monomial one(3), x = Monomial::variable(3, 0);
  CHECK(compare(MonomialOrder::Local, one, x) > 0);
  CHECK(compare(MonomialOrder::GrevLex, one, x) < 0);
}

TEST_CASE("translate and derivative") {
  const std::vector<Rational> shift{1, -2};
  CHECK(P("x*y").translate(shift) == P("(x + 1)*(y - 2)"));
  CHECK(P("x^3*y + y").derivative(0) == P("3*x^2*y"));
  CHECK(P("x^2 + 3*x*y^4").order() == 2);
  CHECK(P("x^2 + 3*x*y^4").total_degree() == 5);
}
