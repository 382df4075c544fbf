#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/error.hpp"
#include "flagres/expr.hpp"
#include "flagres/ideal.hpp"
#include "oracles.hpp"

#include <random>

using namespace flagres;

namespace {

const std::vector<std::string> kNames{"x", "y", "z"};
const VarList kV2 = make_vars({"x", "y"});
const VarList kV3 = make_vars(kNames);

Polynomial P(const char* s, const VarList& v = kV2) {
  const std::vector<std::string> names(v->begin(), v->end());
  return to_polynomial(parse(s, names), v);
}

std::vector<Polynomial> Ps(std::initializer_list<const char*> ss, const VarList& v = kV2) {
  std::vector<Polynomial> out;
  for (auto s : ss) out.push_back(P(s, v));
  return out;
}

const std::vector<Rational> kOrigin2{0, 0};

}  // namespace

TEST_CASE("groebner examples") {
  const auto gb = groebner(Ps({"x^2 + y", "y"}), MonomialOrder::GrevLex);
  CHECK(gb.polys == Ps({"y", "x^2"}));
  CHECK(groebner(Ps({"x", "y"}), MonomialOrder::GrevLex).polys == Ps({"y", "x"}));
  CHECK(groebner(Ps({"x^2 - 1", "x - 1"}), MonomialOrder::GrevLex).polys == Ps({"x - 1"}));
  CHECK(groebner(std::vector<Polynomial>{}, MonomialOrder::GrevLex, kV2).polys.empty());
}

TEST_CASE("zero dimensionality and quotient dimension") {
  CHECK(is_zero_dimensional(groebner(Ps({"y", "x^2"}), MonomialOrder::GrevLex)));
  CHECK_FALSE(is_zero_dimensional(groebner(Ps({"x*y"}), MonomialOrder::GrevLex)));
  CHECK_FALSE(is_zero_dimensional(groebner(std::vector<Polynomial>{}, MonomialOrder::GrevLex, kV2)));
  CHECK(quotient_dimension(groebner(Ps({"x^2", "y^3"}), MonomialOrder::GrevLex)) == 6);
  CHECK(quotient_dimension(groebner(Ps({"x", "y"}), MonomialOrder::GrevLex)) == 1);
  CHECK(quotient_dimension(groebner(Ps({"x^2", "x*y", "y^2"}), MonomialOrder::GrevLex)) == 3);
  CHECK_THROWS_AS(quotient_dimension(groebner(Ps({"x*y"}), MonomialOrder::GrevLex)), AlgebraError);
}

TEST_CASE("local multiplicity examples") {
  CHECK(local_multiplicity(Ps({"x^2", "y^3"}), kOrigin2) == 6);
  CHECK(local_multiplicity(Ps({"x + x^2", "y"}), kOrigin2) == 1);
  const VarList v4 = make_vars({"x", "y", "w", "t"});
  const std::vector<Rational> o4(4, 0);
  CHECK(local_multiplicity(Ps({"x^2", "y^2", "w^2", "t^2"}, v4), o4) == 16);
  CHECK(local_multiplicity(Ps({"x^2 - 1", "y"}), std::vector<Rational>{1, 0}) == 1);
  CHECK(local_multiplicity(Ps({"x^2 - 1", "y"}), kOrigin2) == 0);  // not a zero
  CHECK_THROWS_AS(local_multiplicity(Ps({"x*y", "x^2"}), kOrigin2), AlgebraError);
}

TEST_CASE("ideal equality examples") {
  CHECK(ideals_equal(Ps({"x", "y"}), Ps({"y", "x"})));
  CHECK_FALSE(ideals_equal(Ps({"x^2"}), Ps({"x"})));
  CHECK(ideals_equal(Ps({"x^2", "y^3"}), Ps({"-y^3", "x^2"})));
  // Different globally, equal in the local ring at the origin.
  CHECK_FALSE(ideals_equal(Ps({"x + x^2", "y"}), Ps({"x", "y"})));
  CHECK(local_ideals_equal(Ps({"x + x^2", "y"}), Ps({"x", "y"})));
  CHECK_FALSE(local_ideals_equal(Ps({"x^2", "y"}), Ps({"x", "y"})));
}

TEST_CASE("buchberger criterion holds post hoc") {
  std::mt19937_64 rng(1234);
  for (auto order : {MonomialOrder::GrevLex, MonomialOrder::Lex}) {
    for (int t = 0; t < 40; ++t) {
      std::vector<Polynomial> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(oracle::random_polynomial(rng, kV3, 3, 3));
      const auto gb = groebner(gens, order, kV3);
      CHECK(satisfies_buchberger_criterion(gb));
      // Every generator reduces to zero; every basis element is monic.
      for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
      for (const auto& g : gb.polys) CHECK(g.leading_term(order).coeff == 1);
    }
  }
}

TEST_CASE("quotient dimension does not depend on the global order") {
  std::mt19937_64 rng(4321);
  int tested = 0;
  for (int t = 0; t < 200 && tested < 30; ++t) {
    // x^a + lower, y^b + lower: zero dimensional by construction.
    std::uniform_int_distribution<unsigned> e(1, 4);
    const unsigned a = e(rng), b = e(rng);
    Polynomial f = P("x").pow(a) + oracle::random_polynomial(rng, kV2, a - 1, 3);
    Polynomial g = P("y").pow(b) + oracle::random_polynomial(rng, kV2, b - 1, 3);
    std::vector<Polynomial> gens{f, g, oracle::random_polynomial(rng, kV2, 3, 3)};
    const auto dl = groebner(gens, MonomialOrder::Lex);
    const auto dg = groebner(gens, MonomialOrder::GrevLex);
    REQUIRE(is_zero_dimensional(dg));
    CHECK(quotient_dimension(dl) == quotient_dimension(dg));
    ++tested;
  }
  CHECK(tested == 30);
}

TEST_CASE("monomial ideals have product multiplicity") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint32_t> e(1, 5);
  for (int t = 0; t < 20; ++t) {
    const std::uint32_t a = e(rng), b = e(rng), c = e(rng);
    std::vector<Polynomial> gens{Polynomial::monomial(kV3, Monomial({a, 0, 0}), 1),
                                 Polynomial::monomial(kV3, Monomial({0, b, 0}), 1),
                                 Polynomial::monomial(kV3, Monomial({0, 0, c}), 1)};
    CHECK(local_multiplicity(gens, std::vector<Rational>(3, 0)) == a * b * c);
  }
}

TEST_CASE("local multiplicity matches the brute force oracle and bounds the global count") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 25; ++t) {
    std::uniform_int_distribution<unsigned> e(1, 3);
    const unsigned a = e(rng), b = e(rng);
    // Components through the origin with random lower and higher terms.
    Polynomial f = P("x").pow(a) + oracle::random_polynomial(rng, kV2, a + 2, 3);
    Polynomial g = P("y").pow(b) + oracle::random_polynomial(rng, kV2, b + 2, 3);
    f = f - Polynomial::constant(kV2, f.constant_term());
    g = g - Polynomial::constant(kV2, g.constant_term());
    const std::vector<Polynomial> gens{f, g};
    const auto gb = groebner(gens, MonomialOrder::GrevLex);
    std::uint64_t mu = 0;
    try {
      mu = local_multiplicity(gens, kOrigin2);
    } catch (const AlgebraError&) {
      continue;  // the origin sits on a curve of zeros
    }
    const auto brute = oracle::brute_force_multiplicity(gens);
    REQUIRE(brute.has_value());
    CHECK_MESSAGE(mu == *brute, f.to_string() << " ; " << g.to_string());
    if (is_zero_dimensional(gb)) CHECK(mu <= quotient_dimension(gb));
  }
}

TEST_CASE("mora normal form decides local membership") {
  const auto sb = local_standard_basis(Ps({"x - x^2", "y^2"}));
  CHECK(mora_normal_form(P("x"), sb).is_zero());
  CHECK(mora_normal_form(P("x*y + y^3"), sb).is_zero());
  CHECK_FALSE(mora_normal_form(P("y"), sb).is_zero());
  const auto la = local_algebra(Ps({"x^3 - y^2", "x*y"}));
  CHECK(la.multiplicity == 5);
}

TEST_CASE("unit factors with high-degree tails") {
  // The tails push plain Mora reduction into ever higher degrees; the corner bound cuts it off.
  const auto gens = Ps({"(1 + x/2 + y/2)*x^4 - 1/8*x^6*y + 1/8*x^3*y^4", "(1 - x/4 + y/4)*y^3 - 1/8*x*y^6 + 1/8*x^7"});
  CHECK(local_multiplicity(gens, kOrigin2) == 12);
  CHECK(oracle::brute_force_multiplicity(gens) == std::optional<std::uint64_t>(12));
  CHECK_FALSE(local_ideals_equal(gens, Ps({"x^4", "y^3 + x^3"})));
  CHECK(local_ideals_equal(gens, Ps({"x^4", "y^3"})));
  const auto sb = local_standard_basis(gens);
  CHECK_FALSE(mora_normal_form(P("x^3*y^2"), sb).is_zero());
  CHECK(mora_normal_form(P("x^4*y^3 + x^9"), sb).is_zero());
}
