#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/cohomology.hpp"
#include "flagres/error.hpp"

#include <random>

using namespace flagres;

namespace {

CohomologyClass cls(int n, std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  q.resize(static_cast<std::size_t>(n) + 1);
  return CohomologyClass(n, q);
}

Rational ipow(long b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("total chern classes") {
  CHECK(total_chern({{1, 1}}, 3) == cls(3, {1, 2, 1}));
  CHECK(total_chern({{0}}, 3) == cls(3, {1}));
  CHECK(total_chern({{2, -1}}, 2) == cls(2, {1, 1, -2}));
  CHECK(first_chern({{2, -1, 4}}, 3) == cls(3, {0, 5}));
}

TEST_CASE("integration") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(integrate(CohomologyClass::hyperplane_power(n, n)) == 1);
    CHECK(integrate(CohomologyClass::hyperplane_power(n, n - 1)) == 0);
  }
  CHECK(integrate(CohomologyClass::hyperplane_power(3, 1).scale(2).pow(3)) == 8);
}

TEST_CASE("whitney product is multiplicative") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> a(-4, 4);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 8;
    SplitSheaf s{{a(rng), a(rng)}}, u{{a(rng), a(rng), a(rng)}};
    SplitSheaf su = s;
    su.twists.insert(su.twists.end(), u.twists.begin(), u.twists.end());
    CHECK(total_chern(su, n) == total_chern(s, n) * total_chern(u, n));
  }
}

TEST_CASE("integral of c1(O(a))^n") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> a(-6, 6);
  for (int n = 1; n <= 8; ++n) {
    const long v = a(rng);
    CHECK(integrate(first_chern({{v}}, n).pow(static_cast<unsigned>(n))) == ipow(v, n));
  }
}

TEST_CASE("projective residue table") {
  for (int n = 3; n <= 8; ++n)
    for (int j = 0; j < n; ++j) {
      const SplitSheaf F1{{1}}, F2{std::vector<long>(static_cast<std::size_t>(n - 1), 1)};
      CHECK(flag_residue_total(n, F1, F2, j) == ipow(n - 2, n - 1 - j) * ipow(2, 1 + j));
    }
  CHECK(flag_residue_total(3, {{1}}, {{1, 1}}, 2) == 8);
  CHECK(flag_residue_total(3, {{1}}, {{1, 1}}, 0) == 2);
  CHECK_THROWS_AS(flag_residue_total(3, {{1}}, {{1, 1}}, 3), Error);
  CHECK_THROWS_AS(flag_residue_total(3, {{1}}, {{1, 1}}, -1), Error);
}

TEST_CASE("slopes") {
  CHECK(slope({{1, 1}}) == 1);
  CHECK(slope({{3}}) == 3);
  CHECK(slope({{2, 0}}) == 1);
  CHECK(slope({{1, 2}}) == Rational(3, 2));
}

TEST_CASE("positivity reports") {
  const auto r = residue_positivity_check(3, {{1, 1}}, {{1}});
  CHECK(r.a == 2);
  CHECK(r.b == 1);
  CHECK(r.value == 1);
  CHECK(r.nonneg);
  CHECK(r.precondition_ok);
  CHECK(residue_positivity_check(3, {{1, 1}}, {{2}}).value == 0);
  const auto q = residue_positivity_check(2, {{3}}, {{1}});
  CHECK(q.value == 4);
  CHECK(q.nonneg);
  // Slope of the subsheaf above the sheaf: reported, not thrown.
  const auto bad = residue_positivity_check(3, {{0, 0}}, {{2}});
  CHECK_FALSE(bad.precondition_ok);
  CHECK_FALSE(bad.note.empty());
}
