#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagres/error.hpp"
#include "flagres/flag.hpp"

using namespace flagres;

namespace {

FlagChart chart(std::vector<std::string> vars, std::vector<const char*> X, std::vector<const char*> omega) {
  FlagChart c;
  c.vars = std::move(vars);
  for (auto s : X) c.X.push_back(parse(s, c.vars));
  for (auto s : omega) c.omega.push_back(parse(s, c.vars));
  c.k1 = static_cast<unsigned>(c.n() - 1);
  return c;
}

bool all_passed(const ResidueReport& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return false;
  return true;
}

FlagChart izawa(int l) {
  const std::string e = std::to_string(l - 1);
  const std::string S = "x^" + std::to_string(l) + " + y^" + std::to_string(l) + " + w^" + std::to_string(l) + " + t^" +
                        std::to_string(l);
  const std::string u = "(1 + " + S + ")^((-" + std::to_string(l) + " - 1)/2)";
  FlagChart c;
  c.vars = {"x", "y", "w", "t"};
  for (const auto& s : {"-y^" + e + "*" + u, "x^" + e + "*" + u, "-t^" + e + "*" + u, "w^" + e + "*" + u})
    c.X.push_back(parse(s, c.vars));
  for (const auto& s : {"x^" + e + "*" + u, "y^" + e + "*" + u, "w^" + e + "*" + u, "t^" + e + "*" + u})
    c.omega.push_back(parse(s, c.vars));
  c.integrating_factor = std::pair{parse(u + "/" + std::to_string(l), c.vars), parse(S, c.vars)};
  c.k1 = 3;
  return c;
}

}  // namespace

TEST_CASE("flag condition") {
  CHECK(check_flag(chart({"z1", "z2", "z3"}, {"z1", "2*z2", "3*z3"}, {"z2*z3", "-z1*z3", "1/3*z1*z2"})));
  CHECK_FALSE(check_flag(chart({"x", "y"}, {"1", "0"}, {"1", "0"})));
  const auto d = check_flag_detailed(izawa(2));
  CHECK(d.holds);
  // Non-polynomial entries whose contraction does not cancel structurally fall back to sampling.
  const auto n = check_flag_detailed(chart({"x", "y"}, {"(1 + x)^(1/2)*y", "-(1 + x)^(1/2)*x"}, {"x", "y"}));
  CHECK(n.holds);
}

TEST_CASE("flag condition is projective in each factor") {
  const auto base = chart({"x", "y", "z"}, {"x", "2*y", "3*z"}, {"y*z", "-x*z", "1/3*x*y"});
  auto scaled = base;
  for (auto& e : scaled.X) e = e * Expr::constant(Rational(-7, 3));
  for (auto& e : scaled.omega) e = e * parse("1 + x^2 - y*z", base.vars);
  CHECK(check_flag(scaled));
  auto broken = base;
  broken.omega[0] = broken.omega[0] + parse("x", base.vars);
  CHECK_FALSE(check_flag(broken));
}

TEST_CASE("singular loci") {
  const auto c = chart({"z0", "z1", "z2"}, {"z0", "z1", "z2"}, {"-z1", "z0", "0"});
  const auto s2 = singular_locus_form(c);
  CHECK(s2.basis.polys.size() == 2);
  CHECK(is_zero_dimensional(singular_locus_vf(c).basis));
  CHECK_FALSE(is_zero_dimensional(s2.basis));
  const auto u = chart({"x", "y"}, {"1", "y"}, {"-y", "1"});
  CHECK(singular_locus_vf(u).basis.is_unit());
  CHECK_THROWS_AS(singular_locus_vf(chart({"x", "y"}, {"x^(1/2)", "y"}, {"0", "0"})), NonPolynomialError);
}

TEST_CASE("residues of the vector field") {
  const auto a = res_cn_vf(chart({"z1", "z2"}, {"z1", "z2"}, {"-z2", "z1"}), ChartPoint::origin(2));
  CHECK(a.algebraic == 1);
  CHECK(all_passed(a));
  const auto b = res_cn_vf(chart({"x", "y"}, {"x^2", "y^3"}, {"-y^3", "x^2"}), ChartPoint::origin(2));
  CHECK(b.algebraic == 6);
  CHECK(b.numeric->snapped_integer == 6);
  CHECK(b.passed());
}

TEST_CASE("residues of the form") {
  const auto a = res_cn_form(chart({"x", "y"}, {"x", "y"}, {"y", "-x"}), ChartPoint::origin(2));
  CHECK(a.algebraic == 1);
  CHECK(a.passed());
  const auto b = res_cn_form(chart({"x", "y", "z"}, {"0", "0", "0"}, {"x", "y", "z"}), ChartPoint::origin(3));
  CHECK(b.algebraic == -2);
  CHECK(b.numeric->snapped_integer == -2);
  CHECK(b.passed());
  CHECK(form_residue_factor(4) == 6);
  CHECK(form_residue_factor(3) == -2);
}

TEST_CASE("comparison on the constructed flag and the control") {
  const auto good = verify_comparison(chart({"x", "y"}, {"x^2", "y^3"}, {"-y^3", "x^2"}), ChartPoint::origin(2));
  CHECK(good.checks.size() == 4);
  CHECK(good.passed());
  const auto bad = verify_comparison(chart({"x", "y"}, {"x^2", "y^3"}, {"x^2", "x^2"}), ChartPoint::origin(2));
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.checks.at(0).passed);  // flag condition
  bool ideal_failed = false;
  for (const auto& c : bad.checks)
    if (c.name.find("ideal") != std::string::npos) ideal_failed = !c.passed;
  CHECK(ideal_failed);
}

TEST_CASE("germ multiplicity of analytic germs") {
  const auto c = izawa(3);
  const std::vector<Rational> o(4, 0);
  const auto g = germ_multiplicity(c.omega, c.var_list(), o);
  CHECK(g.mu == 16);
  CHECK_FALSE(g.polynomial);
  CHECK(g.truncation_degree > g.max_standard_degree);
  CHECK(germ_multiplicity(izawa(2).X, c.var_list(), o).mu == 1);
}

TEST_CASE("integrating factor validation") {
  CHECK_NOTHROW(izawa(2).validate());
  auto c = izawa(2);
  c.integrating_factor->second = parse("x^2 + y^2 + w^2 + 2*t^2", c.vars);
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("c1^n residues of the flag") {
  auto lin = chart({"x", "y"}, {"x", "y"}, {"y", "-x"});
  CHECK_THROWS_AS(res_c1n_flag(lin, ChartPoint::origin(2)), Unsupported);
  // omega = d(xy) with X tangent to the level sets of xy.
  auto c = chart({"x", "y"}, {"-x*(1 + x)", "y*(1 + x)"}, {"y", "x"});
  c.integrating_factor = std::pair{Expr::constant(1), parse("x*y", c.vars)};
  const auto r = res_c1n_flag(c, ChartPoint::origin(2));
  CHECK(r.passed());
  const auto bb = verify_binomial_identity(c, ChartPoint::origin(2));
  CHECK(bb.passed());

  const auto fin = res_c1n_flag(izawa(3), ChartPoint::origin(4));
  CHECK(fin.passed());
  CHECK(std::abs(fin.numeric->value) < 1e-8);
}

TEST_CASE("regular codimension one foliations have no isolated zeros") {
  CHECK(check_prop35(chart({"z1", "z2", "z3"}, {"0", "z2", "z3"}, {"1", "0", "0"})).holds);
  CHECK(check_prop35(chart({"z1", "z2"}, {"0", "z2"}, {"1", "0"})).holds);
  CHECK_THROWS_AS(check_prop35(chart({"z1", "z2"}, {"z1", "z2"}, {"1", "0"})), AlgebraError);
  CHECK_THROWS_AS(check_prop35(chart({"z1", "z2"}, {"0", "z2"}, {"0", "1"})), Error);
}

TEST_CASE("sample points are deterministic and inside the polydisc") {
  const auto a = sample_points(3, 20, 42);
  const auto b = sample_points(3, 20, 42);
  CHECK(a == b);
  for (const auto& p : a)
    for (const auto& z : p) CHECK(std::abs(z) <= 0.4);
}
