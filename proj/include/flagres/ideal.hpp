#pragma once

#include "flagres/poly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace flagres {

/// Reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading monomial.
struct GroebnerBasis {
  VarList vars;
  MonomialOrder order = MonomialOrder::GrevLex;
  std::vector<Polynomial> polys;

  std::vector<Monomial> leading_monomials() const;
  bool is_unit() const;
};

struct IdealPresentation {
  std::vector<Polynomial> generators;
  VarList vars;
  MonomialOrder order = MonomialOrder::GrevLex;
  GroebnerBasis basis;
};

IdealPresentation present_ideal(std::vector<Polynomial> generators, VarList vars,
                                MonomialOrder order = MonomialOrder::GrevLex);

/// Buchberger's algorithm, normal selection strategy, product and chain criteria.
/// `vars` is only consulted when every generator is zero.
GroebnerBasis groebner(std::span<const Polynomial> gens, MonomialOrder order, VarList vars = nullptr);

/// Full reduction of f against the basis.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis);

/// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& basis);

bool is_zero_dimensional(const GroebnerBasis& basis);

/// Number of standard monomials; throws AlgebraError unless zero-dimensional.
std::uint64_t quotient_dimension(const GroebnerBasis& basis);

bool ideals_equal(std::span<const Polynomial> a, std::span<const Polynomial> b,
                  MonomialOrder order = MonomialOrder::GrevLex);

// ---------------------------------------------------------------- local algebra at the origin

struct MoraOptions {
  std::uint64_t max_reduction_steps = 1'000'000;
};

/// Standard basis for the local (negative grevlex) order via Mora's tangent-cone
/// normal form.
std::vector<Polynomial> local_standard_basis(std::span<const Polynomial> gens, const MoraOptions& opts = {});

/// Weak Mora normal form of f against a local standard basis; zero iff f lies in
/// the ideal of the local ring at the origin.
Polynomial mora_normal_form(const Polynomial& f, std::span<const Polynomial> standard_basis,
                            const MoraOptions& opts = {});

struct LocalAlgebra {
  std::uint64_t multiplicity = 0;
  /// Highest total degree of a standard monomial; m^(max_standard_degree+1) lies in the ideal.
  std::uint64_t max_standard_degree = 0;
  std::vector<Polynomial> standard_basis;
};

/// Local algebra at the origin; throws AlgebraError when the staircase is infinite.
LocalAlgebra local_algebra(std::span<const Polynomial> gens, const MoraOptions& opts = {});

/// dim of the local quotient at `point` (the Milnor number when gens are the
/// components of a map germ).
std::uint64_t local_multiplicity(std::span<const Polynomial> gens, std::span<const Rational> point,
                                 const MoraOptions& opts = {});

/// Equality of the ideals generated in the local ring at the origin.
bool local_ideals_equal(std::span<const Polynomial> a, std::span<const Polynomial> b,
                        const MoraOptions& opts = {});

}  // namespace flagres
