#include "flagres/ideal.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

namespace flagres {

namespace {

/// Terms kept sorted from largest to smallest under a fixed order.
struct SortedPoly {
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  std::uint64_t ecart() const {
    std::uint64_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.monomial.degree());
    return d - lead().monomial.degree();
  }
};

SortedPoly sorted(const Polynomial& p, MonomialOrder order) { return {p.sorted_terms(order)}; }

Polynomial unsorted(const SortedPoly& p, const VarList& vars) {
  Polynomial r(vars);
  for (const auto& t : p.terms) r.add_term(t.monomial, t.coeff);
  return r;
}

// h - c * m * g, both sorted; monomial multiplication preserves every order used here.
SortedPoly sub_scaled(const SortedPoly& h, const Rational& c, const Monomial& m, const SortedPoly& g,
                      MonomialOrder order) {
  SortedPoly out;
  out.terms.reserve(h.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < h.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.terms.push_back(h.terms[i++]);
      continue;
    }
    Monomial gm = g.terms[j].monomial * m;
    if (i == h.terms.size()) {
      out.terms.push_back({std::move(gm), -c * g.terms[j++].coeff});
      continue;
    }
    const int cmpv = compare(order, h.terms[i].monomial, gm);
    if (cmpv > 0) {
      out.terms.push_back(h.terms[i++]);
    } else if (cmpv < 0) {
      out.terms.push_back({std::move(gm), -c * g.terms[j++].coeff});
    } else {
      Rational v = h.terms[i].coeff - c * g.terms[j].coeff;
      if (v != 0) out.terms.push_back({std::move(gm), std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(SortedPoly& p) {
  if (p.empty()) return;
  const Rational lc = p.lead().coeff;
  if (lc == 1) return;
  for (auto& t : p.terms) t.coeff /= lc;
}

SortedPoly spoly(const SortedPoly& f, const SortedPoly& g, MonomialOrder order) {
  const Monomial l = f.lead().monomial.lcm(g.lead().monomial);
  const Monomial mf = f.lead().monomial.quotient_of(l);
  const Monomial mg = g.lead().monomial.quotient_of(l);
  SortedPoly a;
  for (const auto& t : f.terms) a.terms.push_back({t.monomial * mf, t.coeff / f.lead().coeff});
  return sub_scaled(a, Rational(1) / g.lead().coeff, mg, g, order);
}

class StepBudget {
public:
  explicit StepBudget(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    if (++steps_ > limit_)
      throw AlgebraError("reduction step budget of " + std::to_string(limit_) +
                         " exhausted; the ideal may not be finite at the point");
  }

private:
  std::uint64_t limit_;
  std::uint64_t steps_ = 0;
};

// Full reduction (top and tail) for global orders.
SortedPoly full_reduce(SortedPoly h, const std::vector<SortedPoly>& basis, MonomialOrder order,
                       StepBudget& budget) {
  SortedPoly rem;
  while (!h.empty()) {
    const Term& lt = h.lead();
    const SortedPoly* div = nullptr;
    for (const auto& g : basis)
      if (g.lead().monomial.divides(lt.monomial)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.terms.push_back(lt);
      h.terms.erase(h.terms.begin());
      continue;
    }
    budget.tick();
    h = sub_scaled(h, lt.coeff / div->lead().coeff, div->lead().monomial.quotient_of(lt.monomial), *div, order);
  }
  return rem;
}

struct PendingPair {
  std::uint64_t degree;
  std::size_t i, j;
  auto operator<=>(const PendingPair&) const = default;
};

VarList vars_of(std::span<const Polynomial> gens, VarList fallback) {
  for (const auto& g : gens)
    if (g.vars()) return g.vars();
  return fallback;
}

/// Staircase statistics for a monomial ideal given by its generators.
struct Staircase {
  bool finite = false;
  std::uint64_t count = 0;
  std::uint64_t max_degree = 0;
};

Staircase count_staircase(const std::vector<Monomial>& leads, std::size_t nvars) {
  Staircase s;
  for (const auto& m : leads)
    if (m.is_one()) {
      s.finite = true;
      return s;
    }
  std::vector<std::uint32_t> bound(nvars, 0);
  for (const auto& m : leads) {
    if (auto v = m.pure_power_variable()) {
      const auto e = m[*v];
      if (bound[*v] == 0 || e < bound[*v]) bound[*v] = e;
    }
  }
  for (auto b : bound)
    if (b == 0) return s;
  s.finite = true;
  long double box = 1;
  for (auto b : bound) box *= b;
  if (box > 5e7) throw AlgebraError("staircase too large to enumerate");
  Monomial cur(nvars);
  for (;;) {
    bool standard = true;
    for (const auto& m : leads)
      if (m.divides(cur)) {
        standard = false;
        break;
      }
    if (standard) {
      ++s.count;
      s.max_degree = std::max(s.max_degree, cur.degree());
    }
    std::size_t k = 0;
    while (k < nvars) {
      if (++cur[k] < bound[k]) break;
      cur[k] = 0;
      ++k;
    }
    if (k == nvars) break;
  }
  return s;
}

std::vector<Monomial> minimal_monomials(std::vector<Monomial> ms) {
  std::vector<Monomial> out;
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });
  for (const auto& m : ms) {
    bool redundant = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- global

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& p : polys) out.push_back(p.leading_term(order).monomial);
  return out;
}

bool GroebnerBasis::is_unit() const {
  return polys.size() == 1 && polys.front().is_constant() && !polys.front().is_zero();
}

GroebnerBasis groebner(std::span<const Polynomial> gens, MonomialOrder order, VarList vars) {
  if (!is_global(order)) throw AlgebraError("groebner requires a global monomial order");
  vars = vars_of(gens, std::move(vars));
  GroebnerBasis out{vars, order, {}};

  std::vector<SortedPoly> g;
  for (const auto& p : gens) {
    if (!p.same_ambient(gens.front())) throw AmbientMismatch();
    if (p.is_zero()) continue;
    SortedPoly s = sorted(p, order);
    make_monic(s);
    g.push_back(std::move(s));
  }
  if (g.empty()) return out;

  StepBudget budget(50'000'000);
  std::set<PendingPair> pending;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial l = g[i].lead().monomial.lcm(g[j].lead().monomial);
      pending.insert({l.degree(), i, j});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) add_pairs_for(j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const Monomial l = g[a].lead().monomial.lcm(g[b].lead().monomial);
    return pending.count({l.degree(), a, b}) > 0;
  };

  while (!pending.empty()) {
    const PendingPair pr = *pending.begin();
    pending.erase(pending.begin());
    const Monomial& li = g[pr.i].lead().monomial;
    const Monomial& lj = g[pr.j].lead().monomial;
    if (li.coprime(lj)) continue;
    const Monomial l = li.lcm(lj);
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (g[k].lead().monomial.divides(l) && !is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    SortedPoly h = full_reduce(spoly(g[pr.i], g[pr.j], order), g, order, budget);
    if (h.empty()) continue;
    make_monic(h);
    g.push_back(std::move(h));
    add_pairs_for(g.size() - 1);
  }

  // Minimalize, then interreduce.
  std::vector<SortedPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
      if (k == i) continue;
      const auto& lk = g[k].lead().monomial;
      const auto& li = g[i].lead().monomial;
      if (lk.divides(li) && (lk != li || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<SortedPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<SortedPoly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    SortedPoly tail{{minimal[i].terms.begin() + 1, minimal[i].terms.end()}};
    SortedPoly r = full_reduce(tail, others, order, budget);
    r.terms.insert(r.terms.begin(), minimal[i].lead());
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [order](const SortedPoly& a, const SortedPoly& b) {
    return compare(order, a.lead().monomial, b.lead().monomial) < 0;
  });
  for (const auto& r : reduced) out.polys.push_back(unsorted(r, vars));
  return out;
}

IdealPresentation present_ideal(std::vector<Polynomial> generators, VarList vars, MonomialOrder order) {
  IdealPresentation ip{std::move(generators), std::move(vars), order, {}};
  ip.basis = groebner(ip.generators, order, ip.vars);
  return ip;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  std::vector<SortedPoly> g;
  for (const auto& p : basis.polys) g.push_back(sorted(p, basis.order));
  StepBudget budget(50'000'000);
  return unsorted(full_reduce(sorted(f, basis.order), g, basis.order, budget), f.vars());
}

bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  std::vector<SortedPoly> g;
  for (const auto& p : basis.polys) g.push_back(sorted(p, basis.order));
  StepBudget budget(50'000'000);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!full_reduce(spoly(g[i], g[j], basis.order), g, basis.order, budget).empty()) return false;
  return true;
}

bool is_zero_dimensional(const GroebnerBasis& basis) {
  if (basis.polys.empty()) return basis.vars && basis.vars->empty();
  return count_staircase(basis.leading_monomials(), basis.vars->size()).finite;
}

std::uint64_t quotient_dimension(const GroebnerBasis& basis) {
  if (basis.polys.empty()) {
    if (basis.vars && basis.vars->empty()) return 1;
    throw AlgebraError("quotient by the zero ideal is infinite dimensional");
  }
  const Staircase s = count_staircase(basis.leading_monomials(), basis.vars->size());
  if (!s.finite) throw AlgebraError("ideal is not zero-dimensional");
  return s.count;
}

bool ideals_equal(std::span<const Polynomial> a, std::span<const Polynomial> b, MonomialOrder order) {
  const VarList vars = vars_of(a, vars_of(b, nullptr));
  const GroebnerBasis ga = groebner(a, order, vars);
  const GroebnerBasis gb = groebner(b, order, vars);
  if (ga.polys.size() != gb.polys.size()) return false;
  for (std::size_t i = 0; i < ga.polys.size(); ++i)
    if (!(ga.polys[i] == gb.polys[i])) return false;
  return true;
}

// ---------------------------------------------------------------- local

namespace {

// Once the leads contain a pure power x_i^b_i of every variable, every monomial
// of degree >= sum(b_i - 1) + 1 lies in the leading ideal and hence, by
// Nakayama, in the local ideal. Terms from that degree on can be discarded.
std::optional<std::uint64_t> corner_degree(const std::vector<SortedPoly>& s) {
  if (s.empty()) return std::nullopt;
  const std::size_t n = s.front().lead().monomial.size();
  std::vector<std::uint32_t> bound(n, 0);
  for (const auto& g : s) {
    const Monomial& m = g.lead().monomial;
    if (m.is_one()) return 0;
    if (auto v = m.pure_power_variable())
      if (bound[*v] == 0 || m[*v] < bound[*v]) bound[*v] = m[*v];
  }
  std::uint64_t d = 1;
  for (auto b : bound) {
    if (b == 0) return std::nullopt;
    d += b - 1;
  }
  return d;
}

// Local order sorts by ascending degree, so the discarded terms form a suffix.
void truncate_at(SortedPoly& p, std::optional<std::uint64_t> corner) {
  if (!corner) return;
  const auto it = std::find_if(p.terms.begin(), p.terms.end(),
                               [&](const Term& t) { return t.monomial.degree() >= *corner; });
  p.terms.erase(it, p.terms.end());
}

SortedPoly mora_reduce(SortedPoly h, std::vector<SortedPoly> t, StepBudget& budget,
                       std::optional<std::uint64_t> corner) {
  constexpr auto order = MonomialOrder::Local;
  truncate_at(h, corner);
  while (!h.empty()) {
    const SortedPoly* best = nullptr;
    std::uint64_t best_ecart = 0;
    for (const auto& g : t) {
      if (!g.lead().monomial.divides(h.lead().monomial)) continue;
      const auto e = g.ecart();
      if (!best || e < best_ecart) {
        best = &g;
        best_ecart = e;
      }
    }
    if (!best) break;
    budget.tick();
    const SortedPoly reducer = *best;
    if (best_ecart > h.ecart()) t.push_back(h);
    const Term& lt = h.lead();
    h = sub_scaled(h, lt.coeff / reducer.lead().coeff, reducer.lead().monomial.quotient_of(lt.monomial), reducer,
                   order);
    truncate_at(h, corner);
  }
  return h;
}

std::vector<SortedPoly> mora_standard_basis(std::span<const Polynomial> gens, StepBudget& budget) {
  constexpr auto order = MonomialOrder::Local;
  std::vector<SortedPoly> s;
  for (const auto& p : gens) {
    if (p.is_zero()) continue;
    SortedPoly sp = sorted(p, order);
    make_monic(sp);
    s.push_back(std::move(sp));
  }
  std::set<PendingPair> pending;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial& a = s[i].lead().monomial;
      const Monomial& b = s[j].lead().monomial;
      if (a.coprime(b)) continue;  // product criterion
      pending.insert({a.lcm(b).degree(), i, j});
    }
  };
  for (std::size_t j = 1; j < s.size(); ++j) add_pairs_for(j);
  auto corner = corner_degree(s);
  while (!pending.empty()) {
    const PendingPair pr = *pending.begin();
    pending.erase(pending.begin());
    SortedPoly h = mora_reduce(spoly(s[pr.i], s[pr.j], order), s, budget, corner);
    if (h.empty()) continue;
    make_monic(h);
    s.push_back(std::move(h));
    add_pairs_for(s.size() - 1);
    corner = corner_degree(s);
  }
  return s;
}

}  // namespace

std::vector<Polynomial> local_standard_basis(std::span<const Polynomial> gens, const MoraOptions& opts) {
  StepBudget budget(opts.max_reduction_steps);
  const VarList vars = vars_of(gens, nullptr);
  std::vector<Polynomial> out;
  for (const auto& p : mora_standard_basis(gens, budget)) out.push_back(unsorted(p, vars));
  return out;
}

Polynomial mora_normal_form(const Polynomial& f, std::span<const Polynomial> standard_basis, const MoraOptions& opts) {
  StepBudget budget(opts.max_reduction_steps);
  std::vector<SortedPoly> t;
  for (const auto& p : standard_basis)
    if (!p.is_zero()) t.push_back(sorted(p, MonomialOrder::Local));
  const auto corner = corner_degree(t);
  return unsorted(mora_reduce(sorted(f, MonomialOrder::Local), std::move(t), budget, corner), f.vars());
}

LocalAlgebra local_algebra(std::span<const Polynomial> gens, const MoraOptions& opts) {
  StepBudget budget(opts.max_reduction_steps);
  const VarList vars = vars_of(gens, nullptr);
  const auto sb = mora_standard_basis(gens, budget);
  std::vector<Monomial> leads;
  for (const auto& p : sb) leads.push_back(p.lead().monomial);
  const std::size_t n = vars ? vars->size() : 0;
  const Staircase st = count_staircase(minimal_monomials(std::move(leads)), n);
  if (!st.finite) throw AlgebraError("ideal is not finite at the point (infinite local staircase)");
  LocalAlgebra la;
  la.multiplicity = st.count;
  la.max_standard_degree = st.max_degree;
  for (const auto& p : sb) la.standard_basis.push_back(unsorted(p, vars));
  return la;
}

std::uint64_t local_multiplicity(std::span<const Polynomial> gens, std::span<const Rational> point,
                                 const MoraOptions& opts) {
  std::vector<Polynomial> shifted;
  for (const auto& g : gens) shifted.push_back(g.translate(point));
  if (shifted.empty()) throw AlgebraError("no generators");

  // Fast path: the global quotient is already local when every variable is nilpotent in it.
  const GroebnerBasis gb = groebner(shifted, MonomialOrder::GrevLex);
  if (gb.is_unit()) return 0;
  if (is_zero_dimensional(gb)) {
    const auto dim = quotient_dimension(gb);
    bool local = true;
    const auto& vars = gb.vars;
    for (std::size_t i = 0; i < vars->size() && local; ++i) {
      const Polynomial xp = Polynomial::monomial(vars, Monomial::variable(vars->size(), i, static_cast<std::uint32_t>(dim)), 1);
      local = normal_form(xp, gb).is_zero();
    }
    if (local) return dim;
  }
  return local_algebra(shifted, opts).multiplicity;
}

bool local_ideals_equal(std::span<const Polynomial> a, std::span<const Polynomial> b, const MoraOptions& opts) {
  const auto sa = local_standard_basis(a, opts);
  const auto sbb = local_standard_basis(b, opts);
  for (const auto& f : b)
    if (!mora_normal_form(f, sa, opts).is_zero()) return false;
  for (const auto& f : a)
    if (!mora_normal_form(f, sbb, opts).is_zero()) return false;
  return true;
}

}  // namespace flagres
