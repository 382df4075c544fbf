#include "flagres/cli.hpp"

#include "flagres/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace flagres::cli {

namespace {

// ---------------------------------------------------------------- schema helpers

const Json& req(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  throw SchemaError(where + ": expected an exact rational (\"p/q\" string or integer)");
}

double as_double(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  return to_double(as_rational(j, where));
}

Complex as_complex(const Json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) throw SchemaError(where + ": complex numbers are [re, im] pairs");
    return {as_double(j[0], where), as_double(j[1], where)};
  }
  return {as_double(j, where), 0.0};
}

std::vector<long> as_twists(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty list of integer twists");
  std::vector<long> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw SchemaError(where + ": twists must be integers");
    out.push_back(v.get<long>());
  }
  return out;
}

Expr as_expr(const Json& j, const std::vector<std::string>& vars, const std::string& where) {
  const std::string text = as_string(j, where);
  try {
    return parse(text, vars);
  } catch (const ParseError& e) {
    throw SchemaError(where + ": cannot parse '" + text + "' at offset " + std::to_string(e.offset()) + ": " +
                      e.what());
  }
}

std::vector<Expr> as_exprs(const Json& j, const std::vector<std::string>& vars, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected a list of expressions");
  std::vector<Expr> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_expr(j[i], vars, where + "[" + std::to_string(i) + "]"));
  if (out.size() != vars.size())
    throw SchemaError(where + ": expected " + std::to_string(vars.size()) + " entries, got " +
                      std::to_string(out.size()));
  return out;
}

std::vector<std::string> as_vars(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty list of variable names");
  std::vector<std::string> vars;
  for (const auto& v : j) vars.push_back(as_string(v, where));
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw SchemaError(where + ": duplicate variable names");
  return vars;
}

std::string opt_string(const Json& j, const char* key) {
  return j.contains(key) && j.at(key).is_string() ? j.at(key).get<std::string>() : std::string();
}

// ---------------------------------------------------------------- report helpers

Json complex_json(Complex v) { return Json::array({round15(v.real()), round15(v.imag())}); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt(Complex v) {
  if (std::fabs(v.imag()) < 5e-16 * std::max(1.0, std::fabs(v.real()))) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") + fmt(std::fabs(v.imag())) + "i";
}

Json estimate_json(const ResidueEstimate& e) {
  Json j;
  j["value"] = complex_json(e.value);
  if (e.snapped_integer)
    j["snapped"] = *e.snapped_integer;
  else
    j["snapped"] = nullptr;
  j["converged"] = e.converged;
  j["orientation"] = e.orientation;
  Json hist = Json::array();
  for (const auto& [nodes, v] : e.node_history) hist.push_back(Json::array({nodes, complex_json(v)}));
  j["history"] = hist;
  Json radii = Json::array();
  for (double r : e.radii_used) radii.push_back(round15(r));
  j["radii"] = radii;
  j["diagnostic"] = e.diagnostic;
  return j;
}

Json point_json(const ChartPoint& p) {
  Json j;
  if (p.exact) {
    Json c = Json::array();
    for (const auto& q : *p.exact) c.push_back(to_string(q));
    j["exact"] = c;
  } else {
    Json c = Json::array();
    for (const auto& z : p.approx) c.push_back(complex_json(z));
    j["approx"] = c;
  }
  return j;
}

struct Entry {
  Json json;
  std::vector<TheoremCheck> checks;
  bool converged = true;
  bool error = false;
};

Json checks_json(const std::vector<TheoremCheck>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

Entry report_entry(const std::string& tag, const ResidueReport& r) {
  Entry e;
  e.json["task"] = tag;
  e.json["kind"] = r.task;
  e.json["point"] = point_json(r.point);
  e.json["algebraic"] = r.algebraic ? Json(to_string(*r.algebraic)) : Json(nullptr);
  e.json["numeric"] = r.numeric ? estimate_json(*r.numeric) : Json(nullptr);
  e.json["notes"] = r.notes;
  e.checks = r.checks;
  e.converged = !r.numeric || r.numeric->converged;
  return e;
}

class Runner {
public:
  Runner(const ProblemFile& p, const RunOptions& o) : p_(p), o_(o) {
    settings_ = p.quad;
    if (o.max_nodes) settings_.max_nodes = *o.max_nodes;
    if (o.rel_tol) settings_.rel_tol = *o.rel_tol;
    if (o.radii) settings_.radii = *o.radii;
  }

  RunResult operator()() {
    RunResult res;
    Json entries = Json::array();
    std::ostringstream out;
    out << "problem " << p_.name << " (" << p_.digest << ")\n";
    for (const auto& tag : selected_tasks()) {
      std::vector<Entry> produced;
      try {
        produced = run_task(tag);
      } catch (const SchemaError&) {
        throw;
      } catch (const Error& ex) {
        Entry e;
        e.json["task"] = tag;
        e.json["error"] = ex.what();
        e.error = true;
        produced.push_back(std::move(e));
      }
      for (auto& e : produced) {
        const bool ok = !e.error && e.converged &&
                        std::all_of(e.checks.begin(), e.checks.end(), [](const TheoremCheck& c) { return c.passed; });
        e.json["checks"] = checks_json(e.checks);
        e.json["status"] = e.error ? "error" : ok ? "pass" : "fail";
        res.all_passed = res.all_passed && ok;
        res.any_error = res.any_error || e.error;
        out << (e.error ? "ERROR" : ok ? "PASS " : "FAIL ") << " " << tag;
        if (e.json.contains("point")) out << " at " << point_label(e.json["point"]);
        if (e.json.contains("label")) out << " [" << e.json["label"].get<std::string>() << "]";
        if (e.error) out << ": " << e.json["error"].get<std::string>();
        out << "\n";
        if (e.json.contains("summary")) out << "      " << e.json["summary"].get<std::string>() << "\n";
        for (const auto& c : e.checks)
          out << "      [" << (c.passed ? "ok" : "FAILED") << "] " << c.name << (c.detail.empty() ? "" : ": ")
              << c.detail << "\n";
        if (e.json.contains("notes"))
          for (const auto& n : e.json["notes"]) out << "      note: " << n.get<std::string>() << "\n";
        entries.push_back(std::move(e.json));
      }
    }
    std::size_t total = 0, passed = 0;
    for (const auto& e : entries)
      for (const auto& c : e["checks"]) {
        ++total;
        if (c["passed"].get<bool>()) ++passed;
      }
    out << (res.all_passed ? "all checks passed" : "SOME CHECKS FAILED") << " (" << passed << "/" << total << ")\n";

    Json settings;
    Json radii = Json::array();
    for (double r : settings_.radii) radii.push_back(round15(r));
    settings["radii"] = radii;
    settings["rel_tol"] = settings_.rel_tol;
    settings["max_nodes"] = settings_.max_nodes;

    res.report["tool"] = "flagres";
    res.report["version"] = kToolVersion;
    res.report["problem"] = p_.name;
    res.report["input_digest"] = p_.digest;
    res.report["settings"] = settings;
    res.report["tasks"] = entries;
    res.report["summary"] = Json{{"checks", total},
                                 {"passed", passed},
                                 {"failed", total - passed},
                                 {"errors", res.any_error},
                                 {"all_passed", res.all_passed}};
    res.summary = out.str();
    return res;
  }

private:
  static std::string point_label(const Json& pj) {
    std::string s = "(";
    const Json& c = pj.contains("exact") ? pj["exact"] : pj["approx"];
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ", ";
      s += c[i].is_string() ? c[i].get<std::string>() : c[i].dump();
    }
    return s + ")";
  }

  std::vector<std::string> selected_tasks() const {
    std::vector<std::string> out;
    if (o_.only.empty()) return p_.tasks;
    for (const auto& tag : task_tags()) {
      if (!o_.only.count(tag)) continue;
      if (applicable(tag)) out.push_back(tag);
    }
    if (o_.multiplicities && p_.chart && !p_.points.empty()) out.push_back("multiplicity");
    return out;
  }

  // Data-driven tasks run whenever their inputs exist; chart tasks only when declared.
  bool applicable(const std::string& tag) const {
    if (tag == "chern-pn") return !p_.projective.empty();
    if (tag == "positivity") return !p_.positivity.empty();
    if (tag == "psi-closed") return !p_.forms.empty();
    if (tag == "milnor") return !p_.milnor.empty();
    if (tag == "check-flag" && p_.chart) return true;
    return std::find(p_.tasks.begin(), p_.tasks.end(), tag) != p_.tasks.end();
  }

  const FlagChart& chart() const {
    if (!p_.chart) throw SchemaError("task requires a chart with both foliations");
    return *p_.chart;
  }

  void add_printed_note(Entry& e, const std::string& key, const std::optional<Rational>& computed) const {
    auto it = p_.printed_values.find(key);
    if (it == p_.printed_values.end() || !computed) return;
    const bool same = *computed == it->second;
    e.json["notes"].push_back("printed value for " + key + ": " + to_string(it->second) + "; computed " +
                              to_string(*computed) + (same ? " (agrees)" : " (DIFFERS; recorded, not asserted)"));
    e.json["printed_comparison"] = Json{{"key", key},
                                        {"printed", to_string(it->second)},
                                        {"computed", to_string(*computed)},
                                        {"agrees", same}};
  }

  std::vector<Entry> per_point(const std::string& tag,
                               ResidueReport (*fn)(const FlagChart&, const ChartPoint&, const QuadSettings&)) const {
    std::vector<Entry> out;
    for (const auto& pt : p_.points) {
      try {
        out.push_back(report_entry(tag, fn(chart(), pt, settings_)));
      } catch (const SchemaError&) {
        throw;
      } catch (const Error& ex) {
        Entry e;
        e.json["task"] = tag;
        e.json["point"] = point_json(pt);
        e.json["error"] = ex.what();
        e.error = true;
        out.push_back(std::move(e));
      }
    }
    return out;
  }

  std::vector<Entry> run_task(const std::string& tag) const {
    if (tag == "check-flag") return {check_flag_entry()};
    if (tag == "singular-locus") return {singular_locus_entry()};
    if (tag == "res-cn-vf") {
      auto out = per_point(tag, &res_cn_vf);
      for (auto& e : out) {
        if (e.error) continue;
        std::optional<Rational> mu;
        if (e.json["algebraic"].is_string()) mu = parse_rational(e.json["algebraic"].get<std::string>());
        add_printed_note(e, "mu", mu);
      }
      return out;
    }
    if (tag == "res-cn-form") {
      auto out = per_point(tag, &res_cn_form);
      for (auto& e : out) {
        if (e.error || !e.json["algebraic"].is_string()) continue;
        add_printed_note(e, "c_n(F2)", parse_rational(e.json["algebraic"].get<std::string>()));
      }
      return out;
    }
    if (tag == "comparison") return per_point(tag, &verify_comparison);
    if (tag == "res-c1n") {
      auto out = per_point(tag, &res_c1n_flag);
      for (auto& e : out) {
        if (e.error || !e.json["numeric"].is_object()) continue;
        const Json& v = e.json["numeric"]["value"];
        const Rational snapped = e.json["numeric"]["snapped"].is_number_integer()
                                     ? Rational(e.json["numeric"]["snapped"].get<long>())
                                     : Rational(v[0].get<double>());
        add_printed_note(e, "c_1^n", snapped);
      }
      return out;
    }
    if (tag == "binomial-identity") return per_point(tag, &verify_binomial_identity);
    if (tag == "prop35") return {prop35_entry()};
    if (tag == "chern-pn") return chern_entries();
    if (tag == "positivity") return positivity_entries();
    if (tag == "psi-closed") return psi_entries();
    if (tag == "milnor") return milnor_entries();
    if (tag == "multiplicity") return multiplicity_entries();
    throw SchemaError("unknown task '" + tag + "'");
  }

  Entry check_flag_entry() const {
    const FlagCheck fc = check_flag_detailed(chart());
    Entry e;
    e.json["task"] = "check-flag";
    e.json["method"] = fc.symbolic ? "symbolic" : "numeric";
    e.json["max_residual"] = round15(fc.max_residual);
    e.checks.push_back({"flag condition sum X_i omega_i = 0", fc.holds,
                        fc.symbolic ? "decided by exact cancellation"
                                    : "max residual " + fmt(fc.max_residual) + " over 100 samples"});
    return e;
  }

  Entry singular_locus_entry() const {
    Entry e;
    e.json["task"] = "singular-locus";
    auto describe = [&](const IdealPresentation& ip) {
      Json j;
      Json basis = Json::array();
      for (const auto& g : ip.basis.polys) basis.push_back(g.to_string());
      j["groebner_basis"] = basis;
      j["unit_ideal"] = ip.basis.is_unit();
      j["zero_dimensional"] = is_zero_dimensional(ip.basis);
      if (is_zero_dimensional(ip.basis) && !ip.basis.is_unit()) j["points_with_multiplicity"] = quotient_dimension(ip.basis);
      return j;
    };
    e.json["vector_field"] = describe(singular_locus_vf(chart()));
    e.json["one_form"] = describe(singular_locus_form(chart()));
    std::string s = "S(F1): <";
    for (std::size_t i = 0; i < e.json["vector_field"]["groebner_basis"].size(); ++i)
      s += (i ? ", " : "") + e.json["vector_field"]["groebner_basis"][i].get<std::string>();
    s += ">; S(F2): <";
    for (std::size_t i = 0; i < e.json["one_form"]["groebner_basis"].size(); ++i)
      s += (i ? ", " : "") + e.json["one_form"]["groebner_basis"][i].get<std::string>();
    e.json["summary"] = s + ">";
    return e;
  }

  Entry prop35_entry() const {
    Entry e;
    e.json["task"] = "prop35";
    const Prop35Result r = check_prop35(chart());
    e.checks.push_back({"no isolated zeros of X where F2 is regular", r.holds, r.detail});
    return e;
  }

  std::vector<Entry> chern_entries() const {
    std::vector<Entry> out;
    for (const auto& pe : p_.projective) {
      Entry e;
      e.json["task"] = "chern-pn";
      e.json["label"] = "n=" + std::to_string(pe.n);
      e.json["n"] = pe.n;
      e.json["F1_twists"] = pe.F1.twists;
      e.json["F2_twists"] = pe.F2.twists;
      Json values = Json::object();
      std::string s = "n=" + std::to_string(pe.n) + ":";
      for (int j : pe.j_values) {
        const Rational v = flag_residue_total(pe.n, pe.F1, pe.F2, j);
        values[std::to_string(j)] = to_string(v);
        s += " j=" + std::to_string(j) + " -> " + to_string(v);
        if (auto it = pe.printed_values.find(j); it != pe.printed_values.end())
          e.checks.push_back({"n=" + std::to_string(pe.n) + ", j=" + std::to_string(j) + " matches printed value",
                              v == it->second, "computed " + to_string(v) + ", printed " + to_string(it->second)});
      }
      e.json["values"] = values;
      e.json["summary"] = s;
      out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Entry> positivity_entries() const {
    std::vector<Entry> out;
    for (const auto& pe : p_.positivity) {
      const PositivityReport r = residue_positivity_check(pe.n, pe.F, pe.F1);
      Entry e;
      e.json["task"] = "positivity";
      e.json["a"] = r.a;
      e.json["b"] = r.b;
      e.json["value"] = to_string(r.value);
      e.json["nonneg"] = r.nonneg;
      e.json["precondition_ok"] = r.precondition_ok;
      e.json["summary"] = "(a - b)^n = (" + std::to_string(r.a) + " - " + std::to_string(r.b) + ")^" +
                          std::to_string(pe.n) + " = " + to_string(r.value);
      e.json["notes"] = Json::array();
      if (!r.note.empty()) e.json["notes"].push_back(r.note);
      if (pe.printed_value) {
        const bool same = *pe.printed_value == r.value;
        e.json["notes"].push_back("printed value " + to_string(*pe.printed_value) + " vs (a - b)^n = " +
                                  to_string(r.value) +
                                  (same ? " (agree)" : ": DISCREPANCY flagged; both values reported, neither asserted"));
        e.json["discrepancy"] = !same;
      }
      e.checks.push_back({"(a - b)^n >= 0", r.nonneg, "value " + to_string(r.value)});
      e.checks.push_back({"slope(F) >= slope(F1)", r.precondition_ok,
                          "slopes " + to_string(slope(pe.F)) + " and " + to_string(slope(pe.F1))});
      out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Entry> psi_entries() const {
    std::vector<Entry> out;
    std::uint64_t seed = 0xc105ed;
    for (const auto& fe : p_.forms) {
      Entry e;
      e.json["task"] = "psi-closed";
      e.json["label"] = fe.label;
      const auto pts = sample_points(fe.theta12.nvars(), fe.samples, seed++, fe.sample_radius);
      Json defects = Json::object();
      for (unsigned j = 0; j <= fe.k1; ++j) {
        const PsiForm psi = psi_form(fe.theta12, fe.theta2, j, fe.k1);
        const double defect = closedness_defect(psi.form, pts);
        defects[std::to_string(j)] = round15(defect);
        e.checks.push_back({"psi_" + std::to_string(j) + " is closed", defect < 1e-9,
                            std::to_string(psi.form.terms().size()) + " terms, max |d psi| " + fmt(defect) +
                                " over " + std::to_string(pts.size()) + " samples"});
      }
      e.json["defects"] = defects;
      out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Entry> milnor_entries() const {
    std::vector<Entry> out;
    for (const auto& me : p_.milnor) {
      Entry e;
      e.json["task"] = "milnor";
      e.json["label"] = me.label;
      const VarList vars = make_vars(me.vars);
      QuadSettings s = settings_;
      if (!me.radii.empty() && !o_.radii) s.radii = me.radii;
      std::vector<Complex> center;
      for (const auto& q : me.point) center.emplace_back(to_double(q), 0.0);
      GermMultiplicity g;
      ResidueEstimate est;
      try {
        g = germ_multiplicity(me.generators, vars, me.point);
        est = jacobian_residue(me.generators, center, s);
      } catch (const SchemaError&) {
        throw;
      } catch (const Error& ex) {
        e.json["error"] = ex.what();
        e.error = true;
        out.push_back(std::move(e));
        continue;
      }
      if (!est.diagnostic.empty()) e.json["notes"] = Json::array({est.diagnostic});
      e.json["mu"] = g.mu;
      e.json["numeric"] = estimate_json(est);
      e.json["summary"] = "mu = " + std::to_string(g.mu);
      e.checks.push_back(
          {"local multiplicity equals the Jacobian residue",
           est.converged && est.snapped_integer && *est.snapped_integer == static_cast<long long>(g.mu) &&
               std::abs(est.value - Complex(static_cast<double>(g.mu), 0.0)) < kSnapTolerance,
           "algebraic " + std::to_string(g.mu) + ", numeric " + fmt(est.value)});
      e.converged = est.converged;
      out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<Entry> multiplicity_entries() const {
    std::vector<Entry> out;
    const VarList vars = chart().var_list();
    for (const auto& pt : p_.points) {
      if (!pt.exact) continue;
      Entry e;
      e.json["task"] = "multiplicity";
      e.json["point"] = point_json(pt);
      std::string s;
      for (const auto& [key, comps] : {std::pair{"mu(f)", &chart().X}, std::pair{"mu(g)", &chart().omega}}) {
        try {
          const auto g = germ_multiplicity(*comps, vars, *pt.exact);
          e.json[key] = g.mu;
          s += std::string(s.empty() ? "" : ", ") + key + " = " + std::to_string(g.mu);
        } catch (const AlgebraError& ex) {
          e.json[key] = nullptr;
          s += std::string(s.empty() ? "" : ", ") + key + " not finite";
        }
      }
      e.json["summary"] = s;
      out.push_back(std::move(e));
    }
    return out;
  }

  const ProblemFile& p_;
  const RunOptions& o_;
  QuadSettings settings_;
};

}  // namespace

const std::vector<std::string>& task_tags() {
  static const std::vector<std::string> tags{"check-flag", "singular-locus", "res-cn-vf",  "res-cn-form",
                                             "comparison", "res-c1n",        "binomial-identity", "prop35",
                                             "chern-pn",   "positivity",     "psi-closed", "milnor"};
  return tags;
}

double round15(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("top level must be an object");
  ProblemFile p;
  p.digest = fnv1a64(text);
  p.name = j.contains("name") ? as_string(j["name"], "name") : std::string("unnamed");
  p.description = opt_string(j, "description");

  std::vector<std::string> vars;
  if (j.contains("chart")) vars = as_vars(req(j["chart"], "vars", "chart"), "chart.vars");

  if (j.contains("foliation1") || j.contains("foliation2")) {
    if (vars.empty()) throw SchemaError("foliations need chart.vars");
    FlagChart c;
    c.vars = vars;
    c.X = as_exprs(req(req(j, "foliation1", "problem"), "vector_field", "foliation1"), vars, "foliation1.vector_field");
    c.omega = as_exprs(req(req(j, "foliation2", "problem"), "one_form", "foliation2"), vars, "foliation2.one_form");
    c.k1 = static_cast<unsigned>(vars.size() - 1);
    c.k2 = 1;
    if (j.contains("integrating_factor")) {
      const Json& f = j["integrating_factor"];
      c.integrating_factor = std::make_pair(as_expr(req(f, "f", "integrating_factor"), vars, "integrating_factor.f"),
                                            as_expr(req(f, "g", "integrating_factor"), vars, "integrating_factor.g"));
    }
    if (j.contains("theta12")) {
      const auto coeffs = as_exprs(j["theta12"], vars, "theta12");
      c.theta12 = DifferentialForm::one_form(vars.size(), coeffs);
    }
    try {
      c.validate();
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(std::string("chart: ") + e.what());
    }
    p.chart = std::move(c);
  }

  if (j.contains("points")) {
    if (vars.empty()) throw SchemaError("points need chart.vars");
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      const Json& pj = j["points"][i];
      const std::string kind = pj.contains("kind") ? as_string(pj["kind"], where + ".kind") : "exact";
      const Json& coords = req(pj, "coords", where);
      if (!coords.is_array() || coords.size() != vars.size())
        throw SchemaError(where + ": expected " + std::to_string(vars.size()) + " coordinates");
      if (kind == "exact") {
        std::vector<Rational> q;
        for (const auto& v : coords) q.push_back(as_rational(v, where));
        p.points.push_back(ChartPoint::from_exact(std::move(q)));
      } else if (kind == "approx") {
        ChartPoint cp;
        for (const auto& v : coords) cp.approx.push_back(as_complex(v, where));
        p.points.push_back(std::move(cp));
      } else {
        throw SchemaError(where + ": kind must be 'exact' or 'approx'");
      }
    }
  }

  if (j.contains("quad")) {
    const Json& q = j["quad"];
    if (q.contains("radii")) {
      if (!q["radii"].is_array()) throw SchemaError("quad.radii must be a list");
      for (const auto& r : q["radii"]) p.quad.radii.push_back(as_double(r, "quad.radii"));
    }
    if (q.contains("rel_tol")) p.quad.rel_tol = as_double(q["rel_tol"], "quad.rel_tol");
    if (q.contains("max_nodes")) {
      if (!q["max_nodes"].is_number_unsigned()) throw SchemaError("quad.max_nodes must be a positive integer");
      p.quad.max_nodes = q["max_nodes"].get<unsigned>();
    }
  }

  if (j.contains("projective")) {
    for (std::size_t i = 0; i < j["projective"].size(); ++i) {
      const std::string where = "projective[" + std::to_string(i) + "]";
      const Json& e = j["projective"][i];
      ProjectiveEntry pe;
      const Json& n = req(e, "n", where);
      if (!n.is_number_integer() || n.get<int>() < 1) throw SchemaError(where + ".n must be a positive integer");
      pe.n = n.get<int>();
      pe.F1.twists = as_twists(req(e, "F1_twists", where), where + ".F1_twists");
      pe.F2.twists = as_twists(req(e, "F2_twists", where), where + ".F2_twists");
      if (e.contains("j_values")) {
        for (const auto& v : e["j_values"]) {
          if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > pe.n - 1)
            throw SchemaError(where + ".j_values: entries must lie in [0, n-1]");
          pe.j_values.push_back(v.get<int>());
        }
      } else {
        for (int jj = 0; jj < pe.n; ++jj) pe.j_values.push_back(jj);
      }
      if (e.contains("printed_values"))
        for (const auto& [k, v] : e["printed_values"].items()) pe.printed_values[std::stoi(k)] = as_rational(v, where);
      p.projective.push_back(std::move(pe));
    }
  }

  if (j.contains("positivity")) {
    for (std::size_t i = 0; i < j["positivity"].size(); ++i) {
      const std::string where = "positivity[" + std::to_string(i) + "]";
      const Json& e = j["positivity"][i];
      PositivityEntry pe;
      pe.n = req(e, "n", where).get<int>();
      pe.F.twists = as_twists(req(e, "F_twists", where), where + ".F_twists");
      pe.F1.twists = as_twists(req(e, "F1_twists", where), where + ".F1_twists");
      if (e.contains("printed_value")) pe.printed_value = as_rational(e["printed_value"], where);
      p.positivity.push_back(std::move(pe));
    }
  }

  if (j.contains("forms")) {
    if (vars.empty()) throw SchemaError("forms need chart.vars");
    for (std::size_t i = 0; i < j["forms"].size(); ++i) {
      const std::string where = "forms[" + std::to_string(i) + "]";
      const Json& e = j["forms"][i];
      FormsEntry fe;
      fe.label = e.contains("label") ? as_string(e["label"], where) : where;
      fe.k1 = req(e, "k1", where).get<unsigned>();
      fe.k2 = req(e, "k2", where).get<unsigned>();
      if (fe.k1 + fe.k2 > vars.size()) throw SchemaError(where + ": k1 + k2 exceeds the dimension");
      fe.theta2 = DifferentialForm::one_form(vars.size(), as_exprs(req(e, "theta2", where), vars, where + ".theta2"));
      fe.theta12 =
          DifferentialForm::one_form(vars.size(), as_exprs(req(e, "theta12", where), vars, where + ".theta12"));
      if (e.contains("samples")) fe.samples = e["samples"].get<std::size_t>();
      if (e.contains("sample_radius")) fe.sample_radius = as_double(e["sample_radius"], where);
      p.forms.push_back(std::move(fe));
    }
  }

  if (j.contains("milnor")) {
    for (std::size_t i = 0; i < j["milnor"].size(); ++i) {
      const std::string where = "milnor[" + std::to_string(i) + "]";
      const Json& e = j["milnor"][i];
      MilnorEntry me;
      me.label = e.contains("label") ? as_string(e["label"], where) : where;
      me.vars = as_vars(req(e, "vars", where), where + ".vars");
      me.generators = as_exprs(req(e, "generators", where), me.vars, where + ".generators");
      if (e.contains("point")) {
        for (const auto& v : e["point"]) me.point.push_back(as_rational(v, where + ".point"));
        if (me.point.size() != me.vars.size()) throw SchemaError(where + ".point: wrong dimension");
      } else {
        me.point.assign(me.vars.size(), Rational(0));
      }
      if (e.contains("radii"))
        for (const auto& r : e["radii"]) me.radii.push_back(as_double(r, where + ".radii"));
      p.milnor.push_back(std::move(me));
    }
  }

  if (j.contains("printed_values"))
    for (const auto& [k, v] : j["printed_values"].items()) p.printed_values[k] = as_rational(v, "printed_values." + k);

  if (j.contains("tasks")) {
    for (const auto& t : j["tasks"]) {
      const std::string tag = as_string(t, "tasks");
      if (std::find(task_tags().begin(), task_tags().end(), tag) == task_tags().end())
        throw SchemaError("unknown task '" + tag + "'");
      const bool needs_chart = tag != "chern-pn" && tag != "positivity" && tag != "psi-closed" && tag != "milnor";
      if (needs_chart && !p.chart) throw SchemaError("task '" + tag + "' requires foliation1 and foliation2");
      p.tasks.push_back(tag);
    }
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::filesystem::path corpus_directory() {
  if (const char* env = std::getenv("FLAGRES_CORPUS"); env && *env) return env;
#ifdef FLAGRES_CORPUS_DIR
  return FLAGRES_CORPUS_DIR;
#else
  return "corpus";
#endif
}

std::filesystem::path resolve_problem_path(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return arg;
  const fs::path dir = corpus_directory();
  for (const fs::path& cand : {dir / arg, dir / (arg + ".json")})
    if (fs::exists(cand)) return cand;
  throw SchemaError("no such problem file or corpus entry: " + arg);
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) throw SchemaError("corpus directory not found: " + dir.string());
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

RunResult run(const ProblemFile& problem, const RunOptions& options) { return Runner(problem, options)(); }

}  // namespace flagres::cli
