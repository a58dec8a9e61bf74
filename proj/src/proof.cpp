#include "sgcl/proof.hpp"

#include <algorithm>
#include <map>

#include "sgcl/error.hpp"

namespace sgcl {

const char* to_string(SystemId sys) noexcept { return sys == SystemId::L ? "L" : "L+"; }

SystemId system_from_string(const std::string& s) {
  if (s == "L") return SystemId::L;
  if (s == "L+" || s == "Lplus") return SystemId::Lplus;
  throw Error(ErrorKind::Argument, "unknown proof system '" + s + "' (expected L or L+)");
}

const char* to_string(Rule r) noexcept {
  switch (r) {
    case Rule::Tautology: return "tautology";
    case Rule::AxCooperation: return "cooperation axiom";
    case Rule::AxMonotonicity: return "monotonicity axiom";
    case Rule::AxFalsehood: return "falsehood axiom";
    case Rule::Assumption: return "assumption";
    case Rule::TheoremImport: return "theorem import";
    case Rule::MP: return "modus ponens";
    case Rule::Necessitation: return "necessitation";
    case Rule::RuleMonotonicity: return "monotonicity rule";
  }
  return "?";
}

namespace {

std::optional<AxiomMatch> match_cooperation(const Formula& f) {
  if (!f.is(Kind::Impl) || !f.rhs().is(Kind::Impl)) return std::nullopt;
  const Formula& a = f.lhs();
  const Formula& b = f.rhs().lhs();
  const Formula& c = f.rhs().rhs();
  if (!a.is(Kind::Coal) || !b.is(Kind::Coal) || !c.is(Kind::Coal)) return std::nullopt;
  if (!a.sub().is(Kind::Impl)) return std::nullopt;
  const Formula& phi = a.sub().lhs();
  const Formula& psi = a.sub().rhs();
  if (b.sub() != phi || c.sub() != psi) return std::nullopt;
  const Coalition& c1 = a.coalition();
  const Coalition& c2 = b.coalition();
  if (!c1.disjoint(c2) || c.coalition() != c1.united(c2)) return std::nullopt;
  if (c.subscript() != max(a.subscript(), b.subscript())) return std::nullopt;
  return AxiomMatch{Rule::AxCooperation, c1, c2, a.subscript(), b.subscript(), phi, psi};
}

std::optional<AxiomMatch> match_monotonicity(const Formula& f) {
  if (!f.is(Kind::Impl)) return std::nullopt;
  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  if (!a.is(Kind::Coal) || !b.is(Kind::Coal)) return std::nullopt;
  if (a.coalition() != b.coalition() || a.sub() != b.sub()) return std::nullopt;
  if (!(b.subscript() <= a.subscript())) return std::nullopt;
  return AxiomMatch{Rule::AxMonotonicity, a.coalition(), std::nullopt, a.subscript(), b.subscript(), a.sub(),
                    std::nullopt};
}

std::optional<AxiomMatch> match_falsehood(const Formula& f) {
  if (!f.is(Kind::Neg) || !f.sub().is(Kind::Coal)) return std::nullopt;
  const Formula& box = f.sub();
  if (!box.sub().is(Kind::Bot) || box.subscript().is_zero()) return std::nullopt;
  return AxiomMatch{Rule::AxFalsehood, box.coalition(), std::nullopt, box.subscript(), std::nullopt, std::nullopt,
                    std::nullopt};
}

std::string line_ref(std::size_t k) { return "line " + std::to_string(k + 1); }

// Reason the line is wrong, or empty when it checks.
std::string check_line(const Derivation& d, std::size_t k) {
  const Line& line = d.lines[k];
  const Formula& f = line.formula;
  const Justification& why = line.why;
  const bool theorem_mode = d.theorem_mode();

  if (d.system == SystemId::Lplus && !in_plus_language(f)) {
    return "formula uses the empty coalition, which L+ does not allow";
  }

  auto ref_ok = [&](std::size_t i) { return i < k; };
  auto theorem_only = [&]() -> std::string {
    return theorem_mode ? "" : std::string(to_string(why.rule)) + " is not available in assumption mode";
  };

  switch (why.rule) {
    case Rule::Tautology:
    case Rule::AxCooperation:
    case Rule::AxMonotonicity:
    case Rule::AxFalsehood: {
      if (auto e = theorem_only(); !e.empty()) return e;
      try {
        if (!match_schema(f, why.rule, d.system)) {
          return why.rule == Rule::Tautology ? "formula is not a propositional tautology"
                                             : "formula is not an instance of the " + std::string(to_string(why.rule));
        }
      } catch (const Error& e) {
        return e.what();
      }
      return {};
    }
    case Rule::Assumption: {
      if (theorem_mode) return "assumptions are not available in theorem mode";
      const auto& as = *d.assumptions;
      if (std::find(as.begin(), as.end(), f) == as.end()) return "formula is not among the assumptions";
      return {};
    }
    case Rule::TheoremImport: {
      if (theorem_mode) return "theorem imports are only available in assumption mode";
      if (!why.theorem) return "imported theorem '" + why.theorem_name + "' is missing";
      const Derivation& t = *why.theorem;
      if (!t.theorem_mode()) return "imported derivation '" + why.theorem_name + "' is not a theorem-mode proof";
      if (t.system != d.system) return "imported theorem '" + why.theorem_name + "' is proved in a different system";
      if (t.lines.empty()) return "imported theorem '" + why.theorem_name + "' has no lines";
      if (const auto r = verify(t); !r.ok) {
        return "imported theorem '" + why.theorem_name + "' fails at " + line_ref(r.line) + ": " + r.reason;
      }
      if (t.conclusion() != f) return "imported theorem '" + why.theorem_name + "' proves a different formula";
      return {};
    }
    case Rule::MP: {
      if (!ref_ok(why.i) || !ref_ok(why.j)) return "modus ponens cites a line that does not precede it";
      const Formula& imp = d.lines[why.j].formula;
      if (!imp.is(Kind::Impl)) return line_ref(why.j) + " is not an implication";
      if (imp.lhs() != d.lines[why.i].formula) return "antecedent of " + line_ref(why.j) + " differs from " + line_ref(why.i);
      if (imp.rhs() != f) return "consequent of " + line_ref(why.j) + " differs from this formula";
      return {};
    }
    case Rule::Necessitation: {
      if (auto e = theorem_only(); !e.empty()) return e;
      if (!ref_ok(why.i)) return "necessitation cites a line that does not precede it";
      if (!f.is(Kind::Coal)) return "necessitation must conclude a coalition formula";
      if (!f.subscript().is_zero()) return "necessitation must conclude a formula with subscript 0";
      if (d.system == SystemId::Lplus && f.coalition().empty()) return "necessitation in L+ needs a nonempty coalition";
      if (f.sub() != d.lines[why.i].formula) return "body differs from " + line_ref(why.i);
      return {};
    }
    case Rule::RuleMonotonicity: {
      if (d.system != SystemId::Lplus) return "the monotonicity rule belongs to L+ only";
      if (auto e = theorem_only(); !e.empty()) return e;
      if (!ref_ok(why.i)) return "monotonicity rule cites a line that does not precede it";
      const Formula& prem = d.lines[why.i].formula;
      if (!prem.is(Kind::Impl)) return line_ref(why.i) + " is not an implication";
      if (!f.is(Kind::Impl) || !f.lhs().is(Kind::Coal) || !f.rhs().is(Kind::Coal)) {
        return "monotonicity rule must conclude [C]_p phi -> [C]_p psi";
      }
      const Formula& a = f.lhs();
      const Formula& b = f.rhs();
      if (a.coalition() != b.coalition() || a.subscript() != b.subscript()) {
        return "both sides must share coalition and subscript";
      }
      if (a.sub() != prem.lhs() || b.sub() != prem.rhs()) return "bodies do not match " + line_ref(why.i);
      return {};
    }
  }
  return "unknown rule";
}

Formula imp(const Formula& a, const Formula& b) { return Formula::impl(a, b); }

Justification just(Rule r) { return Justification::of(r); }

// Builds the lines of an assumption-mode derivation, importing tautologies
// as one-line theorems shared by formula.
class Builder {
 public:
  explicit Builder(SystemId sys) : sys_(sys) {}

  std::size_t add(Formula f, Justification why) {
    lines.push_back({std::move(f), std::move(why)});
    return lines.size() - 1;
  }

  std::size_t import_tautology(const Formula& f) {
    auto it = tautologies_.find(f);
    if (it == tautologies_.end()) {
      auto proof = std::make_shared<const Derivation>(tautology_proof(f, sys_));
      it = tautologies_.emplace(f, std::make_pair("taut" + std::to_string(tautologies_.size() + 1), proof)).first;
    }
    return add(f, Justification::import(it->second.first, it->second.second));
  }

  std::vector<Line> lines;

 private:
  SystemId sys_;
  std::map<Formula, std::pair<std::string, std::shared_ptr<const Derivation>>> tautologies_;
};

}  // namespace

std::optional<AxiomMatch> match_schema(const Formula& f, Rule rule, SystemId sys) {
  if (sys == SystemId::Lplus && !in_plus_language(f)) return std::nullopt;
  switch (rule) {
    case Rule::AxCooperation: return match_cooperation(f);
    case Rule::AxMonotonicity: return match_monotonicity(f);
    case Rule::AxFalsehood: return match_falsehood(f);
    case Rule::Tautology:
      if (is_tautology(f)) return AxiomMatch{};
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::optional<AxiomMatch> match_axiom(const Formula& f, SystemId sys) {
  for (Rule r : {Rule::AxCooperation, Rule::AxMonotonicity, Rule::AxFalsehood, Rule::Tautology}) {
    if (auto m = match_schema(f, r, sys)) return m;
  }
  return std::nullopt;
}

VerifyResult verify(const Derivation& d) {
  if (d.lines.empty()) return {false, 0, "derivation has no lines"};
  if (d.system == SystemId::Lplus && d.assumptions) {
    for (const auto& a : *d.assumptions) {
      if (!in_plus_language(a)) return {false, 0, "assumption " + render(a) + " uses the empty coalition"};
    }
  }
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    if (auto reason = check_line(d, k); !reason.empty()) return {false, k, std::move(reason)};
  }
  return {};
}

Derivation tautology_proof(const Formula& f, SystemId sys) {
  Derivation d;
  d.system = sys;
  d.lines.push_back({f, just(Rule::Tautology)});
  return d;
}

Derivation deduction_transform(const Derivation& d, const Formula& phi) {
  if (d.theorem_mode()) throw Error(ErrorKind::Argument, "deduction transform needs an assumption-mode derivation");
  const auto& as = *d.assumptions;
  if (std::find(as.begin(), as.end(), phi) == as.end()) {
    throw Error(ErrorKind::Argument, render(phi) + " is not an assumption of the derivation");
  }
  if (const auto r = verify(d); !r.ok) {
    throw Error(ErrorKind::Argument, "input derivation fails at " + line_ref(r.line) + ": " + r.reason);
  }

  Builder b(d.system);
  std::vector<std::size_t> target(d.lines.size());  // old line -> new line proving phi -> psi_k
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    const Formula& psi = d.lines[k].formula;
    const Justification& why = d.lines[k].why;
    const Formula goal = imp(phi, psi);
    if (why.rule == Rule::Assumption && psi == phi) {
      target[k] = b.import_tautology(goal);
    } else if (why.rule == Rule::Assumption || why.rule == Rule::TheoremImport) {
      const std::size_t have = b.add(psi, why);
      const std::size_t weaken = b.import_tautology(imp(psi, goal));
      target[k] = b.add(goal, Justification::mp(have, weaken));
    } else if (why.rule == Rule::MP) {
      const Formula& psi_i = d.lines[why.i].formula;
      const Formula dist = imp(imp(phi, imp(psi_i, psi)), imp(imp(phi, psi_i), goal));
      const std::size_t t = b.import_tautology(dist);
      const std::size_t mid = b.add(imp(imp(phi, psi_i), goal), Justification::mp(target[why.j], t));
      target[k] = b.add(goal, Justification::mp(target[why.i], mid));
    } else {
      throw Error(ErrorKind::Argument, "unexpected rule in assumption mode");
    }
  }

  Derivation out;
  out.system = d.system;
  std::vector<Formula> rest;
  for (const auto& a : as) {
    if (a != phi) rest.push_back(a);
  }
  out.assumptions = std::move(rest);
  out.lines = std::move(b.lines);
  return out;
}

Derivation build_lemma1(const Coalition& c, const Rational& p, const Formula& phi, const Formula& psi,
                        const Derivation& imp_proof, SystemId sys) {
  if (sys != SystemId::L) {
    throw Error(ErrorKind::Argument, "this construction needs the empty coalition and is only available in L");
  }
  if (!imp_proof.theorem_mode() || imp_proof.system != SystemId::L) {
    throw Error(ErrorKind::Argument, "the premise must be a theorem-mode proof in L");
  }
  if (const auto r = verify(imp_proof); !r.ok) {
    throw Error(ErrorKind::Argument, "premise proof fails at " + line_ref(r.line) + ": " + r.reason);
  }
  const Formula premise = imp(phi, psi);
  if (imp_proof.conclusion() != premise) {
    throw Error(ErrorKind::Argument, "premise proof does not conclude " + render(premise));
  }
  Derivation d = imp_proof;
  const std::size_t last = d.lines.size() - 1;
  const Formula boxed = Formula::coal(Coalition{}, Rational(0), premise);
  const Formula goal = imp(Formula::coal(c, p, phi), Formula::coal(c, p, psi));
  d.lines.push_back({boxed, Justification::nec(last)});
  d.lines.push_back({imp(boxed, goal), just(Rule::AxCooperation)});
  d.lines.push_back({goal, Justification::mp(last + 1, last + 2)});
  return d;
}

Derivation build_lemma4(const Coalition& c, const Coalition& dc, const Rational& p, const Formula& phi,
                        SystemId sys) {
  if (!c.subset_of(dc)) throw Error(ErrorKind::Argument, "the first coalition must be a subset of the second");
  const Formula goal = imp(Formula::coal(c, p, phi), Formula::coal(dc, p, phi));
  if (sys == SystemId::Lplus && !in_plus_language(goal)) {
    throw Error(ErrorKind::Argument, "L+ does not allow the empty coalition");
  }
  Derivation d;
  d.system = sys;
  if (c == dc) {
    d.lines.push_back({goal, just(Rule::Tautology)});
    return d;
  }
  const Coalition extra = dc.minus(c);
  const Formula refl = imp(phi, phi);
  const Formula boxed = Formula::coal(extra, Rational(0), refl);
  d.lines.push_back({refl, just(Rule::Tautology)});
  d.lines.push_back({boxed, Justification::nec(0)});
  d.lines.push_back({imp(boxed, goal), just(Rule::AxCooperation)});
  d.lines.push_back({goal, Justification::mp(1, 2)});
  return d;
}

Derivation elaborate_to_l(const Derivation& d) {
  if (!d.theorem_mode()) throw Error(ErrorKind::Argument, "elaboration needs a theorem-mode proof");
  Derivation out;
  out.system = SystemId::L;
  std::vector<std::size_t> map(d.lines.size());
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    Line line = d.lines[k];
    auto remap = [&](std::size_t i) {
      if (i >= k) throw Error(ErrorKind::Argument, line_ref(k) + " cites a line that does not precede it");
      return map[i];
    };
    if (line.why.rule == Rule::RuleMonotonicity) {
      const std::size_t prem = remap(line.why.i);
      const Formula boxed = Formula::coal(Coalition{}, Rational(0), out.lines[prem].formula);
      const std::size_t n = out.lines.size();
      out.lines.push_back({boxed, Justification::nec(prem)});
      out.lines.push_back({imp(boxed, line.formula), just(Rule::AxCooperation)});
      out.lines.push_back({line.formula, Justification::mp(n, n + 1)});
    } else {
      if (line.why.rule == Rule::MP) {
        line.why.i = remap(line.why.i);
        line.why.j = remap(line.why.j);
      } else if (line.why.rule == Rule::Necessitation) {
        line.why.i = remap(line.why.i);
      }
      out.lines.push_back(std::move(line));
    }
    map[k] = out.lines.size() - 1;
  }
  return out;
}

}  // namespace sgcl
