#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgcl/formula.hpp"

namespace sgcl {

// L admits the empty coalition; L+ works over formulas without it and adds
// the Monotonicity inference rule.
enum class SystemId { L, Lplus };

const char* to_string(SystemId sys) noexcept;
SystemId system_from_string(const std::string& s);  // "L" | "L+"

enum class Rule {
  Tautology,
  AxCooperation,
  AxMonotonicity,
  AxFalsehood,
  Assumption,
  TheoremImport,
  MP,
  Necessitation,
  RuleMonotonicity,
};

const char* to_string(Rule r) noexcept;

struct Derivation;

// Line references are 0-based indices into Derivation::lines.
struct Justification {
  Rule rule = Rule::Tautology;
  std::size_t i = 0;  // MP antecedent; Necessitation / RuleMonotonicity premise
  std::size_t j = 0;  // MP implication line
  std::string theorem_name;
  std::shared_ptr<const Derivation> theorem;  // TheoremImport

  static Justification of(Rule r) {
    Justification j;
    j.rule = r;
    return j;
  }
  static Justification mp(std::size_t antecedent, std::size_t implication) {
    Justification j = of(Rule::MP);
    j.i = antecedent;
    j.j = implication;
    return j;
  }
  static Justification nec(std::size_t premise) {
    Justification j = of(Rule::Necessitation);
    j.i = premise;
    return j;
  }
  static Justification mono_rule(std::size_t premise) {
    Justification j = of(Rule::RuleMonotonicity);
    j.i = premise;
    return j;
  }
  static Justification import(std::string name, std::shared_ptr<const Derivation> proof) {
    Justification j = of(Rule::TheoremImport);
    j.theorem_name = std::move(name);
    j.theorem = std::move(proof);
    return j;
  }
};

struct Line {
  Formula formula;
  Justification why;
};

// Theorem mode when `assumptions` is empty-optional: axioms and the
// system's inference rules. Assumption mode: Assumption, TheoremImport and
// Modus Ponens only.
struct Derivation {
  SystemId system = SystemId::L;
  std::optional<std::vector<Formula>> assumptions;
  std::vector<Line> lines;

  bool theorem_mode() const noexcept { return !assumptions.has_value(); }
  const Formula& conclusion() const { return lines.back().formula; }
};

struct AxiomMatch {
  Rule schema = Rule::Tautology;
  std::optional<Coalition> c1, c2;
  std::optional<Rational> p, q;
  std::optional<Formula> phi, psi;
};

// The schema `rule` (Tautology or one of the three axioms) matched exactly,
// with all side conditions checked in exact arithmetic.
std::optional<AxiomMatch> match_schema(const Formula& f, Rule rule, SystemId sys);

// First matching schema in the order Cooperation, Monotonicity, Falsehood,
// Tautology.
std::optional<AxiomMatch> match_axiom(const Formula& f, SystemId sys);

struct VerifyResult {
  bool ok = true;
  std::size_t line = 0;  // 0-based index of the first bad line when !ok
  std::string reason;
};

VerifyResult verify(const Derivation& d);

// From an assumption-mode derivation over X ∪ {phi} proving psi, builds an
// assumption-mode derivation over X proving phi -> psi. Throws Argument when
// the input does not verify or phi is not an assumption.
Derivation deduction_transform(const Derivation& d, const Formula& phi);

// One-line theorem-mode proof of a tautology.
Derivation tautology_proof(const Formula& f, SystemId sys);

// [C]_p phi -> [C]_p psi in system L from a theorem-mode proof of phi -> psi,
// via Necessitation with the empty coalition and a Cooperation instance.
Derivation build_lemma1(const Coalition& c, const Rational& p, const Formula& phi, const Formula& psi,
                        const Derivation& imp_proof, SystemId sys = SystemId::L);

// [C]_p phi -> [D]_p phi for C ⊆ D.
Derivation build_lemma4(const Coalition& c, const Coalition& d, const Rational& p, const Formula& phi,
                        SystemId sys);

// Rewrites every RuleMonotonicity line of a theorem-mode L+ proof into
// Necessitation + Cooperation + MP, giving a system-L proof.
Derivation elaborate_to_l(const Derivation& d);

// Proof file schema:
//   { "system": "L"|"L+", "mode": "theorem"|{"assumptions": [formula...]},
//     "lines": [ { "formula": str, "rule": "taut"|"coop"|"mono-ax"|"false-ax"|"assume"|
//                  "import:<name>"|"mp:i,j"|"nec:i"|"mono-rule:i" } ],
//     "theorems": { name: <proof object> } }        (optional)
// Line numbers in files are 1-based. Imports not found under "theorems" are
// loaded from <name>.json next to the file.
nlohmann::json proof_to_json(const Derivation& d);
Derivation proof_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Derivation load_proof(const std::filesystem::path& path);
void save_proof(const Derivation& d, const std::filesystem::path& path);

}  // namespace sgcl
