#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgcl/formula.hpp"
#include "sgcl/game.hpp"
#include "sgcl/proof.hpp"

namespace sgcl {

enum class Judgement { Consistent, Inconsistent, Unknown };

const char* to_string(Judgement j) noexcept;

// Decides (soundly, not necessarily completely) whether a finite formula set
// is consistent. Inconsistent must only be returned for sets that no state
// of any finite stochastic game satisfies; enumeration relies on this to
// prune partial sets. Implementations must be safe to call concurrently.
class ConsistencyOracle {
 public:
  virtual ~ConsistencyOracle() = default;
  virtual Judgement judge(std::span<const Formula> members) const = 0;
  virtual std::string name() const = 0;
};

// Clash checks over the members: propositional consistency of the
// abstraction; [C]_p phi with p > 0 and phi unsatisfiable; ~[D]_0 psi with
// psi valid; [C]_p phi against ~[D]_q psi whenever C ⊆ D, q <= p and
// phi -> psi is valid (covers the Monotonicity axiom, superset closure and
// closure under consequence); and the Cooperation pattern: [C1]_p phi1,
// [C2]_q phi2 with disjoint C1, C2 against ~[D]_r psi with C1 ∪ C2 ⊆ D,
// r <= max(p, q) and phi1 & phi2 -> psi valid (or against nothing when
// max(p, q) > 0 and phi1 & phi2 is unsatisfiable). "Valid" and
// "unsatisfiable" are decided by running the same checks over every
// propositional model of the body, so they see through nested modalities.
std::shared_ptr<const ConsistencyOracle> default_oracle(SystemId sys);

// Only the propositional check; weaker than the default.
std::shared_ptr<const ConsistencyOracle> propositional_oracle();

struct MaximalSet {
  std::vector<Formula> members;  // canonical order
  bool unknown = false;          // oracle answered Unknown at the leaf

  bool contains(const Formula& f) const;
  // Canonical sorted rendering, used as the set's identity.
  std::string key() const;
};

inline constexpr std::size_t kDefaultClosureCap = 24;

// Backtracks over the sign of every non-negation formula of sigma in
// canonical order: implications and false are determined by their parts,
// variables and coalition formulas are free. Partial sets the oracle
// rejects are pruned. Throws Limit when |sigma| exceeds the cap.
std::vector<MaximalSet> enumerate_maximal_sets(const ClosureSet& sigma, const ConsistencyOracle& oracle,
                                               std::size_t cap = kDefaultClosureCap);

struct CanonicalAction {
  Formula formula;
  Rational value;  // may be negative or above 1

  std::string name() const;  // "(phi,p)"
  friend bool operator==(const CanonicalAction&, const CanonicalAction&) = default;
};

// (sigma ∪ {true}) × (subscripts of sigma ∪ {0, -1}), formulas in canonical
// order then values ascending.
std::vector<CanonicalAction> action_domain(const ClosureSet& sigma);

using CanonicalProfile = std::map<AgentId, CanonicalAction>;

// max{p | [C]_p phi in s and every a in C plays (phi, p)}, 0 when none match.
Rational mu(const MaximalSet& s, const CanonicalProfile& d);

// The formulas requested by matching coalitions.
std::vector<Formula> requested(const MaximalSet& s, const CanonicalProfile& d);

// Sets containing every requested formula.
std::vector<std::size_t> targets(const MaximalSet& s, const CanonicalProfile& d, std::span<const MaximalSet> all);

// P(s, d, s') from mu and |T|. `to_failure` selects s' = f; `from_failure`
// selects s = f. With T empty and mu > 0 all mass goes to f.
Rational canonical_probability(bool from_failure, bool to_failure, bool in_targets, const Rational& mu_val,
                               std::size_t target_count);

struct GuardHit {
  StateId state;
  CompleteProfile profile;
  Rational mu;
};

struct CanonicalDiagnostics {
  std::size_t states = 0;   // non-failure
  std::size_t actions = 0;
  std::size_t profiles = 0;
  std::size_t unknown_sets = 0;
  bool no_maximal_sets = false;
  std::vector<GuardHit> guards;  // T empty, mu > 0
};

struct CanonicalOptions {
  std::size_t max_closure = kDefaultClosureCap;
  // Agents of the game; defaults to the agents mentioned in sigma.
  std::optional<std::vector<AgentId>> agents;
  // Upper bound on states × profiles.
  std::size_t max_table = 20'000'000;
  // When mu is 0 but targets exist, give the targets a small positive total
  // mass (half the least positive subscript of sigma, or 1/2) instead of
  // nothing. Without it [C]_0 phi holds wherever the coalition can force
  // mu = 0, so the truth lemma fails for subscript-0 formulas. Off by
  // default: it trades the survival <= mu bound for that case.
  bool zero_mu_floor = false;
};

struct CanonicalGame {
  Game game;  // states "s0".."s{n-1}" then the failure state "f"
  ClosureSet sigma;
  std::vector<MaximalSet> sets;  // sets[i] is state i
  std::vector<CanonicalAction> actions;
  CanonicalDiagnostics diagnostics;
  std::optional<Rational> floor;  // set when zero_mu_floor was requested
};

inline constexpr const char* kCanonicalFailure = "f";

CanonicalGame build_canonical_game(const ClosureSet& sigma, SystemId sys, const ConsistencyOracle& oracle,
                                   const CanonicalOptions& options = {});

// mu for state index s and profile index d of a built game.
Rational canonical_mu(const CanonicalGame& cg, std::size_t s, std::size_t d);

struct TruthDisagreement {
  StateId state;
  Formula formula;
  bool member = false;
  bool holds = false;
};

// Membership against model checking for every set and every formula of sigma.
std::vector<TruthDisagreement> audit_truth_lemma(const CanonicalGame& cg);

struct StructureAudit {
  std::size_t validate_violations = 0;
  std::size_t bound_violations = 0;       // survival mass above mu (or the floor when mu is 0)
  std::size_t mu_range_violations = 0;    // mu outside [0, 1]
  std::size_t uniformity_violations = 0;  // unequal mass over non-failure successors
  std::size_t rows_checked = 0;
};

StructureAudit audit_structure(const CanonicalGame& cg);

// { state name: [member formulas] }.
nlohmann::json canonical_sidecar(const CanonicalGame& cg);
nlohmann::json diagnostics_to_json(const CanonicalDiagnostics& d);

}  // namespace sgcl
