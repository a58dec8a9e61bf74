#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sgcl/formula.hpp"
#include "sgcl/game.hpp"

namespace sgcl {

// Memoized evaluator over one game. Each subformula's truth set is computed
// once over all non-failure states, children first.
//
// Not thread-safe; use one context per thread over the same immutable Game.
class CheckContext {
 public:
  explicit CheckContext(const Game& g) : game_(g) {}

  const Game& game() const noexcept { return game_; }

  // Throws FailureState for s in F, UnknownAgent for agents outside the game.
  bool holds(std::size_t s, const Formula& f);
  bool holds(const StateId& s, const Formula& f);

  // Truth mask indexed by state; failure states are always false.
  const std::vector<bool>& truth(const Formula& f);

  // Number of complete-profile row inspections performed so far.
  std::uint64_t profile_evaluations() const noexcept { return profile_evaluations_; }

 private:
  void check_agents(const Formula& f);
  const std::vector<bool>& eval(const Formula& f);
  bool coalition_can_force(std::size_t s, const Formula& modality, const std::vector<bool>& body);

  const Game& game_;
  std::unordered_map<Formula, std::vector<bool>> memo_;
  std::unordered_set<Formula> agents_checked_;
  std::uint64_t profile_evaluations_ = 0;
};

bool holds(const Game& g, const StateId& s, const Formula& f);

// Non-failure states satisfying f, in state order.
std::vector<StateId> extent(const Game& g, const Formula& f);

struct Witness {
  ActionProfile profile;         // over the modality's coalition
  Rational guaranteed_survival;  // min survival over all completions
};

// First coalition profile (in enumeration order) meeting both conditions of
// the modality, or nullopt. Throws Argument unless f is a Coal formula.
std::optional<Witness> witness(const Game& g, const StateId& s, const Formula& modality);

struct AxiomViolation {
  std::string schema;  // cooperation | monotonicity | falsehood | necessitation
  Formula instance;
  StateId state;
};

struct SoundnessReport {
  std::size_t instances = 0;
  std::size_t evaluations = 0;
  std::size_t necessitation_checks = 0;
  std::vector<AxiomViolation> violations;
};

// Instantiates the Cooperation, Monotonicity and Falsehood schemas over the
// pool, the game's coalitions, and a subscript grid ({0,1/4,1/2,3/4,1} plus
// the game's own survival values), evaluates every instance at every
// non-failure state, and checks that [C]_0 phi is valid on g whenever phi is.
// Enumerates exhaustively when the instance space fits the budget, otherwise
// samples `sample_budget` instances with the given seed.
SoundnessReport audit_axiom_soundness(const Game& g, std::span<const Formula> pool, std::size_t sample_budget,
                                      std::uint64_t seed = 0);

}  // namespace sgcl
