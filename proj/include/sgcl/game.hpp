#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgcl/formula.hpp"
#include "sgcl/rational.hpp"

namespace sgcl {

using StateId = std::string;
using ActionId = std::string;

// Actions for some coalition (partial over the game's agents).
struct ActionProfile {
  std::map<AgentId, ActionId> assignment;
  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
};

// Actions for every agent of the game.
struct CompleteProfile {
  std::map<AgentId, ActionId> assignment;
  friend bool operator==(const CompleteProfile&, const CompleteProfile&) = default;
};

// Sparse transition row: (target state index, probability), sorted by target,
// zero entries omitted.
using Row = std::vector<std::pair<std::size_t, Rational>>;

// A stochastic game with failure states. The object may hold an invalid game
// (row sums off, failures outside states, ...); `validate` reports that.
class Game {
 public:
  Game() = default;
  Game(std::vector<AgentId> agents, std::vector<StateId> states, std::set<StateId> failures,
       std::vector<ActionId> actions);

  const std::vector<AgentId>& agents() const noexcept { return agents_; }
  const std::vector<StateId>& states() const noexcept { return states_; }
  const std::set<StateId>& failures() const noexcept { return failures_; }
  const std::vector<ActionId>& actions() const noexcept { return actions_; }
  const std::map<std::string, std::set<StateId>>& valuation() const noexcept { return valuation_; }

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t state_index(const StateId& s) const;  // throws UnknownState
  std::optional<std::size_t> find_state(const StateId& s) const;
  bool is_failure(std::size_t s) const { return failure_mask_.at(s); }
  std::vector<std::size_t> nonfailure_states() const;

  std::size_t agent_index(const AgentId& a) const;   // throws UnknownAgent
  std::size_t action_index(const ActionId& d) const; // throws BadProfile

  // |D|^|A|; profile indices enumerate D^A with the last agent varying fastest.
  std::size_t profile_count() const noexcept { return profile_count_; }
  std::size_t profile_index(const CompleteProfile& d) const;  // throws BadProfile
  std::size_t profile_index(const std::vector<std::size_t>& actions_per_agent) const;
  std::vector<std::size_t> profile_actions(std::size_t index) const;
  CompleteProfile profile_at(std::size_t index) const;

  // Indices of all complete profiles extending a partial assignment
  // (nullopt = free), in profile order.
  std::vector<std::size_t> completion_indices(const std::vector<std::optional<std::size_t>>& partial) const;

  void set_row(std::size_t s, std::size_t profile, Row row);
  void set_row(const StateId& s, const CompleteProfile& d, const std::map<StateId, Rational>& to);
  // nullptr when the row was never set.
  const Row* row(std::size_t s, std::size_t profile) const;

  void set_valuation(const std::string& var, std::set<StateId> states);
  // False for variables outside the valuation.
  bool satisfies_var(const std::string& var, std::size_t s) const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  void reindex();

  std::vector<AgentId> agents_;
  std::vector<StateId> states_;
  std::set<StateId> failures_;
  std::vector<ActionId> actions_;
  std::map<std::string, std::set<StateId>> valuation_;

  std::map<StateId, std::size_t> state_pos_;
  std::map<AgentId, std::size_t> agent_pos_;
  std::map<ActionId, std::size_t> action_pos_;
  std::vector<bool> failure_mask_;
  std::map<std::string, std::vector<bool>> var_mask_;
  std::size_t profile_count_ = 0;
  std::vector<std::optional<Row>> rows_;
};

struct Violation {
  std::string kind;  // row-sum, probability-range, missing-row, failure-not-a-state,
                     // empty-actions, valuation-target, duplicate-id
  std::string message;
  std::optional<StateId> state;
  std::optional<CompleteProfile> profile;
};

std::vector<Violation> validate(const Game& g);

// Sum of P(s, d, t) over non-failure t.
Rational survival_probability(const Game& g, const StateId& s, const CompleteProfile& d);
Rational survival_probability(const Game& g, std::size_t s, std::size_t profile);

// { t not a failure : P(s, d, t) > 0 }.
std::set<StateId> positive_nonfailure_successors(const Game& g, const StateId& s, const CompleteProfile& d);

// All complete profiles extending d, in profile order.
std::vector<CompleteProfile> completions(const Game& g, const ActionProfile& d);

// Three states s, t, f with one action: s goes to t with 1 - 10^{-n} and to f
// with 10^{-n}; t and f loop.
Game fig3_game(int n);

}  // namespace sgcl
