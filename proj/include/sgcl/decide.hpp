#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgcl/canonical.hpp"
#include "sgcl/formula.hpp"
#include "sgcl/game.hpp"
#include "sgcl/proof.hpp"

namespace sgcl {

struct SearchBounds {
  std::size_t max_states = 3;  // failure states included
  std::size_t max_actions = 2;
  std::vector<AgentId> agents;  // agents of the formula are always added
  std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  std::size_t budget = 2000;  // candidate games
  std::uint64_t seed = 0;
  unsigned jobs = 1;  // 0 = hardware concurrency
};

// Throws Argument unless the grid holds 0 and 1 within [0, 1], the budget is
// positive and at least one state and one action are allowed.
void check_bounds(const SearchBounds& b);

// Candidate `index` of the seeded stream: states "q0".. (q0 never fails),
// actions "d0".., rows drawn from the grid with the last successor taking the
// residual (rows with a residual outside [0, 1] are redrawn), and each
// variable true at each non-failure state with probability 1/2. Depends only
// on (bounds, index, vars), never on thread scheduling.
Game sample_game(const SearchBounds& b, std::uint64_t index, const std::set<std::string>& vars);

// True when g validates and phi fails at s after a JSON round trip of g,
// checked with a fresh evaluator.
bool reverify_countermodel(const Game& g, const StateId& s, const Formula& phi);

enum class VerdictKind { Refuted, ValidRelativeToOracle, Exhausted };

const char* to_string(VerdictKind k) noexcept;

struct Verdict {
  VerdictKind kind = VerdictKind::Exhausted;
  std::string method;  // "canonical" or "bounded"
  std::optional<Game> game;
  std::optional<StateId> state;
  std::size_t closure_size = 0;
  std::size_t state_count = 0;
  std::size_t candidates = 0;
  std::uint64_t profile_evaluations = 0;
  std::optional<std::uint64_t> seed;
  double elapsed_ms = 0;
};

struct ClassifyOptions {
  std::size_t max_closure = kDefaultClosureCap;
  std::size_t max_table = 20'000'000;
  // See CanonicalOptions::zero_mu_floor. Without it every [C]_0 phi is
  // reported valid.
  bool zero_mu_floor = true;
};

// Builds the canonical game of closure({~phi}) and checks phi at every state
// containing ~phi. Refuted verdicts are re-verified; otherwise the verdict is
// ValidRelativeToOracle. Throws Limit above the closure cap.
Verdict classify(const Formula& phi, SystemId sys, const ConsistencyOracle& oracle, const ClassifyOptions& options = {});

struct Countermodel {
  Game game;
  StateId state;
  std::uint64_t index = 0;       // candidate index in the seeded stream
  std::size_t candidates = 0;    // candidates evaluated across workers
};

// Lowest-index candidate (within the budget) with a non-failure state where
// phi fails. Workers share the index stream; the answer does not depend on
// the worker count.
std::optional<Countermodel> bounded_countermodel(const Formula& phi, const SearchBounds& b);

// Same search wrapped as a verdict (Refuted or Exhausted).
Verdict bounded_verdict(const Formula& phi, const SearchBounds& b);

nlohmann::json verdict_to_json(const Verdict& v, const Formula& phi);

struct DemoReport {
  struct Prefix {
    int n = 0;
    Formula formula = Formula::top();
    bool holds = false;
  };
  int n = 0;
  Game game;
  std::vector<Prefix> prefix;  // [](1 - 10^-k) true at s, k = 0..n
  Formula limit = Formula::top();  // []_1 true
  bool limit_holds_s = true;
  bool limit_holds_t = false;
  bool ok = false;
};

// The three-state game with loss 10^-n at s: every prefix formula holds at s,
// the limit formula fails at s and holds at t. 0 <= n <= 12.
DemoReport incompleteness_demo(int n);

nlohmann::json demo_to_json(const DemoReport& r);

}  // namespace sgcl
