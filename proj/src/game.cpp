#include "sgcl/game.hpp"

#include <algorithm>

#include "sgcl/error.hpp"

namespace sgcl {

namespace {

constexpr std::size_t kMaxProfiles = std::size_t{1} << 26;

}  // namespace

Game::Game(std::vector<AgentId> agents, std::vector<StateId> states, std::set<StateId> failures,
           std::vector<ActionId> actions)
    : agents_(std::move(agents)),
      states_(std::move(states)),
      failures_(std::move(failures)),
      actions_(std::move(actions)) {
  reindex();
}

void Game::reindex() {
  state_pos_.clear();
  agent_pos_.clear();
  action_pos_.clear();
  for (std::size_t i = 0; i < states_.size(); ++i) state_pos_.emplace(states_[i], i);
  for (std::size_t i = 0; i < agents_.size(); ++i) agent_pos_.emplace(agents_[i], i);
  for (std::size_t i = 0; i < actions_.size(); ++i) action_pos_.emplace(actions_[i], i);

  failure_mask_.assign(states_.size(), false);
  for (const auto& f : failures_) {
    if (auto it = state_pos_.find(f); it != state_pos_.end()) failure_mask_[it->second] = true;
  }

  profile_count_ = actions_.empty() && !agents_.empty() ? 0 : 1;
  for (std::size_t i = 0; i < agents_.size() && profile_count_ > 0; ++i) {
    profile_count_ *= actions_.size();
    if (profile_count_ > kMaxProfiles) {
      throw Error(ErrorKind::Limit, "game has more than 2^26 complete action profiles");
    }
  }
  rows_.assign(states_.size() * profile_count_, std::nullopt);
}

std::size_t Game::state_index(const StateId& s) const {
  auto it = state_pos_.find(s);
  if (it == state_pos_.end()) throw Error(ErrorKind::UnknownState, "unknown state '" + s + "'");
  return it->second;
}

std::optional<std::size_t> Game::find_state(const StateId& s) const {
  auto it = state_pos_.find(s);
  if (it == state_pos_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Game::nonfailure_states() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!failure_mask_[i]) out.push_back(i);
  }
  return out;
}

std::size_t Game::agent_index(const AgentId& a) const {
  auto it = agent_pos_.find(a);
  if (it == agent_pos_.end()) throw Error(ErrorKind::UnknownAgent, "unknown agent '" + a + "'");
  return it->second;
}

std::size_t Game::action_index(const ActionId& d) const {
  auto it = action_pos_.find(d);
  if (it == action_pos_.end()) throw Error(ErrorKind::BadProfile, "unknown action '" + d + "'");
  return it->second;
}

std::size_t Game::profile_index(const CompleteProfile& d) const {
  if (d.assignment.size() != agents_.size()) {
    throw Error(ErrorKind::BadProfile, "profile is not total over the agents");
  }
  std::vector<std::size_t> acts(agents_.size());
  for (const auto& [agent, action] : d.assignment) {
    auto it = agent_pos_.find(agent);
    if (it == agent_pos_.end()) throw Error(ErrorKind::BadProfile, "profile names unknown agent '" + agent + "'");
    acts[it->second] = action_index(action);
  }
  return profile_index(acts);
}

std::size_t Game::profile_index(const std::vector<std::size_t>& actions_per_agent) const {
  std::size_t idx = 0;
  for (std::size_t a : actions_per_agent) idx = idx * actions_.size() + a;
  return idx;
}

std::vector<std::size_t> Game::profile_actions(std::size_t index) const {
  std::vector<std::size_t> acts(agents_.size());
  for (std::size_t i = agents_.size(); i-- > 0;) {
    acts[i] = index % actions_.size();
    index /= actions_.size();
  }
  return acts;
}

CompleteProfile Game::profile_at(std::size_t index) const {
  CompleteProfile out;
  const auto acts = profile_actions(index);
  for (std::size_t i = 0; i < agents_.size(); ++i) out.assignment[agents_[i]] = actions_[acts[i]];
  return out;
}

std::vector<std::size_t> Game::completion_indices(const std::vector<std::optional<std::size_t>>& partial) const {
  std::vector<std::size_t> free;
  std::size_t base = 0;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    base *= actions_.size();
    if (partial[i]) base += *partial[i];
    else free.push_back(i);
  }
  std::vector<std::size_t> weight(agents_.size(), 1);
  for (std::size_t i = agents_.size(); i-- > 1;) weight[i - 1] = weight[i] * actions_.size();

  std::size_t n = 1;
  for (std::size_t k = 0; k < free.size(); ++k) n *= actions_.size();
  std::vector<std::size_t> out;
  out.reserve(n);
  std::vector<std::size_t> digit(free.size(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t idx = base;
    for (std::size_t k = 0; k < free.size(); ++k) idx += digit[k] * weight[free[k]];
    out.push_back(idx);
    for (std::size_t k = free.size(); k-- > 0;) {
      if (++digit[k] < actions_.size()) break;
      digit[k] = 0;
    }
  }
  return out;
}

void Game::set_row(std::size_t s, std::size_t profile, Row row) {
  if (s >= states_.size()) throw Error(ErrorKind::UnknownState, "state index out of range");
  if (profile >= profile_count_) throw Error(ErrorKind::BadProfile, "profile index out of range");
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Row merged;
  for (auto& [t, p] : row) {
    if (t >= states_.size()) throw Error(ErrorKind::UnknownState, "target index out of range");
    if (!merged.empty() && merged.back().first == t) merged.back().second += p;
    else merged.emplace_back(t, p);
  }
  std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
  rows_[s * profile_count_ + profile] = std::move(merged);
}

void Game::set_row(const StateId& s, const CompleteProfile& d, const std::map<StateId, Rational>& to) {
  Row row;
  for (const auto& [t, p] : to) row.emplace_back(state_index(t), p);
  set_row(state_index(s), profile_index(d), std::move(row));
}

const Row* Game::row(std::size_t s, std::size_t profile) const {
  const auto& r = rows_.at(s * profile_count_ + profile);
  return r ? &*r : nullptr;
}

void Game::set_valuation(const std::string& var, std::set<StateId> states) {
  std::vector<bool> mask(states_.size(), false);
  for (const auto& s : states) {
    if (auto it = state_pos_.find(s); it != state_pos_.end()) mask[it->second] = true;
  }
  var_mask_[var] = std::move(mask);
  valuation_[var] = std::move(states);
}

bool Game::satisfies_var(const std::string& var, std::size_t s) const {
  auto it = var_mask_.find(var);
  return it != var_mask_.end() && it->second[s];
}

bool operator==(const Game& a, const Game& b) {
  return a.agents_ == b.agents_ && a.states_ == b.states_ && a.failures_ == b.failures_ &&
         a.actions_ == b.actions_ && a.valuation_ == b.valuation_ && a.rows_ == b.rows_;
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const Game& g) {
  std::vector<Violation> out;
  auto check_unique = [&](const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        out.push_back({"duplicate-id", std::string("duplicate ") + what + " '" + id + "'", std::nullopt, std::nullopt});
      }
    }
  };
  check_unique(g.agents(), "agent");
  check_unique(g.states(), "state");
  check_unique(g.actions(), "action");

  for (const auto& f : g.failures()) {
    if (!g.find_state(f)) {
      out.push_back({"failure-not-a-state", "failure '" + f + "' is not a state", f, std::nullopt});
    }
  }
  if (g.actions().empty()) out.push_back({"empty-actions", "action domain is empty", std::nullopt, std::nullopt});
  for (const auto& [var, states] : g.valuation()) {
    for (const auto& s : states) {
      if (!g.find_state(s)) {
        out.push_back({"valuation-target", "valuation of '" + var + "' names unknown state '" + s + "'", s,
                       std::nullopt});
      }
    }
  }

  for (std::size_t s = 0; s < g.state_count(); ++s) {
    for (std::size_t d = 0; d < g.profile_count(); ++d) {
      const Row* row = g.row(s, d);
      if (!row) {
        out.push_back({"missing-row", "no transition row for state '" + g.states()[s] + "'", g.states()[s],
                       g.profile_at(d)});
        continue;
      }
      Rational sum;
      for (const auto& [t, p] : *row) {
        if (!p.in_unit_interval()) {
          out.push_back({"probability-range",
                         "P(" + g.states()[s] + ", ., " + g.states()[t] + ") = " + p.str() + " outside [0,1]",
                         g.states()[s], g.profile_at(d)});
        }
        sum += p;
      }
      if (sum != Rational(1)) {
        out.push_back({"row-sum", "row of state '" + g.states()[s] + "' sums to " + sum.str(), g.states()[s],
                       g.profile_at(d)});
      }
    }
  }
  return out;
}

Rational survival_probability(const Game& g, std::size_t s, std::size_t profile) {
  const Row* row = g.row(s, profile);
  if (!row) throw Error(ErrorKind::InvalidGame, "missing transition row for state '" + g.states().at(s) + "'");
  Rational sum;
  for (const auto& [t, p] : *row) {
    if (!g.is_failure(t)) sum += p;
  }
  return sum;
}

Rational survival_probability(const Game& g, const StateId& s, const CompleteProfile& d) {
  return survival_probability(g, g.state_index(s), g.profile_index(d));
}

std::set<StateId> positive_nonfailure_successors(const Game& g, const StateId& s, const CompleteProfile& d) {
  const std::size_t si = g.state_index(s);
  const Row* row = g.row(si, g.profile_index(d));
  if (!row) throw Error(ErrorKind::InvalidGame, "missing transition row for state '" + s + "'");
  std::set<StateId> out;
  for (const auto& [t, p] : *row) {
    if (!g.is_failure(t) && p > Rational(0)) out.insert(g.states()[t]);
  }
  return out;
}

std::vector<CompleteProfile> completions(const Game& g, const ActionProfile& d) {
  std::vector<std::optional<std::size_t>> partial(g.agents().size());
  for (const auto& [agent, action] : d.assignment) partial[g.agent_index(agent)] = g.action_index(action);
  std::vector<CompleteProfile> out;
  for (std::size_t idx : g.completion_indices(partial)) out.push_back(g.profile_at(idx));
  return out;
}

Game fig3_game(int n) {
  if (n < 0) throw Error(ErrorKind::Argument, "N must be non-negative");
  Game g({"a"}, {"s", "t", "f"}, {"f"}, {"wait"});
  const Rational lost = Rational::pow10_neg(n);
  g.set_row(0, 0, {{1, Rational(1) - lost}, {2, lost}});
  g.set_row(1, 0, {{1, Rational(1)}});
  g.set_row(2, 0, {{2, Rational(1)}});
  return g;
}

}  // namespace sgcl
