#include "sgcl/modelcheck.hpp"

#include "sgcl/error.hpp"

namespace sgcl {

namespace {

// Coalition members as game agent indices.
std::vector<std::size_t> coalition_indices(const Game& g, const Coalition& c) {
  std::vector<std::size_t> out;
  for (const auto& a : c.members()) out.push_back(g.agent_index(a));
  return out;
}

// Advances a mixed-radix counter; false after the last value.
bool next_choice(std::vector<std::size_t>& digits, std::size_t radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix) return true;
    digits[k] = 0;
  }
  return false;
}

struct ProfileOutcome {
  bool ok;
  Rational min_survival;
};

// Checks conditions (a) and (b) for one coalition profile over all of its
// completions; `evaluations` counts inspected rows.
ProfileOutcome check_profile(const Game& g, std::size_t s, const std::vector<std::size_t>& members,
                             const std::vector<std::size_t>& choice, const Rational& p,
                             const std::vector<bool>& body, bool want_min, std::uint64_t& evaluations) {
  std::vector<std::optional<std::size_t>> partial(g.agents().size());
  for (std::size_t k = 0; k < members.size(); ++k) partial[members[k]] = choice[k];
  ProfileOutcome out{true, Rational(1)};
  for (std::size_t d : g.completion_indices(partial)) {
    ++evaluations;
    const Row* row = g.row(s, d);
    if (!row) throw Error(ErrorKind::InvalidGame, "missing transition row for state '" + g.states()[s] + "'");
    Rational survival;
    bool successors_ok = true;
    for (const auto& [t, prob] : *row) {
      if (g.is_failure(t)) continue;
      survival += prob;
      if (!body[t]) successors_ok = false;
    }
    if (survival < p || !successors_ok) return {false, Rational(0)};
    if (want_min && survival < out.min_survival) out.min_survival = survival;
  }
  return out;
}

}  // namespace

void CheckContext::check_agents(const Formula& f) {
  if (agents_checked_.contains(f)) return;
  for (const auto& a : agents(f)) {
    bool known = false;
    for (const auto& b : game_.agents()) known = known || a == b;
    if (!known) throw Error(ErrorKind::UnknownAgent, "formula mentions agent '" + a + "' which the game lacks");
  }
  agents_checked_.insert(f);
}

bool CheckContext::holds(std::size_t s, const Formula& f) {
  if (s >= game_.state_count()) throw Error(ErrorKind::UnknownState, "state index out of range");
  if (game_.is_failure(s)) {
    throw Error(ErrorKind::FailureState, "satisfaction is undefined at failure state '" + game_.states()[s] + "'");
  }
  return truth(f)[s];
}

bool CheckContext::holds(const StateId& s, const Formula& f) { return holds(game_.state_index(s), f); }

const std::vector<bool>& CheckContext::truth(const Formula& f) {
  check_agents(f);
  return eval(f);
}

const std::vector<bool>& CheckContext::eval(const Formula& f) {
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  const std::size_t n = game_.state_count();
  std::vector<bool> out(n, false);
  switch (f.kind()) {
    case Kind::Var:
      for (std::size_t s = 0; s < n; ++s) out[s] = !game_.is_failure(s) && game_.satisfies_var(f.name(), s);
      break;
    case Kind::Bot: break;
    case Kind::Neg: {
      const auto& a = eval(f.sub());
      for (std::size_t s = 0; s < n; ++s) out[s] = !game_.is_failure(s) && !a[s];
      break;
    }
    case Kind::Impl: {
      const auto& a = eval(f.lhs());
      const auto& b = eval(f.rhs());
      for (std::size_t s = 0; s < n; ++s) out[s] = !game_.is_failure(s) && (!a[s] || b[s]);
      break;
    }
    case Kind::Coal: {
      const auto& body = eval(f.sub());
      for (std::size_t s = 0; s < n; ++s) out[s] = !game_.is_failure(s) && coalition_can_force(s, f, body);
      break;
    }
  }
  return memo_.emplace(f, std::move(out)).first->second;
}

bool CheckContext::coalition_can_force(std::size_t s, const Formula& modality, const std::vector<bool>& body) {
  const auto members = coalition_indices(game_, modality.coalition());
  const std::size_t radix = game_.actions().size();
  if (radix == 0) return false;
  std::vector<std::size_t> choice(members.size(), 0);
  do {
    if (check_profile(game_, s, members, choice, modality.subscript(), body, false, profile_evaluations_).ok) {
      return true;
    }
  } while (next_choice(choice, radix));
  return false;
}

bool holds(const Game& g, const StateId& s, const Formula& f) {
  CheckContext ctx(g);
  return ctx.holds(s, f);
}

std::vector<StateId> extent(const Game& g, const Formula& f) {
  CheckContext ctx(g);
  const auto& mask = ctx.truth(f);
  std::vector<StateId> out;
  for (std::size_t s = 0; s < g.state_count(); ++s) {
    if (mask[s]) out.push_back(g.states()[s]);
  }
  return out;
}

std::optional<Witness> witness(const Game& g, const StateId& state, const Formula& modality) {
  if (!modality.is(Kind::Coal)) throw Error(ErrorKind::Argument, "witness needs a formula of the form [C]_p phi");
  CheckContext ctx(g);
  const std::size_t s = g.state_index(state);
  if (g.is_failure(s)) {
    throw Error(ErrorKind::FailureState, "satisfaction is undefined at failure state '" + state + "'");
  }
  const auto& body = ctx.truth(modality.sub());
  const auto members = coalition_indices(g, modality.coalition());
  const std::size_t radix = g.actions().size();
  if (radix == 0) return std::nullopt;
  std::uint64_t evaluations = 0;
  std::vector<std::size_t> choice(members.size(), 0);
  do {
    auto outcome = check_profile(g, s, members, choice, modality.subscript(), body, true, evaluations);
    if (outcome.ok) {
      Witness w;
      for (std::size_t k = 0; k < members.size(); ++k) {
        w.profile.assignment[g.agents()[members[k]]] = g.actions()[choice[k]];
      }
      w.guaranteed_survival = outcome.min_survival;
      return w;
    }
  } while (next_choice(choice, radix));
  return std::nullopt;
}

}  // namespace sgcl
