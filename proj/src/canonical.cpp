#include "sgcl/canonical.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <unordered_map>

#include "sgcl/error.hpp"
#include "sgcl/modelcheck.hpp"

namespace sgcl {

const char* to_string(Judgement j) noexcept {
  switch (j) {
    case Judgement::Consistent: return "consistent";
    case Judgement::Inconsistent: return "inconsistent";
    case Judgement::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Formula conj(const Formula& a, const Formula& b) { return Formula::neg(Formula::impl(a, Formula::neg(b))); }

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Kind::Bot: return;
    case Kind::Neg: collect_atoms(f.sub(), out); return;
    case Kind::Impl:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
    default: out.push_back(f);
  }
}

bool eval_with(const Formula& f, const std::unordered_map<Formula, bool>& atoms) {
  switch (f.kind()) {
    case Kind::Bot: return false;
    case Kind::Neg: return !eval_with(f.sub(), atoms);
    case Kind::Impl: return !eval_with(f.lhs(), atoms) || eval_with(f.rhs(), atoms);
    default: return atoms.at(f);
  }
}

// Propositional consistency. When every atom is fixed by a literal member
// the check is a single evaluation; otherwise a truth table.
Judgement propositional(std::span<const Formula> members) {
  std::unordered_map<Formula, bool> fixed;
  for (const auto& m : members) {
    const bool negative = m.is(Kind::Neg);
    const Formula& atom = negative ? m.sub() : m;
    if (!atom.is(Kind::Var) && !atom.is(Kind::Coal)) continue;
    auto [it, fresh] = fixed.emplace(atom, !negative);
    if (!fresh && it->second == negative) return Judgement::Inconsistent;
  }
  std::vector<Formula> atoms;
  for (const auto& m : members) collect_atoms(m, atoms);
  const bool determined = std::all_of(atoms.begin(), atoms.end(), [&](const Formula& a) { return fixed.contains(a); });
  if (determined) {
    for (const auto& m : members) {
      if (!eval_with(m, fixed)) return Judgement::Inconsistent;
    }
    return Judgement::Consistent;
  }
  try {
    return is_satisfiable(members) ? Judgement::Consistent : Judgement::Inconsistent;
  } catch (const Error&) {
    return Judgement::Unknown;
  }
}

class PropositionalOracle : public ConsistencyOracle {
 public:
  Judgement judge(std::span<const Formula> members) const override { return propositional(members); }
  std::string name() const override { return "propositional"; }
};

class HintikkaOracle : public ConsistencyOracle {
 public:
  explicit HintikkaOracle(SystemId sys) : sys_(sys) {}

  std::string name() const override { return std::string("hintikka-") + to_string(sys_); }

  Judgement judge(std::span<const Formula> members) const override {
    const Judgement base = propositional(members);
    if (base == Judgement::Inconsistent) return base;
    std::vector<const Formula*> boxes, refuted;
    for (const auto& m : members) {
      if (m.is(Kind::Coal)) boxes.push_back(&m);
      else if (m.is(Kind::Neg) && m.sub().is(Kind::Coal)) refuted.push_back(&m.sub());
    }
    return modal_clash(boxes, refuted) ? Judgement::Inconsistent : base;
  }

 private:
  static constexpr std::size_t kAtomCap = 14;

  // The literal rules over decided boxes and refuted boxes. Bodies are
  // compared with valid() / unsatisfiable(), which recurse into this check.
  bool modal_clash(const std::vector<const Formula*>& boxes, const std::vector<const Formula*>& refuted) const {
    for (const Formula* n : refuted) {
      // Necessitation: a valid body is forced at subscript 0.
      if (n->subscript().is_zero() && valid(n->sub())) return true;
    }
    for (const Formula* b : boxes) {
      if (!b->subscript().is_zero() && unsatisfiable(b->sub())) return true;
      for (const Formula* n : refuted) {
        if (b->coalition().subset_of(n->coalition()) && n->subscript() <= b->subscript() &&
            valid(Formula::impl(b->sub(), n->sub()))) {
          return true;
        }
      }
    }
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        const Formula& b1 = *boxes[i];
        const Formula& b2 = *boxes[j];
        if (!b1.coalition().disjoint(b2.coalition())) continue;
        const Rational top = max(b1.subscript(), b2.subscript());
        const Coalition joint = b1.coalition().united(b2.coalition());
        const Formula both = conj(b1.sub(), b2.sub());
        if (!top.is_zero() && unsatisfiable(both)) return true;
        for (const Formula* n : refuted) {
          if (joint.subset_of(n->coalition()) && n->subscript() <= top && valid(Formula::impl(both, n->sub()))) {
            return true;
          }
        }
      }
    }
    return false;
  }

  bool valid(const Formula& f) const { return unsatisfiable(Formula::neg(f)); }

  // True only when every propositional model of f, read as a set of decided
  // boxes, hits a modal clash. Too many atoms count as "not shown", which
  // keeps rejections sound.
  bool unsatisfiable(const Formula& f) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(f); it != cache_.end()) return it->second;
    }
    std::vector<Formula> atoms;
    collect_atoms(f, atoms);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    bool unsat = true;
    if (atoms.size() > kAtomCap) {
      try {
        unsat = !is_satisfiable(std::span<const Formula>(&f, 1));
      } catch (const Error&) {
        unsat = false;
      }
    } else {
      std::unordered_map<Formula, bool> assignment;
      for (std::size_t mask = 0; unsat && mask < (std::size_t{1} << atoms.size()); ++mask) {
        for (std::size_t k = 0; k < atoms.size(); ++k) assignment[atoms[k]] = (mask >> k) & 1;
        if (!eval_with(f, assignment)) continue;
        std::vector<const Formula*> boxes, refuted;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
          if (!atoms[k].is(Kind::Coal)) continue;
          (((mask >> k) & 1) ? boxes : refuted).push_back(&atoms[k]);
        }
        if (!modal_clash(boxes, refuted)) unsat = false;
      }
    }
    std::lock_guard lock(mutex_);
    cache_.emplace(f, unsat);
    return unsat;
  }

  SystemId sys_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Formula, bool> cache_;
};

Formula base_of(Formula f) {
  while (f.is(Kind::Neg)) f = f.sub();
  return f;
}

}  // namespace

std::shared_ptr<const ConsistencyOracle> default_oracle(SystemId sys) {
  return std::make_shared<HintikkaOracle>(sys);
}

std::shared_ptr<const ConsistencyOracle> propositional_oracle() { return std::make_shared<PropositionalOracle>(); }

bool MaximalSet::contains(const Formula& f) const {
  return std::binary_search(members.begin(), members.end(), f, canonical_less);
}

std::string MaximalSet::key() const {
  std::vector<std::string> parts;
  for (const auto& m : members) parts.push_back(render(m));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

std::vector<MaximalSet> enumerate_maximal_sets(const ClosureSet& sigma, const ConsistencyOracle& oracle,
                                               std::size_t cap) {
  const auto& all = sigma.formulas();
  if (all.size() > cap) {
    throw Error(ErrorKind::Limit, "closure has " + std::to_string(all.size()) + " formulas, above the cap of " +
                                      std::to_string(cap));
  }
  std::vector<Formula> decide;  // non-negations, canonical order (parts first)
  for (const auto& f : all) {
    if (!f.is(Kind::Neg)) decide.push_back(f);
  }
  std::unordered_map<Formula, std::size_t> position;
  for (std::size_t k = 0; k < decide.size(); ++k) position.emplace(decide[k], k);
  // Each member of sigma becomes decidable once its base formula is.
  std::vector<std::size_t> ready(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) ready[i] = position.at(base_of(all[i]));

  std::unordered_map<Formula, bool> value;
  std::function<bool(const Formula&)> eval = [&](const Formula& f) -> bool {
    if (f.is(Kind::Neg)) return !eval(f.sub());
    return value.at(f);
  };
  auto members_upto = [&](std::size_t assigned) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (ready[i] < assigned && eval(all[i])) out.push_back(all[i]);
    }
    return out;
  };

  std::vector<MaximalSet> found;
  std::function<void(std::size_t)> step = [&](std::size_t k) {
    if (k == decide.size()) {
      auto members = members_upto(k);
      const Judgement j = oracle.judge(members);
      if (j == Judgement::Inconsistent) return;
      found.push_back({std::move(members), j == Judgement::Unknown});
      return;
    }
    const Formula& f = decide[k];
    auto assign = [&](bool v, bool free) {
      value[f] = v;
      if (free && k + 1 < decide.size()) {
        if (oracle.judge(members_upto(k + 1)) == Judgement::Inconsistent) return;
      }
      step(k + 1);
    };
    switch (f.kind()) {
      case Kind::Bot: assign(false, false); break;
      case Kind::Impl: assign(!eval(f.lhs()) || eval(f.rhs()), false); break;
      default:
        assign(true, true);
        assign(false, true);
        break;
    }
    value.erase(f);
  };
  step(0);

  std::sort(found.begin(), found.end(), [](const MaximalSet& a, const MaximalSet& b) { return a.key() < b.key(); });
  return found;
}

std::string CanonicalAction::name() const { return "(" + render(formula) + "," + value.str() + ")"; }

std::vector<CanonicalAction> action_domain(const ClosureSet& sigma) {
  std::vector<Formula> pool = sigma.formulas();
  if (!sigma.contains(Formula::top())) {
    pool.push_back(Formula::top());
    std::sort(pool.begin(), pool.end(), canonical_less);
  }
  std::set<Rational> values{Rational(-1), Rational(0)};
  for (const auto& f : sigma.formulas()) {
    if (f.is(Kind::Coal)) values.insert(f.subscript());
  }
  std::vector<CanonicalAction> out;
  for (const auto& f : pool) {
    for (const auto& v : values) out.push_back({f, v});
  }
  return out;
}

namespace {

bool matches(const Formula& box, const CanonicalProfile& d) {
  for (const auto& a : box.coalition().members()) {
    auto it = d.find(a);
    if (it == d.end()) throw Error(ErrorKind::BadProfile, "profile does not assign agent '" + a + "'");
    if (it->second.formula != box.sub() || it->second.value != box.subscript()) return false;
  }
  return true;
}

}  // namespace

Rational mu(const MaximalSet& s, const CanonicalProfile& d) {
  Rational best(0);
  for (const auto& m : s.members) {
    if (m.is(Kind::Coal) && matches(m, d)) best = max(best, m.subscript());
  }
  return best;
}

std::vector<Formula> requested(const MaximalSet& s, const CanonicalProfile& d) {
  std::vector<Formula> out;
  for (const auto& m : s.members) {
    if (m.is(Kind::Coal) && matches(m, d) && std::find(out.begin(), out.end(), m.sub()) == out.end()) {
      out.push_back(m.sub());
    }
  }
  return out;
}

std::vector<std::size_t> targets(const MaximalSet& s, const CanonicalProfile& d, std::span<const MaximalSet> all) {
  const auto req = requested(s, d);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (std::all_of(req.begin(), req.end(), [&](const Formula& f) { return all[j].contains(f); })) out.push_back(j);
  }
  return out;
}

Rational canonical_probability(bool from_failure, bool to_failure, bool in_targets, const Rational& mu_val,
                               std::size_t target_count) {
  if (from_failure) return Rational(to_failure ? 1 : 0);
  if (target_count == 0) return Rational(to_failure ? 1 : 0);
  if (to_failure) return Rational(1) - mu_val;
  return in_targets ? mu_val / Rational(static_cast<std::int64_t>(target_count)) : Rational(0);
}

CanonicalGame build_canonical_game(const ClosureSet& sigma, SystemId sys, const ConsistencyOracle& oracle,
                                   const CanonicalOptions& options) {
  if (sys == SystemId::Lplus) {
    for (const auto& f : sigma.formulas()) {
      if (!in_plus_language(f)) {
        throw Error(ErrorKind::Argument, "L+ closure contains " + render(f) + ", which uses the empty coalition");
      }
    }
  }
  CanonicalGame cg;
  cg.sigma = sigma;
  cg.sets = enumerate_maximal_sets(sigma, oracle, options.max_closure);
  cg.actions = action_domain(sigma);

  std::set<AgentId> mentioned;
  for (const auto& f : sigma.formulas()) {
    for (const auto& a : agents(f)) mentioned.insert(a);
  }
  std::vector<AgentId> agent_list;
  if (options.agents) {
    agent_list = *options.agents;
    for (const auto& a : mentioned) {
      if (std::find(agent_list.begin(), agent_list.end(), a) == agent_list.end()) {
        throw Error(ErrorKind::UnknownAgent, "closure mentions agent '" + a + "' outside the given universe");
      }
    }
  } else {
    agent_list.assign(mentioned.begin(), mentioned.end());
  }

  const std::size_t n = cg.sets.size();
  std::vector<StateId> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  names.push_back(kCanonicalFailure);
  std::vector<ActionId> action_names;
  for (const auto& a : cg.actions) action_names.push_back(a.name());

  double table = static_cast<double>(n + 1);
  for (std::size_t k = 0; k < agent_list.size(); ++k) table *= static_cast<double>(action_names.size());
  if (table > static_cast<double>(options.max_table)) {
    throw Error(ErrorKind::Limit, "canonical transition table would have about " + std::to_string(table) +
                                      " rows, above the limit of " + std::to_string(options.max_table));
  }

  if (options.zero_mu_floor) {
    Rational least(1);
    for (const auto& f : sigma.formulas()) {
      if (f.is(Kind::Coal) && !f.subscript().is_zero()) least = std::min(least, f.subscript());
    }
    cg.floor = least / Rational(2);
  }

  cg.game = Game(agent_list, names, {kCanonicalFailure}, action_names);
  Game& g = cg.game;
  const std::size_t f_idx = n;
  const std::size_t profiles = g.profile_count();

  std::unordered_map<Formula, std::size_t> sigma_pos;
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma_pos.emplace(sigma.formulas()[i], i);
  std::vector<std::vector<bool>> member(n, std::vector<bool>(sigma.size(), false));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& m : cg.sets[j].members) member[j][sigma_pos.at(m)] = true;
  }
  std::map<std::pair<std::string, std::string>, std::size_t> action_pos;
  for (std::size_t k = 0; k < cg.actions.size(); ++k) {
    action_pos.emplace(std::make_pair(render(cg.actions[k].formula), cg.actions[k].value.str()), k);
  }

  struct Box {
    std::vector<std::size_t> agents;
    std::size_t action;
    Rational p;
    std::size_t body;
  };

  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Box> boxes;
    for (const auto& m : cg.sets[s].members) {
      if (!m.is(Kind::Coal)) continue;
      Box b{{}, action_pos.at({render(m.sub()), m.subscript().str()}), m.subscript(), sigma_pos.at(m.sub())};
      for (const auto& a : m.coalition().members()) b.agents.push_back(g.agent_index(a));
      boxes.push_back(std::move(b));
    }
    struct Cached {
      Row row;
      bool no_targets;
    };
    std::map<std::pair<Rational, std::vector<std::size_t>>, Cached> cache;
    for (std::size_t d = 0; d < profiles; ++d) {
      const auto acts = g.profile_actions(d);
      Rational m(0);
      std::vector<std::size_t> req;
      for (const auto& b : boxes) {
        if (std::all_of(b.agents.begin(), b.agents.end(), [&](std::size_t a) { return acts[a] == b.action; })) {
          m = max(m, b.p);
          req.push_back(b.body);
        }
      }
      std::sort(req.begin(), req.end());
      req.erase(std::unique(req.begin(), req.end()), req.end());
      auto key = std::make_pair(m, req);
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<std::size_t> t;
        for (std::size_t j = 0; j < n; ++j) {
          if (std::all_of(req.begin(), req.end(), [&](std::size_t r) { return member[j][r]; })) t.push_back(j);
        }
        const Rational mass = (m.is_zero() && cg.floor && !t.empty()) ? *cg.floor : m;
        Row row;
        for (std::size_t j : t) {
          const Rational p = canonical_probability(false, false, true, mass, t.size());
          if (!p.is_zero()) row.emplace_back(j, p);
        }
        const Rational to_f = canonical_probability(false, true, false, mass, t.size());
        if (!to_f.is_zero()) row.emplace_back(f_idx, to_f);
        it = cache.emplace(std::move(key), Cached{std::move(row), t.empty()}).first;
      }
      if (it->second.no_targets && !m.is_zero()) cg.diagnostics.guards.push_back({names[s], g.profile_at(d), m});
      g.set_row(s, d, it->second.row);
    }
  }
  for (std::size_t d = 0; d < profiles; ++d) g.set_row(f_idx, d, Row{{f_idx, Rational(1)}});

  std::set<std::string> vars;
  for (const auto& f : sigma.formulas()) {
    if (f.is(Kind::Var)) vars.insert(f.name());
  }
  for (const auto& v : vars) {
    std::set<StateId> where;
    const Formula fv = Formula::var(v);
    for (std::size_t j = 0; j < n; ++j) {
      if (cg.sets[j].contains(fv)) where.insert(names[j]);
    }
    g.set_valuation(v, std::move(where));
  }

  cg.diagnostics.states = n;
  cg.diagnostics.actions = cg.actions.size();
  cg.diagnostics.profiles = profiles;
  cg.diagnostics.no_maximal_sets = n == 0;
  for (const auto& s : cg.sets) cg.diagnostics.unknown_sets += s.unknown ? 1 : 0;
  return cg;
}

namespace {

CanonicalProfile canonical_profile(const CanonicalGame& cg, std::size_t d) {
  CanonicalProfile out;
  const auto acts = cg.game.profile_actions(d);
  for (std::size_t a = 0; a < acts.size(); ++a) out.emplace(cg.game.agents()[a], cg.actions[acts[a]]);
  return out;
}

}  // namespace

Rational canonical_mu(const CanonicalGame& cg, std::size_t s, std::size_t d) {
  return mu(cg.sets.at(s), canonical_profile(cg, d));
}

std::vector<TruthDisagreement> audit_truth_lemma(const CanonicalGame& cg) {
  CheckContext ctx(cg.game);
  std::vector<TruthDisagreement> out;
  for (std::size_t s = 0; s < cg.sets.size(); ++s) {
    for (const auto& f : cg.sigma.formulas()) {
      const bool member = cg.sets[s].contains(f);
      const bool truth = ctx.holds(s, f);
      if (member != truth) out.push_back({cg.game.states()[s], f, member, truth});
    }
  }
  return out;
}

StructureAudit audit_structure(const CanonicalGame& cg) {
  StructureAudit out;
  const Game& g = cg.game;
  out.validate_violations = validate(g).size();
  for (std::size_t s = 0; s < cg.sets.size(); ++s) {
    for (std::size_t d = 0; d < g.profile_count(); ++d) {
      ++out.rows_checked;
      const Rational m = canonical_mu(cg, s, d);
      if (!m.in_unit_interval()) ++out.mu_range_violations;
      const Rational cap = (m.is_zero() && cg.floor) ? *cg.floor : m;
      if (survival_probability(g, s, d) > cap) ++out.bound_violations;
      const Row* row = g.row(s, d);
      std::optional<Rational> share;
      for (const auto& [t, p] : *row) {
        if (g.is_failure(t)) continue;
        if (share && *share != p) {
          ++out.uniformity_violations;
          break;
        }
        share = p;
      }
    }
  }
  return out;
}

nlohmann::json canonical_sidecar(const CanonicalGame& cg) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t s = 0; s < cg.sets.size(); ++s) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : cg.sets[s].members) members.push_back(render(m));
    out[cg.game.states()[s]] = std::move(members);
  }
  return out;
}

nlohmann::json diagnostics_to_json(const CanonicalDiagnostics& d) {
  nlohmann::json guards = nlohmann::json::array();
  for (const auto& g : d.guards) {
    nlohmann::json prof = nlohmann::json::object();
    for (const auto& [a, act] : g.profile.assignment) prof[a] = act;
    guards.push_back({{"state", g.state}, {"profile", prof}, {"mu", g.mu.str()}});
  }
  return {{"states", d.states},
          {"actions", d.actions},
          {"profiles", d.profiles},
          {"unknown_sets", d.unknown_sets},
          {"no_maximal_sets", d.no_maximal_sets},
          {"guards", guards}};
}

}  // namespace sgcl
