#include "sgcl/decide.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "sgcl/error.hpp"
#include "sgcl/game_io.hpp"
#include "sgcl/modelcheck.hpp"

namespace sgcl {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::Refuted: return "refuted";
    case VerdictKind::ValidRelativeToOracle: return "valid-relative-to-oracle";
    case VerdictKind::Exhausted: return "exhausted";
  }
  return "?";
}

void check_bounds(const SearchBounds& b) {
  if (b.budget == 0) throw Error(ErrorKind::Argument, "search budget must be positive");
  if (b.max_states == 0 || b.max_actions == 0) throw Error(ErrorKind::Argument, "bounds need at least one state and action");
  bool zero = false, one = false;
  for (const auto& p : b.grid) {
    if (!p.in_unit_interval()) throw Error(ErrorKind::Argument, "grid value " + p.str() + " is outside [0, 1]");
    zero = zero || p.is_zero();
    one = one || p == Rational(1);
  }
  if (!zero || !one) throw Error(ErrorKind::Argument, "probability grid must contain 0 and 1");
}

Game sample_game(const SearchBounds& b, std::uint64_t index, const std::set<std::string>& vars) {
  std::seed_seq seq{static_cast<std::uint32_t>(b.seed), static_cast<std::uint32_t>(b.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto coin = [&](unsigned num, unsigned den) { return uniform(1, den) <= num; };

  const std::size_t n = uniform(1, b.max_states);
  const std::size_t m = uniform(1, b.max_actions);
  std::vector<StateId> states;
  std::set<StateId> failures;
  for (std::size_t i = 0; i < n; ++i) {
    states.push_back("q" + std::to_string(i));
    if (i > 0 && coin(1, 3)) failures.insert(states.back());
  }
  std::vector<ActionId> actions;
  for (std::size_t i = 0; i < m; ++i) actions.push_back("d" + std::to_string(i));

  Game g(b.agents, states, failures, actions);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t d = 0; d < g.profile_count(); ++d) {
      Row row;
      for (int attempt = 0; attempt < 8 && row.empty(); ++attempt) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        Rational total;
        Row draft;
        for (std::size_t k = 0; k + 1 < n; ++k) {
          const Rational p = coin(1, 2) ? Rational(0) : b.grid[uniform(0, b.grid.size() - 1)];
          total += p;
          draft.emplace_back(order[k], p);
        }
        const Rational residual = Rational(1) - total;
        if (!residual.in_unit_interval()) continue;
        draft.emplace_back(order[n - 1], residual);
        row = std::move(draft);
      }
      if (row.empty()) row.emplace_back(uniform(0, n - 1), Rational(1));
      g.set_row(s, d, std::move(row));
    }
  }
  for (const auto& v : vars) {
    std::set<StateId> where;
    for (std::size_t s = 0; s < n; ++s) {
      if (!g.is_failure(s) && coin(1, 2)) where.insert(states[s]);
    }
    g.set_valuation(v, std::move(where));
  }
  return g;
}

bool reverify_countermodel(const Game& g, const StateId& s, const Formula& phi) {
  const Game copy = game_from_json(nlohmann::json::parse(game_to_json(g).dump()));
  if (!validate(copy).empty()) return false;
  CheckContext fresh(copy);
  return !fresh.holds(s, phi);
}

Verdict classify(const Formula& phi, SystemId sys, const ConsistencyOracle& oracle, const ClassifyOptions& options) {
  const auto start = Clock::now();
  if (sys == SystemId::Lplus && !in_plus_language(phi)) {
    throw Error(ErrorKind::Argument, "L+ formulas may not use the empty coalition");
  }
  const Formula negated = Formula::neg(phi);
  const ClosureSet sigma = closure({negated});
  CanonicalOptions copts;
  copts.max_closure = options.max_closure;
  copts.max_table = options.max_table;
  copts.zero_mu_floor = options.zero_mu_floor;
  const CanonicalGame cg = build_canonical_game(sigma, sys, oracle, copts);

  Verdict v;
  v.method = "canonical";
  v.closure_size = sigma.size();
  v.state_count = cg.sets.size();
  CheckContext ctx(cg.game);
  for (std::size_t s = 0; s < cg.sets.size(); ++s) {
    if (!cg.sets[s].contains(negated) || ctx.holds(s, phi)) continue;
    const StateId& name = cg.game.states()[s];
    if (!reverify_countermodel(cg.game, name, phi)) continue;
    v.kind = VerdictKind::Refuted;
    v.game = cg.game;
    v.state = name;
    break;
  }
  if (v.kind != VerdictKind::Refuted) v.kind = VerdictKind::ValidRelativeToOracle;
  v.profile_evaluations = ctx.profile_evaluations();
  v.elapsed_ms = ms_since(start);
  return v;
}

std::optional<Countermodel> bounded_countermodel(const Formula& phi, const SearchBounds& bounds) {
  check_bounds(bounds);
  SearchBounds b = bounds;
  std::set<AgentId> all(b.agents.begin(), b.agents.end());
  for (const auto& a : agents(phi)) all.insert(a);
  b.agents.assign(all.begin(), all.end());
  const auto vars = variables(phi);

  unsigned jobs = b.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : b.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, b.budget));

  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  std::atomic<std::uint64_t> next{0}, best{kNone};
  std::atomic<std::size_t> evaluated{0};
  std::mutex mutex;
  std::map<std::uint64_t, std::pair<Game, StateId>> hits;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= b.budget || i > best.load()) return;
        Game g = sample_game(b, i, vars);
        ++evaluated;
        CheckContext ctx(g);
        const auto& mask = ctx.truth(phi);
        for (std::size_t s : g.nonfailure_states()) {
          if (mask[s]) continue;
          StateId name = g.states()[s];
          std::lock_guard lock(mutex);
          hits.emplace(i, std::make_pair(std::move(g), std::move(name)));
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const std::uint64_t found = best.load();
  if (found == kNone) return std::nullopt;
  auto& [game, state] = hits.at(found);
  if (!reverify_countermodel(game, state, phi)) {
    throw Error(ErrorKind::InvalidGame, "countermodel candidate failed independent re-verification");
  }
  return Countermodel{std::move(game), std::move(state), found, evaluated.load()};
}

Verdict bounded_verdict(const Formula& phi, const SearchBounds& b) {
  const auto start = Clock::now();
  Verdict v;
  v.method = "bounded";
  v.seed = b.seed;
  if (auto cm = bounded_countermodel(phi, b)) {
    v.kind = VerdictKind::Refuted;
    v.state_count = cm->game.state_count();
    v.candidates = cm->candidates;
    v.game = std::move(cm->game);
    v.state = std::move(cm->state);
  } else {
    v.kind = VerdictKind::Exhausted;
    v.candidates = b.budget;
  }
  v.elapsed_ms = ms_since(start);
  return v;
}

nlohmann::json verdict_to_json(const Verdict& v, const Formula& phi) {
  nlohmann::json j;
  j["verdict"] = to_string(v.kind);
  j["formula"] = render(phi);
  j["method"] = v.method;
  j["state"] = v.state ? nlohmann::json(*v.state) : nlohmann::json(nullptr);
  j["game"] = v.game ? game_to_json(*v.game) : nlohmann::json(nullptr);
  j["stats"] = {{"closure_size", v.closure_size},
                {"states", v.state_count},
                {"candidates", v.candidates},
                {"profile_evaluations", v.profile_evaluations},
                {"elapsed_ms", v.elapsed_ms}};
  if (v.seed) j["seed"] = *v.seed;
  return j;
}

DemoReport incompleteness_demo(int n) {
  if (n < 0 || n > 12) throw Error(ErrorKind::Argument, "demo parameter must lie in 0..12");
  DemoReport r;
  r.n = n;
  r.game = fig3_game(n);
  CheckContext ctx(r.game);
  const Formula top = Formula::top();
  bool all_prefix = true;
  for (int k = 0; k <= n; ++k) {
    const Formula f = Formula::coal(Coalition{}, Rational(1) - Rational::pow10_neg(k), top);
    const bool h = ctx.holds("s", f);
    all_prefix = all_prefix && h;
    r.prefix.push_back({k, f, h});
  }
  r.limit = Formula::coal(Coalition{}, Rational(1), top);
  r.limit_holds_s = ctx.holds("s", r.limit);
  r.limit_holds_t = ctx.holds("t", r.limit);
  r.ok = all_prefix && !r.limit_holds_s && r.limit_holds_t;
  return r;
}

nlohmann::json demo_to_json(const DemoReport& r) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const auto& p : r.prefix) {
    prefix.push_back({{"n", p.n},
                      {"formula", render(p.formula)},
                      {"subscript", p.formula.subscript().str()},
                      {"holds_at_s", p.holds}});
  }
  return {{"n", r.n},
          {"loss", Rational::pow10_neg(r.n).str()},
          {"prefix", prefix},
          {"limit", render(r.limit)},
          {"limit_holds_at_s", r.limit_holds_s},
          {"limit_holds_at_t", r.limit_holds_t},
          {"finite_prefix_entails_limit", !(r.ok)},
          {"ok", r.ok},
          {"game", game_to_json(r.game)}};
}

}  // namespace sgcl
