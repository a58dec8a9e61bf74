#include <algorithm>
#include <random>

#include "sgcl/error.hpp"
#include "sgcl/modelcheck.hpp"

namespace sgcl {

namespace {

std::vector<Coalition> all_coalitions(const std::vector<AgentId>& agents) {
  if (agents.size() > 12) throw Error(ErrorKind::Limit, "too many agents to enumerate coalitions");
  std::vector<Coalition> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << agents.size()); ++mask) {
    std::vector<AgentId> members;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (mask >> i & 1u) members.push_back(agents[i]);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<Rational> subscript_grid(const Game& g) {
  std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  for (std::size_t s : g.nonfailure_states()) {
    for (std::size_t d = 0; d < g.profile_count() && grid.size() < 32; ++d) {
      const Rational v = survival_probability(g, s, d);
      if (v.in_unit_interval()) grid.push_back(v);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

struct Instance {
  const char* schema;
  Formula formula;
};

class InstanceSpace {
 public:
  InstanceSpace(std::span<const Formula> pool, std::vector<Coalition> coalitions, std::vector<Rational> grid)
      : pool_(pool.begin(), pool.end()), coalitions_(std::move(coalitions)), grid_(std::move(grid)) {
    for (std::size_t i = 0; i < coalitions_.size(); ++i) {
      for (std::size_t j = 0; j < coalitions_.size(); ++j) {
        if (coalitions_[i].disjoint(coalitions_[j])) disjoint_pairs_.emplace_back(i, j);
      }
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) ordered_pairs_.emplace_back(i, j);  // grid_[j] <= grid_[i]
      if (grid_[i] > Rational(0)) positive_.push_back(i);
    }
    const std::size_t P = pool_.size(), G = grid_.size();
    cooperation_ = P * P * disjoint_pairs_.size() * G * G;
    monotonicity_ = P * coalitions_.size() * ordered_pairs_.size();
    falsehood_ = coalitions_.size() * positive_.size();
  }

  std::size_t size() const { return cooperation_ + monotonicity_ + falsehood_; }

  Instance at(std::size_t k) const {
    const std::size_t P = pool_.size(), G = grid_.size();
    if (k < cooperation_) {
      const std::size_t q = k % G; k /= G;
      const std::size_t p = k % G; k /= G;
      const auto [c1, c2] = disjoint_pairs_[k % disjoint_pairs_.size()]; k /= disjoint_pairs_.size();
      const Formula& psi = pool_[k % P]; k /= P;
      const Formula& phi = pool_[k % P];
      const Coalition& C1 = coalitions_[c1];
      const Coalition& C2 = coalitions_[c2];
      Formula f = Formula::impl(
          Formula::coal(C1, grid_[p], Formula::impl(phi, psi)),
          Formula::impl(Formula::coal(C2, grid_[q], phi), Formula::coal(C1.united(C2), max(grid_[p], grid_[q]), psi)));
      return {"cooperation", std::move(f)};
    }
    k -= cooperation_;
    if (k < monotonicity_) {
      const auto [hi, lo] = ordered_pairs_[k % ordered_pairs_.size()]; k /= ordered_pairs_.size();
      const Coalition& C = coalitions_[k % coalitions_.size()]; k /= coalitions_.size();
      const Formula& phi = pool_[k % P];
      return {"monotonicity", Formula::impl(Formula::coal(C, grid_[hi], phi), Formula::coal(C, grid_[lo], phi))};
    }
    k -= monotonicity_;
    const std::size_t p = positive_[k % positive_.size()];
    const Coalition& C = coalitions_[k / positive_.size()];
    return {"falsehood", Formula::neg(Formula::coal(C, grid_[p], Formula::bot()))};
  }

  const std::vector<Coalition>& coalitions() const { return coalitions_; }

 private:
  std::vector<Formula> pool_;
  std::vector<Coalition> coalitions_;
  std::vector<Rational> grid_;
  std::vector<std::pair<std::size_t, std::size_t>> disjoint_pairs_;
  std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs_;
  std::vector<std::size_t> positive_;
  std::size_t cooperation_ = 0, monotonicity_ = 0, falsehood_ = 0;
};

}  // namespace

SoundnessReport audit_axiom_soundness(const Game& g, std::span<const Formula> pool, std::size_t sample_budget,
                                      std::uint64_t seed) {
  SoundnessReport report;
  CheckContext ctx(g);
  const auto live = g.nonfailure_states();
  InstanceSpace space(pool, all_coalitions(g.agents()), subscript_grid(g));
  std::mt19937_64 rng(seed);

  auto valid_on_game = [&](const Formula& f) {
    const auto& mask = ctx.truth(f);
    return std::all_of(live.begin(), live.end(), [&](std::size_t s) { return mask[s]; });
  };

  auto necessitation = [&](const Formula& phi, const Coalition& c) {
    ++report.necessitation_checks;
    const Formula boxed = Formula::coal(c, Rational(0), phi);
    const auto& mask = ctx.truth(boxed);
    for (std::size_t s : live) {
      if (!mask[s]) report.violations.push_back({"necessitation", boxed, g.states()[s]});
    }
  };

  std::vector<std::size_t> picks;
  if (space.size() <= sample_budget) {
    picks.resize(space.size());
    for (std::size_t k = 0; k < picks.size(); ++k) picks[k] = k;
  } else {
    std::uniform_int_distribution<std::size_t> dist(0, space.size() - 1);
    for (std::size_t k = 0; k < sample_budget; ++k) picks.push_back(dist(rng));
  }

  const auto& coalitions = space.coalitions();
  std::uniform_int_distribution<std::size_t> pick_coalition(0, coalitions.size() - 1);
  for (std::size_t k : picks) {
    const Instance inst = space.at(k);
    ++report.instances;
    const auto& mask = ctx.truth(inst.formula);
    for (std::size_t s : live) {
      ++report.evaluations;
      if (!mask[s]) report.violations.push_back({inst.schema, inst.formula, g.states()[s]});
    }
    const Coalition& c = coalitions[pick_coalition(rng)];
    if (valid_on_game(inst.formula)) necessitation(inst.formula, c);
  }

  for (const auto& phi : pool) {
    if (!valid_on_game(phi)) continue;
    for (const auto& c : coalitions) necessitation(phi, c);
  }
  return report;
}

}  // namespace sgcl
