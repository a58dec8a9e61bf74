#include "sgcl/sgcl.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "sgcl/canonical.hpp"
#include "sgcl/decide.hpp"
#include "sgcl/error.hpp"
#include "sgcl/game_io.hpp"
#include "sgcl/modelcheck.hpp"
#include "sgcl/proof.hpp"

struct sgcl_formula {
  sgcl::Formula value;
};

struct sgcl_game {
  sgcl::Game value;
};

struct sgcl_proof {
  sgcl::Derivation value;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

sgcl_status status_of(sgcl::ErrorKind kind) { return static_cast<sgcl_status>(static_cast<int>(kind) + 1); }

template <typename F>
sgcl_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SGCL_OK;
  } catch (const sgcl::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON argument: ") + e.what();
    return SGCL_ERR_SCHEMA;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SGCL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown internal error";
    return SGCL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw sgcl::Error(sgcl::ErrorKind::Argument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  require(out, "output pointer");
  *out = dup(j.dump());
}

json violations_json(const std::vector<sgcl::Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    json item = {{"kind", v.kind}, {"message", v.message}};
    if (v.state) item["state"] = *v.state;
    if (v.profile) item["profile"] = sgcl::profile_to_json(v.profile->assignment);
    arr.push_back(std::move(item));
  }
  return arr;
}

std::vector<sgcl::Formula> formula_list(const char* text) {
  require(text, "formula list");
  const json j = json::parse(text);
  if (!j.is_array()) throw sgcl::Error(sgcl::ErrorKind::Argument, "expected a JSON array of formula strings");
  std::vector<sgcl::Formula> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw sgcl::Error(sgcl::ErrorKind::Argument, "expected a JSON array of formula strings");
    out.push_back(sgcl::parse(item.get<std::string>()));
  }
  return out;
}

sgcl::SystemId system_of(const char* s) { return sgcl::system_from_string(s ? s : "L"); }

}  // namespace

extern "C" {

const char* sgcl_version(void) { return "0.1.0"; }

const char* sgcl_last_error(void) { return last_error.c_str(); }

const char* sgcl_status_name(sgcl_status status) {
  if (status == SGCL_OK) return "ok";
  if (status == SGCL_ERR_INTERNAL) return "internal";
  if (status > SGCL_OK && status < SGCL_ERR_INTERNAL) return sgcl::to_string(static_cast<sgcl::ErrorKind>(status - 1));
  return "unknown";
}

void sgcl_string_free(char* s) { std::free(s); }

sgcl_status sgcl_formula_parse(const char* text, sgcl_formula** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new sgcl_formula{sgcl::parse(text)};
  });
}

sgcl_status sgcl_formula_render(const sgcl_formula* f, char** out) {
  return guarded([&] {
    require(f, "formula");
    require(out, "output pointer");
    *out = dup(sgcl::render(f->value));
  });
}

void sgcl_formula_free(sgcl_formula* f) { delete f; }

sgcl_status sgcl_game_load(const char* path, int force, sgcl_game** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new sgcl_game{sgcl::load_game(path, force != 0)};
  });
}

sgcl_status sgcl_game_from_json(const char* text, int force, sgcl_game** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw sgcl::Error(sgcl::ErrorKind::Schema, std::string("game is not valid JSON: ") + e.what());
    }
    sgcl::Game g = sgcl::game_from_json(j);
    if (!force) {
      const auto vs = sgcl::validate(g);
      if (!vs.empty()) throw sgcl::Error(sgcl::ErrorKind::InvalidGame, "invalid game: " + vs.front().message);
    }
    *out = new sgcl_game{std::move(g)};
  });
}

sgcl_status sgcl_game_to_json(const sgcl_game* g, char** out) {
  return guarded([&] {
    require(g, "game");
    emit(out, sgcl::game_to_json(g->value));
  });
}

sgcl_status sgcl_game_validate(const sgcl_game* g, char** violations) {
  return guarded([&] {
    require(g, "game");
    emit(violations, violations_json(sgcl::validate(g->value)));
  });
}

sgcl_status sgcl_game_fig3(int n, sgcl_game** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new sgcl_game{sgcl::fig3_game(n)};
  });
}

void sgcl_game_free(sgcl_game* g) { delete g; }

sgcl_status sgcl_check(const sgcl_game* g, const char* state, const sgcl_formula* f, int* holds) {
  return guarded([&] {
    require(g, "game");
    require(state, "state");
    require(f, "formula");
    require(holds, "output pointer");
    *holds = sgcl::holds(g->value, state, f->value) ? 1 : 0;
  });
}

sgcl_status sgcl_extent(const sgcl_game* g, const sgcl_formula* f, char** states_json) {
  return guarded([&] {
    require(g, "game");
    require(f, "formula");
    emit(states_json, json(sgcl::extent(g->value, f->value)));
  });
}

sgcl_status sgcl_witness(const sgcl_game* g, const char* state, const sgcl_formula* modality, char** witness_json) {
  return guarded([&] {
    require(g, "game");
    require(state, "state");
    require(modality, "formula");
    const auto w = sgcl::witness(g->value, state, modality->value);
    json j = {{"found", w.has_value()}, {"profile", nullptr}, {"guaranteed_survival", nullptr}};
    if (w) {
      j["profile"] = sgcl::profile_to_json(w->profile.assignment);
      j["guaranteed_survival"] = w->guaranteed_survival.str();
    }
    emit(witness_json, j);
  });
}

sgcl_status sgcl_audit_soundness(const sgcl_game* g, const char* pool_json, size_t budget, uint64_t seed,
                                 char** report_json) {
  return guarded([&] {
    require(g, "game");
    const auto pool = formula_list(pool_json);
    const auto r = sgcl::audit_axiom_soundness(g->value, pool, budget, seed);
    json violations = json::array();
    for (const auto& v : r.violations) {
      violations.push_back({{"schema", v.schema}, {"instance", sgcl::render(v.instance)}, {"state", v.state}});
    }
    emit(report_json, {{"instances", r.instances},
                       {"evaluations", r.evaluations},
                       {"necessitation_checks", r.necessitation_checks},
                       {"violations", violations},
                       {"seed", seed}});
  });
}

sgcl_status sgcl_proof_load(const char* path, sgcl_proof** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new sgcl_proof{sgcl::load_proof(path)};
  });
}

sgcl_status sgcl_proof_from_json(const char* text, const char* base_dir, sgcl_proof** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw sgcl::Error(sgcl::ErrorKind::Schema, std::string("proof is not valid JSON: ") + e.what());
    }
    *out = new sgcl_proof{sgcl::proof_from_json(j, base_dir ? base_dir : "")};
  });
}

sgcl_status sgcl_proof_to_json(const sgcl_proof* p, char** out) {
  return guarded([&] {
    require(p, "proof");
    emit(out, sgcl::proof_to_json(p->value));
  });
}

sgcl_status sgcl_proof_set_system(sgcl_proof* p, const char* system) {
  return guarded([&] {
    require(p, "proof");
    p->value.system = system_of(system);
  });
}

sgcl_status sgcl_proof_verify(const sgcl_proof* p, char** report_json, int* ok) {
  return guarded([&] {
    require(p, "proof");
    require(ok, "output pointer");
    const auto r = sgcl::verify(p->value);
    *ok = r.ok ? 1 : 0;
    json j = {{"ok", r.ok},
              {"system", sgcl::to_string(p->value.system)},
              {"lines", p->value.lines.size()},
              {"line", nullptr},
              {"reason", r.reason},
              {"conclusion", nullptr}};
    if (!r.ok) j["line"] = r.line + 1;
    if (!p->value.lines.empty()) j["conclusion"] = sgcl::render(p->value.conclusion());
    emit(report_json, j);
  });
}

void sgcl_proof_free(sgcl_proof* p) { delete p; }

sgcl_status sgcl_canonical(const char* seeds_json, const char* system, size_t max_closure, char** report_json,
                           int* clean) {
  return sgcl_canonical_ex(seeds_json, system, max_closure, 0, report_json, clean);
}

sgcl_status sgcl_canonical_ex(const char* seeds_json, const char* system, size_t max_closure, int zero_mu_floor,
                              char** report_json, int* clean) {
  return guarded([&] {
    require(clean, "output pointer");
    const auto seeds = formula_list(seeds_json);
    const auto sys = system_of(system);
    sgcl::CanonicalOptions options;
    if (max_closure > 0) options.max_closure = max_closure;
    options.zero_mu_floor = zero_mu_floor != 0;
    const auto sigma = sgcl::closure(std::span<const sgcl::Formula>(seeds));
    const auto cg = sgcl::build_canonical_game(sigma, sys, *sgcl::default_oracle(sys), options);
    const auto structure = sgcl::audit_structure(cg);
    const auto truth = sgcl::audit_truth_lemma(cg);
    json disagreements = json::array();
    for (const auto& d : truth) {
      disagreements.push_back(
          {{"state", d.state}, {"formula", sgcl::render(d.formula)}, {"member", d.member}, {"holds", d.holds}});
    }
    json sigma_list = json::array();
    for (const auto& f : sigma.formulas()) sigma_list.push_back(sgcl::render(f));
    *clean = structure.validate_violations == 0 && structure.bound_violations == 0 &&
                     structure.mu_range_violations == 0 && structure.uniformity_violations == 0 &&
                     cg.diagnostics.guards.empty() && truth.empty()
                 ? 1
                 : 0;
    emit(report_json, {{"system", sgcl::to_string(sys)},
                       {"closure", sigma_list},
                       {"game", sgcl::game_to_json(cg.game)},
                       {"sidecar", sgcl::canonical_sidecar(cg)},
                       {"diagnostics", sgcl::diagnostics_to_json(cg.diagnostics)},
                       {"structure",
                        {{"validate_violations", structure.validate_violations},
                         {"bound_violations", structure.bound_violations},
                         {"mu_range_violations", structure.mu_range_violations},
                         {"uniformity_violations", structure.uniformity_violations},
                         {"rows_checked", structure.rows_checked}}},
                       {"truth_lemma", disagreements},
                       {"floor", cg.floor ? json(cg.floor->str()) : json(nullptr)},
                       {"clean", *clean != 0}});
  });
}

sgcl_status sgcl_classify(const sgcl_formula* f, const char* system, size_t max_closure, char** verdict_json,
                          int* refuted) {
  return guarded([&] {
    require(f, "formula");
    require(refuted, "output pointer");
    const auto sys = system_of(system);
    sgcl::ClassifyOptions options;
    if (max_closure > 0) options.max_closure = max_closure;
    const auto v = sgcl::classify(f->value, sys, *sgcl::default_oracle(sys), options);
    *refuted = v.kind == sgcl::VerdictKind::Refuted ? 1 : 0;
    json j = sgcl::verdict_to_json(v, f->value);
    j["system"] = sgcl::to_string(sys);
    emit(verdict_json, j);
  });
}

sgcl_status sgcl_bounded_search(const sgcl_formula* f, const char* bounds_json, char** verdict_json, int* refuted) {
  return guarded([&] {
    require(f, "formula");
    require(refuted, "output pointer");
    sgcl::SearchBounds b;
    if (bounds_json && *bounds_json) {
      const json j = json::parse(bounds_json);
      if (!j.is_object()) throw sgcl::Error(sgcl::ErrorKind::Argument, "bounds must be a JSON object");
      b.max_states = j.value("max_states", b.max_states);
      b.max_actions = j.value("max_actions", b.max_actions);
      b.agents = j.value("agents", b.agents);
      b.budget = j.value("budget", b.budget);
      b.seed = j.value("seed", b.seed);
      b.jobs = j.value("jobs", b.jobs);
      if (j.contains("grid")) {
        b.grid.clear();
        for (const auto& p : j["grid"]) b.grid.push_back(sgcl::Rational::parse(p.get<std::string>()));
      }
    }
    const auto v = sgcl::bounded_verdict(f->value, b);
    *refuted = v.kind == sgcl::VerdictKind::Refuted ? 1 : 0;
    emit(verdict_json, sgcl::verdict_to_json(v, f->value));
  });
}

sgcl_status sgcl_demo_incompleteness(int n, char** report_json, int* ok) {
  return guarded([&] {
    require(ok, "output pointer");
    const auto r = sgcl::incompleteness_demo(n);
    *ok = r.ok ? 1 : 0;
    emit(report_json, sgcl::demo_to_json(r));
  });
}

}  // extern "C"
