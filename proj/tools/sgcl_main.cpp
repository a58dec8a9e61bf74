// Batch front-end over the C API. Exit 0: holds / verifies / clean;
// 1: fails / refuted / violations found; 2: usage or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sgcl/sgcl.h"

namespace {

using nlohmann::json;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

struct Options {
  std::string command;
  std::string game;
  std::string formula;
  std::string formula_file;
  std::string state;
  std::string proof;
  std::string system = "L";
  int n = 3;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "text";
  std::size_t max_closure = 24;
  std::size_t budget = 0;  // 0: not given
  std::string out;
  bool zero_floor = false;
};

struct Failure {
  std::string kind;
  std::string message;
};

// Throws Failure when a C call fails.
void ok_or_throw(sgcl_status st) {
  if (st != SGCL_OK) throw Failure{sgcl_status_name(st), sgcl_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{"usage", msg}; }

json take_json(char* s) {
  json j = json::parse(s);
  sgcl_string_free(s);
  return j;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using FormulaHandle = Handle<sgcl_formula, sgcl_formula_free>;
using GameHandle = Handle<sgcl_game, sgcl_game_free>;
using ProofHandle = Handle<sgcl_proof, sgcl_proof_free>;

std::vector<std::string> read_formula_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{"io", "cannot open '" + path + "'"};
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

std::vector<std::string> formulas_from(const Options& o) {
  std::vector<std::string> out;
  if (!o.formula.empty()) out.push_back(o.formula);
  if (!o.formula_file.empty()) {
    for (auto& f : read_formula_lines(o.formula_file)) out.push_back(std::move(f));
  }
  return out;
}

std::string single_formula(const Options& o) {
  const auto fs = formulas_from(o);
  if (fs.empty()) usage(o.command + " needs --formula or --formula-file");
  return fs.front();
}

void parse_formula(const std::string& text, FormulaHandle& h) { ok_or_throw(sgcl_formula_parse(text.c_str(), &h.p)); }

void load_game(const Options& o, GameHandle& h) {
  if (o.game.empty()) usage(o.command + " needs --game");
  ok_or_throw(sgcl_game_load(o.game.c_str(), 0, &h.p));
}

void need_state(const Options& o) {
  if (o.state.empty()) usage(o.command + " needs --state");
}

void print(const Options& o, const json& report, const std::string& text) {
  if (o.format == "json") std::cout << report.dump() << '\n';
  else std::cout << text;
}

std::string profile_text(const json& profile) {
  std::string out;
  for (const auto& [agent, action] : profile.items()) {
    out += (out.empty() ? "" : ", ") + agent + "=" + action.get<std::string>();
  }
  return out.empty() ? "(empty coalition)" : out;
}

int cmd_check(const Options& o) {
  GameHandle g;
  FormulaHandle f;
  load_game(o, g);
  need_state(o);
  const auto text = single_formula(o);
  parse_formula(text, f);
  int holds = 0;
  ok_or_throw(sgcl_check(g.p, o.state.c_str(), f.p, &holds));
  char* rendered = nullptr;
  ok_or_throw(sgcl_formula_render(f.p, &rendered));
  const std::string r = rendered;
  sgcl_string_free(rendered);
  print(o, {{"command", "check"}, {"state", o.state}, {"formula", r}, {"value", holds != 0}},
        o.state + " |= " + r + ": " + (holds ? "true" : "false") + "\n");
  return holds ? kHolds : kFails;
}

int cmd_extent(const Options& o) {
  GameHandle g;
  FormulaHandle f;
  load_game(o, g);
  parse_formula(single_formula(o), f);
  char* out = nullptr;
  ok_or_throw(sgcl_extent(g.p, f.p, &out));
  const json states = take_json(out);
  std::string text;
  for (const auto& s : states) text += s.get<std::string>() + "\n";
  if (states.empty()) text = "(no states)\n";
  print(o, {{"command", "extent"}, {"formula", single_formula(o)}, {"extent", states}}, text);
  return kHolds;
}

int cmd_witness(const Options& o) {
  GameHandle g;
  FormulaHandle f;
  load_game(o, g);
  need_state(o);
  parse_formula(single_formula(o), f);
  char* out = nullptr;
  ok_or_throw(sgcl_witness(g.p, o.state.c_str(), f.p, &out));
  json w = take_json(out);
  w["command"] = "witness";
  w["state"] = o.state;
  const bool found = w["found"].get<bool>();
  print(o, w,
        found ? "witness: " + profile_text(w["profile"]) + ", guaranteed survival " +
                    w["guaranteed_survival"].get<std::string>() + "\n"
              : "no coalition profile forces the modality at " + o.state + "\n");
  return found ? kHolds : kFails;
}

int cmd_verify_proof(const Options& o, bool system_given) {
  if (o.proof.empty()) usage("verify-proof needs --proof");
  ProofHandle p;
  ok_or_throw(sgcl_proof_load(o.proof.c_str(), &p.p));
  if (system_given) ok_or_throw(sgcl_proof_set_system(p.p, o.system.c_str()));
  char* out = nullptr;
  int ok = 0;
  ok_or_throw(sgcl_proof_verify(p.p, &out, &ok));
  json r = take_json(out);
  r["command"] = "verify-proof";
  std::string text;
  if (ok) {
    text = "proof verifies in " + r["system"].get<std::string>() + " (" + std::to_string(r["lines"].get<int>()) +
           " lines): " + r["conclusion"].get<std::string>() + "\n";
  } else {
    text = o.proof + ": line " + std::to_string(r["line"].get<int>()) + ": " + r["reason"].get<std::string>() + "\n";
  }
  print(o, r, text);
  return ok ? kHolds : kFails;
}

int cmd_audit(const Options& o) {
  GameHandle g;
  load_game(o, g);
  std::vector<std::string> pool = formulas_from(o);
  if (pool.empty()) {
    char* gj = nullptr;
    ok_or_throw(sgcl_game_to_json(g.p, &gj));
    const json game = take_json(gj);
    pool = {"true", "false"};
    for (const auto& [var, _] : game["valuation"].items()) {
      pool.push_back(var);
      pool.push_back("~" + var);
    }
  }
  char* out = nullptr;
  ok_or_throw(sgcl_audit_soundness(g.p, json(pool).dump().c_str(), o.budget ? o.budget : 2000, o.seed, &out));
  json r = take_json(out);
  r["command"] = "audit-soundness";
  std::ostringstream text;
  text << "instances " << r["instances"] << ", evaluations " << r["evaluations"] << ", necessitation checks "
       << r["necessitation_checks"] << ", violations " << r["violations"].size() << "\n";
  for (const auto& v : r["violations"]) {
    text << "  " << v["schema"].get<std::string>() << " at " << v["state"].get<std::string>() << ": "
         << v["instance"].get<std::string>() << "\n";
  }
  print(o, r, text.str());
  return r["violations"].empty() ? kHolds : kFails;
}

int cmd_canonical(const Options& o) {
  const auto seeds = formulas_from(o);
  if (seeds.empty()) usage("canonical needs --formula or --formula-file");
  char* out = nullptr;
  int clean = 0;
  ok_or_throw(sgcl_canonical_ex(json(seeds).dump().c_str(), o.system.c_str(), o.max_closure, o.zero_floor ? 1 : 0, &out,
                                &clean));
  json r = take_json(out);
  r["command"] = "canonical";
  if (!o.out.empty()) {
    const std::filesystem::path path(o.out);
    std::ofstream game(path);
    auto sidecar_path = path;
    sidecar_path.replace_extension(".sidecar.json");
    std::ofstream side(sidecar_path);
    if (!game || !side) throw Failure{"io", "cannot write '" + o.out + "'"};
    game << r["game"].dump(2) << '\n';
    side << r["sidecar"].dump(2) << '\n';
  }
  const json& d = r["diagnostics"];
  const json& s = r["structure"];
  std::ostringstream text;
  text << "closure " << r["closure"].size() << " formulas; states " << d["states"] << " + f, actions " << d["actions"]
       << ", profiles " << d["profiles"] << "\n";
  text << "validate " << s["validate_violations"] << ", bound " << s["bound_violations"] << ", guards "
       << d["guards"].size() << ", truth-lemma disagreements " << r["truth_lemma"].size() << "\n";
  if (!r["floor"].is_null()) text << "zero-mu floor " << r["floor"].get<std::string>() << "\n";
  for (const auto& [name, members] : r["sidecar"].items()) {
    text << "  " << name << ":";
    for (const auto& m : members) text << " " << m.get<std::string>() << ";";
    text << "\n";
  }
  for (const auto& t : r["truth_lemma"]) {
    text << "  mismatch at " << t["state"].get<std::string>() << ": " << t["formula"].get<std::string>()
         << " member=" << t["member"] << " holds=" << t["holds"] << "\n";
  }
  print(o, r, text.str());
  return clean ? kHolds : kFails;
}

int cmd_decide(const Options& o) {
  FormulaHandle f;
  parse_formula(single_formula(o), f);
  char* out = nullptr;
  int refuted = 0;
  json r;
  const sgcl_status st = sgcl_classify(f.p, o.system.c_str(), o.max_closure, &out, &refuted);
  const bool over_cap = st == SGCL_ERR_LIMIT && o.budget > 0;
  if (!over_cap) {
    ok_or_throw(st);
    r = take_json(out);
  }
  if (o.budget > 0 && !refuted) {
    const json bounds = {{"budget", o.budget}, {"seed", o.seed}, {"jobs", o.jobs}};
    char* bout = nullptr;
    int b_refuted = 0;
    ok_or_throw(sgcl_bounded_search(f.p, bounds.dump().c_str(), &bout, &b_refuted));
    json b = take_json(bout);
    if (over_cap || b_refuted) {
      if (!over_cap) b["canonical"] = r["verdict"];
      r = std::move(b);
      refuted = b_refuted;
    } else {
      r["bounded"] = b["verdict"];
      r["seed"] = o.seed;
    }
  }
  r["command"] = "decide";
  std::string text = r["formula"].get<std::string>() + ": " + r["verdict"].get<std::string>() + " (" +
                     r["method"].get<std::string>() + ")";
  if (refuted) text += " at state " + r["state"].get<std::string>();
  print(o, r, text + "\n");
  return refuted ? kFails : kHolds;
}

int cmd_demo(const Options& o) {
  char* out = nullptr;
  int ok = 0;
  ok_or_throw(sgcl_demo_incompleteness(o.n, &out, &ok));
  json r = take_json(out);
  r["command"] = "demo-incompleteness";
  std::ostringstream text;
  text << "loss at s: " << r["loss"].get<std::string>() << "\n";
  for (const auto& p : r["prefix"]) {
    text << "  s |= " << p["formula"].get<std::string>() << ": " << (p["holds_at_s"].get<bool>() ? "true" : "false")
         << "\n";
  }
  text << "  s |= " << r["limit"].get<std::string>() << ": " << (r["limit_holds_at_s"].get<bool>() ? "true" : "false")
       << "\n";
  text << "  t |= " << r["limit"].get<std::string>() << ": " << (r["limit_holds_at_t"].get<bool>() ? "true" : "false")
       << "\n";
  text << (ok ? "every prefix holds at s while the limit fails\n" : "demonstration failed\n");
  print(o, r, text.str());
  return ok ? kHolds : kFails;
}

int cmd_fmt(const Options& o) {
  const auto fs = formulas_from(o);
  if (fs.empty()) usage("fmt needs --formula or --formula-file");
  json rendered = json::array();
  std::string text;
  for (const auto& s : fs) {
    FormulaHandle f;
    parse_formula(s, f);
    char* out = nullptr;
    ok_or_throw(sgcl_formula_render(f.p, &out));
    rendered.push_back(out);
    text += std::string(out) + "\n";
    sgcl_string_free(out);
  }
  print(o, {{"command", "fmt"}, {"formulas", rendered}}, text);
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic coalition logic workbench"};
  Options o;
  const std::vector<std::string> commands{"check",  "extent", "witness", "verify-proof", "audit-soundness",
                                          "canonical", "decide", "demo-incompleteness", "fmt"};
  app.add_option("command", o.command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--game", o.game, "Game JSON file");
  app.add_option("--formula", o.formula, "Formula text");
  app.add_option("--formula-file", o.formula_file, "File with one formula per line");
  app.add_option("--state", o.state, "State name");
  app.add_option("--proof", o.proof, "Proof JSON file");
  auto* system_opt = app.add_option("--system", o.system, "Proof system")->check(CLI::IsMember({"L", "L+"}));
  app.add_option("--n", o.n, "Demo parameter N");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-closure", o.max_closure, "Closure size cap");
  app.add_option("--budget", o.budget, "Sample budget");
  app.add_option("--out", o.out, "Write the canonical game here (sidecar next to it)");
  app.add_flag("--zero-floor", o.zero_floor, "canonical: give mu = 0 rows a small mass on their targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (o.command == "check") return cmd_check(o);
    if (o.command == "extent") return cmd_extent(o);
    if (o.command == "witness") return cmd_witness(o);
    if (o.command == "verify-proof") return cmd_verify_proof(o, system_opt->count() > 0);
    if (o.command == "audit-soundness") return cmd_audit(o);
    if (o.command == "canonical") return cmd_canonical(o);
    if (o.command == "decide") return cmd_decide(o);
    if (o.command == "demo-incompleteness") return cmd_demo(o);
    if (o.command == "fmt") return cmd_fmt(o);
  } catch (const Failure& f) {
    if (o.format == "json") std::cout << json{{"error", f.kind}, {"message", f.message}}.dump() << '\n';
    std::cerr << "error (" << f.kind << "): " << f.message << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
