#include "sgcl/game_io.hpp"

#include <fstream>
#include <sstream>

#include "sgcl/error.hpp"

namespace sgcl {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& msg) {
  throw Error(ErrorKind::Schema, "schema error at " + (pointer.empty() ? "/" : pointer) + ": " + msg);
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

const json& member(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) schema_error(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(at, "missing required key '" + key + "'");
  return *it;
}

std::vector<std::string> string_array(const json& j, const std::string& at) {
  if (!j.is_array()) schema_error(at, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(at + "/" + std::to_string(i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

Rational probability(const json& j, const std::string& at) {
  if (!j.is_string()) schema_error(at, "probabilities must be strings such as \"1/3\" or \"0.25\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(at, e.what());
  }
}

}  // namespace

json profile_to_json(const std::map<AgentId, ActionId>& assignment) {
  json out = json::object();
  for (const auto& [a, d] : assignment) out[a] = d;
  return out;
}

json game_to_json(const Game& g) {
  json j;
  j["agents"] = g.agents();
  j["states"] = g.states();
  j["failures"] = json::array();
  for (const auto& f : g.failures()) j["failures"].push_back(f);
  j["actions"] = g.actions();
  json rows = json::array();
  for (std::size_t s = 0; s < g.state_count(); ++s) {
    for (std::size_t d = 0; d < g.profile_count(); ++d) {
      const Row* row = g.row(s, d);
      if (!row) continue;
      json to = json::object();
      for (const auto& [t, p] : *row) to[g.states()[t]] = p.str();
      rows.push_back({{"from", g.states()[s]}, {"profile", profile_to_json(g.profile_at(d).assignment)}, {"to", to}});
    }
  }
  j["transitions"] = std::move(rows);
  json val = json::object();
  for (const auto& [var, states] : g.valuation()) {
    val[var] = json::array();
    for (const auto& s : states) val[var].push_back(s);
  }
  j["valuation"] = std::move(val);
  return j;
}

Game game_from_json(const json& j) {
  if (!j.is_object()) schema_error("", "expected a game object");
  auto agents = string_array(member(j, "agents", ""), "/agents");
  auto states = string_array(member(j, "states", ""), "/states");
  auto failure_list = string_array(member(j, "failures", ""), "/failures");
  auto actions = string_array(member(j, "actions", ""), "/actions");
  const json& transitions = member(j, "transitions", "");
  if (!transitions.is_array()) schema_error("/transitions", "expected an array");

  Game g(agents, states, std::set<StateId>(failure_list.begin(), failure_list.end()), actions);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string at = "/transitions/" + std::to_string(i);
    const json& t = transitions[i];
    const json& from = member(t, "from", at);
    if (!from.is_string()) schema_error(at + "/from", "expected a state name");
    const auto s = g.find_state(from.get<std::string>());
    if (!s) schema_error(at + "/from", "unknown state '" + from.get<std::string>() + "'");

    const json& prof = member(t, "profile", at);
    if (!prof.is_object()) schema_error(at + "/profile", "expected an object mapping agents to actions");
    std::vector<std::size_t> acts(agents.size());
    std::vector<bool> given(agents.size(), false);
    for (const auto& [agent, action] : prof.items()) {
      const std::string pat = at + "/profile/" + escape_pointer(agent);
      std::size_t ai = 0;
      try {
        ai = g.agent_index(agent);
      } catch (const Error&) {
        schema_error(pat, "unknown agent '" + agent + "'");
      }
      if (!action.is_string()) schema_error(pat, "expected an action name");
      try {
        acts[ai] = g.action_index(action.get<std::string>());
      } catch (const Error&) {
        schema_error(pat, "unknown action '" + action.get<std::string>() + "'");
      }
      given[ai] = true;
    }
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (!given[a]) schema_error(at + "/profile", "profile does not assign agent '" + agents[a] + "'");
    }
    const std::size_t d = g.profile_index(acts);
    if (!seen.emplace(*s, d).second) schema_error(at, "duplicate row for this state and profile");

    const json& to = member(t, "to", at);
    if (!to.is_object()) schema_error(at + "/to", "expected an object mapping states to probabilities");
    Row row;
    for (const auto& [target, p] : to.items()) {
      const std::string pat = at + "/to/" + escape_pointer(target);
      const auto ti = g.find_state(target);
      if (!ti) schema_error(pat, "unknown state '" + target + "'");
      row.emplace_back(*ti, probability(p, pat));
    }
    g.set_row(*s, d, std::move(row));
  }

  if (auto it = j.find("valuation"); it != j.end()) {
    if (!it->is_object()) schema_error("/valuation", "expected an object");
    for (const auto& [var, targets] : it->items()) {
      auto list = string_array(targets, "/valuation/" + escape_pointer(var));
      g.set_valuation(var, std::set<StateId>(list.begin(), list.end()));
    }
  }
  return g;
}

Game load_game(const std::filesystem::path& path, bool force) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  Game g = game_from_json(j);
  if (!force) {
    const auto violations = validate(g);
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << "'" << path.string() << "' is not a valid game (" << violations.size() << " violation"
          << (violations.size() == 1 ? "" : "s") << "): " << violations.front().message;
      throw Error(ErrorKind::InvalidGame, msg.str());
    }
  }
  return g;
}

void save_game(const Game& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << game_to_json(g).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace sgcl
