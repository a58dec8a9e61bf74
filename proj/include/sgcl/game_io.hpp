#pragma once

#include <filesystem>

#include "sgcl/game.hpp"
#include <nlohmann/json.hpp>

namespace sgcl {

// Game file schema:
//   { "agents": [...], "states": [...], "failures": [...], "actions": [...],
//     "transitions": [ { "from": s, "profile": {agent: action}, "to": {state: "p"} } ],
//     "valuation": { var: [states] } }
// Probabilities are strings ("1/3", "0.25"); JSON numbers are rejected.
nlohmann::json game_to_json(const Game& g);

// Throws Error(Schema) with a JSON pointer on malformed input. Validation is
// left to the caller.
Game game_from_json(const nlohmann::json& j);

// Runs validate() and throws Error(InvalidGame) on violations unless `force`.
Game load_game(const std::filesystem::path& path, bool force = false);
void save_game(const Game& g, const std::filesystem::path& path);

nlohmann::json profile_to_json(const std::map<AgentId, ActionId>& assignment);

}  // namespace sgcl
