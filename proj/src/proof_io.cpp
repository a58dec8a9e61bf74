#include <fstream>
#include <map>

#include "sgcl/error.hpp"
#include "sgcl/proof.hpp"

namespace sgcl {

using nlohmann::json;

namespace {

constexpr int kMaxImportDepth = 32;

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::Schema, "proof " + where + ": " + msg);
}

std::string rule_string(const Justification& why) {
  switch (why.rule) {
    case Rule::Tautology: return "taut";
    case Rule::AxCooperation: return "coop";
    case Rule::AxMonotonicity: return "mono-ax";
    case Rule::AxFalsehood: return "false-ax";
    case Rule::Assumption: return "assume";
    case Rule::TheoremImport: return "import:" + why.theorem_name;
    case Rule::MP: return "mp:" + std::to_string(why.i + 1) + "," + std::to_string(why.j + 1);
    case Rule::Necessitation: return "nec:" + std::to_string(why.i + 1);
    case Rule::RuleMonotonicity: return "mono-rule:" + std::to_string(why.i + 1);
  }
  return "?";
}

std::size_t line_number(const std::string& text, const std::string& where) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || v == 0) schema_error(where, "bad line number '" + text + "'");
  return v - 1;
}

Derivation parse_proof(const json& j, const std::filesystem::path& base_dir, const json* outer_theorems, int depth);

std::shared_ptr<const Derivation> resolve_import(const std::string& name, const json& j,
                                                 const std::filesystem::path& base_dir, const json* outer_theorems,
                                                 int depth, std::map<std::string, std::shared_ptr<const Derivation>>& cache,
                                                 const std::string& where) {
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  if (depth >= kMaxImportDepth) schema_error(where, "theorem imports nest too deeply");
  const json* theorems = j.contains("theorems") ? &j["theorems"] : outer_theorems;
  std::shared_ptr<const Derivation> proof;
  if (theorems && theorems->is_object() && theorems->contains(name)) {
    proof = std::make_shared<const Derivation>(parse_proof((*theorems)[name], base_dir, theorems, depth + 1));
  } else {
    const auto path = base_dir / (name + ".json");
    std::ifstream in(path);
    if (!in) schema_error(where, "cannot resolve theorem '" + name + "' (no embedded proof and no " + path.string() + ")");
    json sub;
    try {
      sub = json::parse(in);
    } catch (const json::parse_error& e) {
      schema_error(where, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
    proof = std::make_shared<const Derivation>(parse_proof(sub, path.parent_path(), nullptr, depth + 1));
  }
  cache.emplace(name, proof);
  return proof;
}

Derivation parse_proof(const json& j, const std::filesystem::path& base_dir, const json* outer_theorems, int depth) {
  if (!j.is_object()) schema_error("", "expected an object");
  Derivation d;
  if (auto it = j.find("system"); it != j.end()) {
    if (!it->is_string()) schema_error("/system", "expected \"L\" or \"L+\"");
    try {
      d.system = system_from_string(it->get<std::string>());
    } catch (const Error& e) {
      schema_error("/system", e.what());
    }
  }
  if (auto it = j.find("mode"); it != j.end() && !(it->is_string() && *it == "theorem")) {
    if (!it->is_object() || !it->contains("assumptions") || !(*it)["assumptions"].is_array()) {
      schema_error("/mode", "expected \"theorem\" or {\"assumptions\": [...]}");
    }
    std::vector<Formula> as;
    const json& list = (*it)["assumptions"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/mode/assumptions/" + std::to_string(i);
      if (!list[i].is_string()) schema_error(where, "expected a formula string");
      try {
        as.push_back(parse(list[i].get<std::string>()));
      } catch (const Error& e) {
        schema_error(where, e.what());
      }
    }
    d.assumptions = std::move(as);
  }
  auto lit = j.find("lines");
  if (lit == j.end() || !lit->is_array()) schema_error("/lines", "expected an array of lines");

  std::map<std::string, std::shared_ptr<const Derivation>> cache;
  for (std::size_t k = 0; k < lit->size(); ++k) {
    const json& l = (*lit)[k];
    const std::string where = "line " + std::to_string(k + 1);
    if (!l.is_object() || !l.contains("formula") || !l.contains("rule") || !l["formula"].is_string() ||
        !l["rule"].is_string()) {
      schema_error(where, "expected {\"formula\": str, \"rule\": str}");
    }
    Line line{Formula::bot(), {}};
    try {
      line.formula = parse(l["formula"].get<std::string>());
    } catch (const Error& e) {
      schema_error(where, e.what());
    }
    const std::string rule = l["rule"].get<std::string>();
    const auto colon = rule.find(':');
    const std::string head = rule.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : rule.substr(colon + 1);
    if (head == "taut") line.why = Justification::of(Rule::Tautology);
    else if (head == "coop") line.why = Justification::of(Rule::AxCooperation);
    else if (head == "mono-ax") line.why = Justification::of(Rule::AxMonotonicity);
    else if (head == "false-ax") line.why = Justification::of(Rule::AxFalsehood);
    else if (head == "assume") line.why = Justification::of(Rule::Assumption);
    else if (head == "import") {
      if (arg.empty()) schema_error(where, "import needs a theorem name");
      line.why = Justification::import(arg, resolve_import(arg, j, base_dir, outer_theorems, depth, cache, where));
    } else if (head == "mp") {
      const auto comma = arg.find(',');
      if (comma == std::string::npos) schema_error(where, "mp needs two line numbers, as in mp:1,2");
      line.why = Justification::mp(line_number(arg.substr(0, comma), where), line_number(arg.substr(comma + 1), where));
    } else if (head == "nec") {
      line.why = Justification::nec(line_number(arg, where));
    } else if (head == "mono-rule") {
      line.why = Justification::mono_rule(line_number(arg, where));
    } else {
      schema_error(where, "unknown rule '" + rule + "'");
    }
    d.lines.push_back(std::move(line));
  }
  return d;
}

void collect_theorems(const Derivation& d, json& out) {
  for (const auto& line : d.lines) {
    if (line.why.rule != Rule::TheoremImport || !line.why.theorem) continue;
    json body = proof_to_json(*line.why.theorem);
    body.erase("theorems");
    if (out.contains(line.why.theorem_name)) {
      if (out[line.why.theorem_name] != body) {
        throw Error(ErrorKind::Argument, "two different theorems share the name '" + line.why.theorem_name + "'");
      }
      continue;
    }
    out[line.why.theorem_name] = std::move(body);
    collect_theorems(*line.why.theorem, out);
  }
}

}  // namespace

json proof_to_json(const Derivation& d) {
  json j;
  j["system"] = to_string(d.system);
  if (d.theorem_mode()) {
    j["mode"] = "theorem";
  } else {
    json as = json::array();
    for (const auto& a : *d.assumptions) as.push_back(render(a));
    j["mode"] = {{"assumptions", as}};
  }
  json lines = json::array();
  for (const auto& line : d.lines) lines.push_back({{"formula", render(line.formula)}, {"rule", rule_string(line.why)}});
  j["lines"] = std::move(lines);
  json theorems = json::object();
  collect_theorems(d, theorems);
  if (!theorems.empty()) j["theorems"] = std::move(theorems);
  return j;
}

Derivation proof_from_json(const json& j, const std::filesystem::path& base_dir) {
  return parse_proof(j, base_dir, nullptr, 0);
}

Derivation load_proof(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return proof_from_json(j, path.parent_path());
}

void save_proof(const Derivation& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << proof_to_json(d).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace sgcl
