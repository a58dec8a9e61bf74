#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "sgcl/sgcl.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sgcl_string_free(s);
  return out;
}

const std::string kData = SGCL_DATA_DIR;

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(sgcl_version(), "");
  EXPECT_STREQ(sgcl_status_name(SGCL_OK), "ok");
  EXPECT_STRNE(sgcl_status_name(SGCL_ERR_SYNTAX), sgcl_status_name(SGCL_ERR_IO));
}

TEST(CApi, FormulaParseRender) {
  sgcl_formula* f = nullptr;
  ASSERT_EQ(sgcl_formula_parse("[ b , a ]_0.5 (v->u)", &f), SGCL_OK);
  char* text = nullptr;
  ASSERT_EQ(sgcl_formula_render(f, &text), SGCL_OK);
  EXPECT_EQ(take(text), "[a,b]_1/2 (v -> u)");
  sgcl_formula_free(f);
  sgcl_formula_free(nullptr);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  sgcl_formula* f = nullptr;
  EXPECT_EQ(sgcl_formula_parse("v ->", &f), SGCL_ERR_SYNTAX);
  EXPECT_EQ(f, nullptr);
  EXPECT_STRNE(sgcl_last_error(), "");
  EXPECT_EQ(sgcl_formula_parse("[a]_2 v", &f), SGCL_ERR_SUBSCRIPT_RANGE);
  sgcl_game* g = nullptr;
  EXPECT_EQ(sgcl_game_load("/nonexistent/game.json", 0, &g), SGCL_ERR_IO);
  EXPECT_EQ(sgcl_game_from_json("{\"agents\": []}", 0, &g), SGCL_ERR_SCHEMA);
  EXPECT_EQ(sgcl_formula_parse(nullptr, &f), SGCL_ERR_ARGUMENT);
}

TEST(CApi, CheckExtentWitness) {
  sgcl_game* g = nullptr;
  ASSERT_EQ(sgcl_game_fig3(1, &g), SGCL_OK);
  sgcl_formula* f = nullptr;
  ASSERT_EQ(sgcl_formula_parse("[]_1 true", &f), SGCL_OK);
  int h = -1;
  ASSERT_EQ(sgcl_check(g, "s", f, &h), SGCL_OK);
  EXPECT_EQ(h, 0);
  ASSERT_EQ(sgcl_check(g, "t", f, &h), SGCL_OK);
  EXPECT_EQ(h, 1);
  EXPECT_EQ(sgcl_check(g, "f", f, &h), SGCL_ERR_FAILURE_STATE);
  EXPECT_EQ(sgcl_check(g, "zz", f, &h), SGCL_ERR_UNKNOWN_STATE);
  char* ext = nullptr;
  ASSERT_EQ(sgcl_extent(g, f, &ext), SGCL_OK);
  EXPECT_EQ(json::parse(take(ext)), json::parse(R"(["t"])"));

  sgcl_formula* m = nullptr;
  ASSERT_EQ(sgcl_formula_parse("[]_9/10 true", &m), SGCL_OK);
  char* w = nullptr;
  ASSERT_EQ(sgcl_witness(g, "s", m, &w), SGCL_OK);
  const json wj = json::parse(take(w));
  EXPECT_TRUE(wj.at("found"));
  EXPECT_EQ(wj.at("guaranteed_survival"), "9/10");
  sgcl_formula_free(m);
  sgcl_formula_free(f);
  sgcl_game_free(g);
}

TEST(CApi, GameJsonRoundTripAndValidate) {
  sgcl_game* g = nullptr;
  ASSERT_EQ(sgcl_game_load((kData + "/fig2.json").c_str(), 0, &g), SGCL_OK);
  char* text = nullptr;
  ASSERT_EQ(sgcl_game_to_json(g, &text), SGCL_OK);
  const std::string dumped = take(text);
  sgcl_game* h = nullptr;
  ASSERT_EQ(sgcl_game_from_json(dumped.c_str(), 0, &h), SGCL_OK);
  char* vs = nullptr;
  ASSERT_EQ(sgcl_game_validate(h, &vs), SGCL_OK);
  EXPECT_EQ(json::parse(take(vs)), json::array());
  sgcl_game_free(h);
  sgcl_game_free(g);
}

TEST(CApi, ProofVerify) {
  sgcl_proof* p = nullptr;
  ASSERT_EQ(sgcl_proof_load((kData + "/proofs/lemma1.json").c_str(), &p), SGCL_OK);
  char* report = nullptr;
  int ok = 0;
  ASSERT_EQ(sgcl_proof_verify(p, &report, &ok), SGCL_OK);
  EXPECT_EQ(ok, 1);
  take(report);
  sgcl_proof_free(p);

  ASSERT_EQ(sgcl_proof_load((kData + "/proofs/bad_necessitation.json").c_str(), &p), SGCL_OK);
  ASSERT_EQ(sgcl_proof_verify(p, &report, &ok), SGCL_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_EQ(json::parse(take(report)).at("line"), 2);
  sgcl_proof_free(p);

  ASSERT_EQ(sgcl_proof_load((kData + "/proofs/mono_rule_lplus.json").c_str(), &p), SGCL_OK);
  ASSERT_EQ(sgcl_proof_set_system(p, "L"), SGCL_OK);
  ASSERT_EQ(sgcl_proof_verify(p, &report, &ok), SGCL_OK);
  EXPECT_EQ(ok, 0);
  take(report);
  EXPECT_EQ(sgcl_proof_set_system(p, "K"), SGCL_ERR_ARGUMENT);
  sgcl_proof_free(p);
}

TEST(CApi, CanonicalClassifySearchDemo) {
  char* report = nullptr;
  int clean = 0;
  ASSERT_EQ(sgcl_canonical(R"(["[a]_1/2 v"])", "L", 24, &report, &clean), SGCL_OK);
  EXPECT_EQ(clean, 1);
  EXPECT_TRUE(json::parse(take(report)).at("clean"));

  ASSERT_EQ(sgcl_canonical(R"(["[a]_0 v"])", "L", 24, &report, &clean), SGCL_OK);
  EXPECT_EQ(clean, 0);
  EXPECT_TRUE(json::parse(take(report)).at("floor").is_null());
  ASSERT_EQ(sgcl_canonical_ex(R"(["[a]_0 v"])", "L", 24, 1, &report, &clean), SGCL_OK);
  EXPECT_EQ(clean, 1);
  EXPECT_EQ(json::parse(take(report)).at("floor"), "1/2");

  sgcl_formula* f = nullptr;
  ASSERT_EQ(sgcl_formula_parse("[a]_1/2 v", &f), SGCL_OK);
  int refuted = 0;
  ASSERT_EQ(sgcl_classify(f, "L", 24, &report, &refuted), SGCL_OK);
  EXPECT_EQ(refuted, 1);
  EXPECT_EQ(json::parse(take(report)).at("verdict"), "refuted");
  sgcl_formula_free(f);

  ASSERT_EQ(sgcl_formula_parse("[]_1 true", &f), SGCL_OK);
  ASSERT_EQ(sgcl_bounded_search(f, R"({"budget": 200, "seed": 3, "jobs": 2})", &report, &refuted), SGCL_OK);
  EXPECT_EQ(refuted, 1);
  EXPECT_EQ(json::parse(take(report)).at("seed"), 3);
  EXPECT_EQ(sgcl_bounded_search(f, R"({"grid": ["1/2"]})", &report, &refuted), SGCL_ERR_ARGUMENT);
  sgcl_formula_free(f);

  int ok = 0;
  ASSERT_EQ(sgcl_demo_incompleteness(3, &report, &ok), SGCL_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(json::parse(take(report)).at("prefix").size(), 4u);
}

TEST(CApi, SoundnessAudit) {
  sgcl_game* g = nullptr;
  ASSERT_EQ(sgcl_game_fig3(2, &g), SGCL_OK);
  char* report = nullptr;
  ASSERT_EQ(sgcl_audit_soundness(g, R"(["true", "v"])", 1000, 0, &report), SGCL_OK);
  EXPECT_TRUE(json::parse(take(report)).at("violations").empty());
  EXPECT_EQ(sgcl_audit_soundness(g, "not json", 10, 0, &report), SGCL_ERR_SCHEMA);
  sgcl_game_free(g);
}
