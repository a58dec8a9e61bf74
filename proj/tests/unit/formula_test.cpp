#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "sgcl/error.hpp"
#include "sgcl/formula.hpp"
#include "support/generators.hpp"

using namespace sgcl;

namespace {

Formula v() { return Formula::var("v"); }
Formula u() { return Formula::var("u"); }

std::set<Formula> as_set(const ClosureSet& c) { return {c.formulas().begin(), c.formulas().end()}; }

// Brute-force truth table over the abstraction, written independently of
// the library: collect atoms, try every assignment.
void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Coal:
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      return;
    case Kind::Bot:
      return;
    case Kind::Neg:
      collect_atoms(f.sub(), out);
      return;
    case Kind::Impl:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

bool eval_abs(const Formula& f, const std::map<Formula, bool>& a) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Coal:
      return a.at(f);
    case Kind::Bot:
      return false;
    case Kind::Neg:
      return !eval_abs(f.sub(), a);
    case Kind::Impl:
      return !eval_abs(f.lhs(), a) || eval_abs(f.rhs(), a);
  }
  return false;
}

bool brute_tautology(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
    std::map<Formula, bool> a;
    for (std::size_t i = 0; i < atoms.size(); ++i) a[atoms[i]] = (mask >> i) & 1;
    if (!eval_abs(f, a)) return false;
  }
  return true;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Argument;
}

}  // namespace

TEST(FormulaParse, CoalitionWithDecimalSubscript) {
  EXPECT_EQ(parse("[a,b]_0.9 pass"), Formula::coal(Coalition{"a", "b"}, Rational(9, 10), Formula::var("pass")));
}

TEST(FormulaParse, Implication) {
  EXPECT_EQ(parse("p -> p"), Formula::impl(Formula::var("p"), Formula::var("p")));
}

TEST(FormulaParse, NegatedEmptyCoalitionTop) {
  EXPECT_EQ(parse("~[]_1 true"), Formula::neg(Formula::coal(Coalition{}, Rational(1), Formula::neg(Formula::bot()))));
}

TEST(FormulaParse, ImplicationIsRightAssociativeAndPrefixesBindTighter) {
  EXPECT_EQ(parse("v -> u -> v"), Formula::impl(v(), Formula::impl(u(), v())));
  EXPECT_EQ(parse("~v -> u"), Formula::impl(Formula::neg(v()), u()));
  EXPECT_EQ(parse("[a]_1/2 v -> u"), Formula::impl(Formula::coal({"a"}, Rational(1, 2), v()), u()));
  EXPECT_EQ(parse("[a]_1 ~[b]_0 v"),
            Formula::coal({"a"}, Rational(1), Formula::neg(Formula::coal({"b"}, Rational(0), v()))));
}

TEST(FormulaParse, WhitespaceInsensitiveAndBracedSubscripts) {
  EXPECT_EQ(parse("  [ b , a ]_{1/2}(v->u) "), Formula::coal({"a", "b"}, Rational(1, 2), Formula::impl(v(), u())));
}

TEST(FormulaParse, Errors) {
  EXPECT_EQ(kind_of([] { parse("v ->"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse("(v"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse("[a]_ v"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse("[a]_3/2 v"); }), ErrorKind::SubscriptRange);
  const std::set<AgentId> universe{"a"};
  EXPECT_EQ(kind_of([&] { parse("[c]_1 v", universe); }), ErrorKind::UnknownAgent);
  EXPECT_NO_THROW(parse("[a]_1 v", universe));
}

TEST(FormulaRender, Examples) {
  EXPECT_EQ(render(Formula::coal({"a"}, Rational(0), v())), "[a]_0 v");
  EXPECT_EQ(render(Formula::impl(Formula::var("p"), Formula::bot())), "(p -> false)");
  EXPECT_EQ(render(Formula::coal({}, Rational(1, 2), Formula::top())), "[]_1/2 true");
}

TEST(FormulaPlus, Examples) {
  EXPECT_TRUE(in_plus_language(Formula::coal({"a"}, Rational(1), v())));
  EXPECT_FALSE(in_plus_language(Formula::coal({}, Rational(0), v())));
  EXPECT_FALSE(in_plus_language(Formula::impl(v(), Formula::coal({}, Rational(1), Formula::top()))));
}

TEST(FormulaClosure, Examples) {
  EXPECT_EQ(as_set(closure({Formula::neg(v())})), (std::set<Formula>{v(), Formula::neg(v())}));

  const Formula box = Formula::coal({"a"}, Rational(1, 2), v());
  EXPECT_EQ(as_set(closure({box})), (std::set<Formula>{box, Formula::neg(box), v(), Formula::neg(v())}));

  const Formula imp = Formula::impl(u(), v());
  EXPECT_EQ(as_set(closure({imp})), (std::set<Formula>{imp, Formula::neg(imp), u(), Formula::neg(u()), v(),
                                                       Formula::neg(v())}));
}

TEST(FormulaClosure, CanonicalOrder) {
  const auto c = closure({parse("[a]_1/4 v -> [a,b]_1/4 v")});
  EXPECT_TRUE(std::is_sorted(c.formulas().begin(), c.formulas().end(), canonical_less));
}

TEST(FormulaTautology, Examples) {
  EXPECT_TRUE(is_tautology(Formula::impl(Formula::var("p"), Formula::var("p"))));
  const Formula box = Formula::coal({"a"}, Rational(1), v());
  EXPECT_TRUE(is_tautology(Formula::impl(box, box)));
  EXPECT_FALSE(is_tautology(Formula::impl(Formula::var("p"), Formula::var("q"))));
}

TEST(FormulaTautology, AtomCap) {
  Formula f = Formula::var("x0");
  for (int i = 1; i < 22; ++i) f = Formula::impl(Formula::var("x" + std::to_string(i)), f);
  EXPECT_EQ(kind_of([&] { is_tautology(f); }), ErrorKind::Limit);
}

TEST(FormulaProperties, RenderParseRoundTrip) {
  std::mt19937_64 rng(11);
  testkit::FormulaShape shape;
  shape.connectives = 7;
  for (int i = 0; i < 2000; ++i) {
    const Formula f = testkit::random_formula(rng, shape);
    EXPECT_EQ(parse(render(f)), f) << render(f);
  }
}

TEST(FormulaProperties, ClosureIdempotentAndBounded) {
  std::mt19937_64 rng(12);
  testkit::FormulaShape shape;
  shape.connectives = 6;
  for (int i = 0; i < 500; ++i) {
    const Formula f = testkit::random_formula(rng, shape);
    const ClosureSet c = closure({f});
    EXPECT_EQ(closure(std::span<const Formula>(c.formulas())), c) << render(f);
    EXPECT_LE(c.size(), 2 * subformulas(f).size() + 2) << render(f);
    for (const auto& s : subformulas(f)) EXPECT_TRUE(c.contains(s));
  }
}

TEST(FormulaProperties, PlusLanguageClosedUnderSubformulas) {
  std::mt19937_64 rng(13);
  testkit::FormulaShape shape;
  shape.connectives = 6;
  int plus = 0;
  for (int i = 0; i < 1000; ++i) {
    const Formula f = testkit::random_formula(rng, shape);
    if (!in_plus_language(f)) continue;
    ++plus;
    for (const auto& s : subformulas(f)) EXPECT_TRUE(in_plus_language(s)) << render(s);
  }
  EXPECT_GT(plus, 100);
}

TEST(FormulaProperties, TautologyAgreesWithBruteForce) {
  std::mt19937_64 rng(14);
  testkit::FormulaShape shape;
  shape.connectives = 8;
  int tautologies = 0;
  for (int i = 0; i < 3000; ++i) {
    const Formula f = testkit::random_formula(rng, shape);
    std::vector<Formula> atoms;
    collect_atoms(f, atoms);
    ASSERT_LE(atoms.size(), 10u);
    const bool expected = brute_tautology(f);
    tautologies += expected;
    EXPECT_EQ(is_tautology(f), expected) << render(f);
  }
  EXPECT_GT(tautologies, 50);
}

TEST(FormulaProperties, AgentsAndVariables) {
  const Formula f = parse("[a,b]_1/2 (v -> [c]_0 u)");
  EXPECT_EQ(agents(f), (std::set<AgentId>{"a", "b", "c"}));
  EXPECT_EQ(variables(f), (std::set<std::string>{"u", "v"}));
}
