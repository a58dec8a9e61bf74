#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgcl/rational.hpp"

namespace sgcl {

using AgentId = std::string;

// A set of agents, kept sorted and duplicate-free.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::initializer_list<AgentId> members);
  explicit Coalition(std::vector<AgentId> members);

  const std::vector<AgentId>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(const AgentId& a) const;

  bool disjoint(const Coalition& other) const;
  bool subset_of(const Coalition& other) const;
  Coalition united(const Coalition& other) const;
  Coalition minus(const Coalition& other) const;

  // "a,b" (no brackets); empty string for the empty coalition.
  std::string str() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::vector<AgentId> members_;
};

enum class Kind : unsigned char { Var, Bot, Neg, Impl, Coal };

struct FormulaNode;

// Immutable formula value with structural equality. Copies share the node.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula bot();
  static Formula top();  // Neg(Bot)
  static Formula neg(Formula f);
  static Formula impl(Formula lhs, Formula rhs);
  // Throws Error(SubscriptRange) unless 0 <= p <= 1.
  static Formula coal(Coalition c, Rational p, Formula body);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }
  bool is_top() const noexcept;

  const std::string& name() const;          // Var
  const Formula& sub() const;               // Neg operand, Coal body
  const Formula& lhs() const;               // Impl
  const Formula& rhs() const;               // Impl
  const Coalition& coalition() const;       // Coal
  const Rational& subscript() const;        // Coal

  std::size_t size() const noexcept;        // node count
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

std::string render(const Formula& f);

// Parses the concrete syntax. When `universe` is given, every agent must be in it.
Formula parse(std::string_view text, const std::set<AgentId>* universe = nullptr);
inline Formula parse(std::string_view text, const std::set<AgentId>& universe) {
  return parse(text, &universe);
}

// True iff no Coal node uses the empty coalition.
bool in_plus_language(const Formula& f);

// All subformulas including f itself, deduplicated, in canonical order.
std::vector<Formula> subformulas(const Formula& f);

// Variables and agents mentioned anywhere in f.
std::set<std::string> variables(const Formula& f);
std::set<AgentId> agents(const Formula& f);

// Size first, then rendered text.
bool canonical_less(const Formula& a, const Formula& b);

// A subformula-closed set, closed under single negation of non-negations.
class ClosureSet {
 public:
  const std::vector<Formula>& formulas() const noexcept { return formulas_; }
  std::size_t size() const noexcept { return formulas_.size(); }
  bool contains(const Formula& f) const;
  std::size_t index_of(const Formula& f) const;  // npos if absent

  friend bool operator==(const ClosureSet&, const ClosureSet&) = default;

 private:
  friend ClosureSet closure(std::span<const Formula> seed);
  std::vector<Formula> formulas_;  // canonical order, no duplicates
};

ClosureSet closure(std::span<const Formula> seed);
inline ClosureSet closure(std::initializer_list<Formula> seed) {
  return closure(std::span<const Formula>(seed.begin(), seed.size()));
}

inline constexpr std::size_t kDefaultAtomCap = 20;

// Truth-table validity of the propositional abstraction (Var and Coal nodes
// become atoms). Throws Error(Limit) when more than `atom_cap` atoms occur.
bool is_tautology(const Formula& f, std::size_t atom_cap = kDefaultAtomCap);

// Joint propositional satisfiability of the abstraction of a formula set.
bool is_satisfiable(std::span<const Formula> fs, std::size_t atom_cap = kDefaultAtomCap);

}  // namespace sgcl

template <>
struct std::hash<sgcl::Formula> {
  std::size_t operator()(const sgcl::Formula& f) const noexcept { return f.hash(); }
};
