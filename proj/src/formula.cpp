#include "sgcl/formula.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "sgcl/error.hpp"

namespace sgcl {

// ---------------------------------------------------------------------------
// Coalition

Coalition::Coalition(std::initializer_list<AgentId> members)
    : Coalition(std::vector<AgentId>(members)) {}

Coalition::Coalition(std::vector<AgentId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(const AgentId& a) const {
  return std::binary_search(members_.begin(), members_.end(), a);
}

bool Coalition::disjoint(const Coalition& other) const {
  auto i = members_.begin();
  auto j = other.members_.begin();
  while (i != members_.end() && j != other.members_.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

bool Coalition::subset_of(const Coalition& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

Coalition Coalition::united(const Coalition& other) const {
  std::vector<AgentId> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return Coalition(std::move(out));
}

Coalition Coalition::minus(const Coalition& other) const {
  std::vector<AgentId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return Coalition(std::move(out));
}

std::string Coalition::str() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += members_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula nodes

struct FormulaNode {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
  Coalition coalition;
  Rational subscript;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::shared_ptr<FormulaNode> make_node(Kind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->hash = static_cast<std::size_t>(k) * 0x100000001b3ULL;
  return n;
}

const Formula& bot_singleton() {
  static const Formula b = Formula::bot();
  return b;
}

}  // namespace

Formula Formula::var(std::string name) {
  auto n = make_node(Kind::Var);
  n->hash = mix(n->hash, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::bot() {
  static const std::shared_ptr<const FormulaNode> shared = make_node(Kind::Bot);
  return Formula(shared);
}

Formula Formula::top() { return neg(bot_singleton()); }

Formula Formula::neg(Formula f) {
  auto n = make_node(Kind::Neg);
  n->size = 1 + f.size();
  n->hash = mix(n->hash, f.hash());
  n->kids.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  auto n = make_node(Kind::Impl);
  n->size = 1 + lhs.size() + rhs.size();
  n->hash = mix(mix(n->hash, lhs.hash()), rhs.hash());
  n->kids.push_back(std::move(lhs));
  n->kids.push_back(std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::coal(Coalition c, Rational p, Formula body) {
  if (!p.in_unit_interval()) {
    throw Error(ErrorKind::SubscriptRange, "subscript " + p.str() + " outside [0,1]");
  }
  auto n = make_node(Kind::Coal);
  n->size = 1 + body.size();
  std::size_t h = mix(n->hash, p.hash());
  for (const auto& a : c.members()) h = mix(h, std::hash<std::string>{}(a));
  n->hash = mix(h, body.hash());
  n->coalition = std::move(c);
  n->subscript = p;
  n->kids.push_back(std::move(body));
  return Formula(std::move(n));
}

Kind Formula::kind() const noexcept { return node_->kind; }
bool Formula::is_top() const noexcept { return is(Kind::Neg) && node_->kids[0].is(Kind::Bot); }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::sub() const { return node_->kids.at(0); }
const Formula& Formula::lhs() const { return node_->kids.at(0); }
const Formula& Formula::rhs() const { return node_->kids.at(1); }
const Coalition& Formula::coalition() const { return node_->coalition; }
const Rational& Formula::subscript() const { return node_->subscript; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Kind::Var: return x.name <=> y.name;
    case Kind::Bot: return std::strong_ordering::equal;
    case Kind::Neg: return x.kids[0] <=> y.kids[0];
    case Kind::Impl:
      if (auto c = x.kids[0] <=> y.kids[0]; c != 0) return c;
      return x.kids[1] <=> y.kids[1];
    case Kind::Coal:
      if (auto c = x.coalition <=> y.coalition; c != 0) return c;
      if (auto c = x.subscript <=> y.subscript; c != 0) return c;
      return x.kids[0] <=> y.kids[0];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.name(); return;
    case Kind::Bot: out += "false"; return;
    case Kind::Neg:
      if (f.is_top()) {
        out += "true";
        return;
      }
      out += '~';
      render_into(f.sub(), out);
      return;
    case Kind::Impl:
      out += '(';
      render_into(f.lhs(), out);
      out += " -> ";
      render_into(f.rhs(), out);
      out += ')';
      return;
    case Kind::Coal:
      out += '[';
      out += f.coalition().str();
      out += "]_";
      out += f.subscript().str();
      out += ' ';
      render_into(f.sub(), out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  Parser(std::string_view text, const std::set<AgentId>* universe) : text_(text), universe_(universe) {}

  Formula run() {
    Formula f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::Syntax) const {
    throw Error(kind, "at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula implication() {
    Formula lhs = unary();
    if (accept("->")) return Formula::impl(std::move(lhs), implication());
    return lhs;
  }

  Formula unary() {
    skip_ws();
    if (accept("~")) return Formula::neg(unary());
    if (pos_ < text_.size() && text_[pos_] == '[') {
      auto [c, p] = modal();
      return Formula::coal(std::move(c), p, unary());
    }
    return atom();
  }

  std::pair<Coalition, Rational> modal() {
    expect("[");
    std::vector<AgentId> members;
    skip_ws();
    if (!accept("]")) {
      do {
        const std::size_t at = pos_;
        std::string a = ident();
        if (universe_ && !universe_->contains(a)) {
          pos_ = at;
          fail("unknown agent '" + a + "'", ErrorKind::UnknownAgent);
        }
        members.push_back(std::move(a));
      } while (accept(","));
      expect("]");
    }
    expect("_");
    const bool braced = accept("{");
    skip_ws();
    const std::size_t at = pos_;
    Rational p = rational();
    if (braced) expect("}");
    if (!p.in_unit_interval()) {
      pos_ = at;
      fail("subscript " + p.str() + " outside [0,1]", ErrorKind::SubscriptRange);
    }
    return {Coalition(std::move(members)), p};
  }

  Rational rational() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      return pos_ > s;
    };
    if (!digits()) fail("expected rational subscript");
    std::string lit(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t s = pos_;
      if (!digits()) fail("expected digits after '.'", ErrorKind::NotRational);
      lit += '.';
      lit += text_.substr(s, pos_ - s);
    } else {
      const std::size_t save = pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const std::size_t s = pos_;
        if (!digits()) fail("expected denominator", ErrorKind::NotRational);
        lit += '/';
        lit += text_.substr(s, pos_ - s);
      } else {
        pos_ = save;
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail("exponent notation is not a rational literal", ErrorKind::NotRational);
    }
    try {
      return Rational::parse(lit);
    } catch (const Error& e) {
      pos_ = start;
      fail(e.what(), e.kind());
    }
  }

  Formula atom() {
    skip_ws();
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (!ident_start(text_[pos_])) fail(std::string("unexpected character '") + text_[pos_] + "'");
    std::string id = ident();
    if (id == "false") return Formula::bot();
    if (id == "true") return Formula::top();
    return Formula::var(std::move(id));
  }

  std::string_view text_;
  const std::set<AgentId>* universe_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const std::set<AgentId>* universe) {
  return Parser(text, universe).run();
}

// ---------------------------------------------------------------------------
// Queries

bool in_plus_language(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Bot: return true;
    case Kind::Neg: return in_plus_language(f.sub());
    case Kind::Impl: return in_plus_language(f.lhs()) && in_plus_language(f.rhs());
    case Kind::Coal: return !f.coalition().empty() && in_plus_language(f.sub());
  }
  return true;
}

namespace {

void collect_subformulas(const Formula& f, std::unordered_set<Formula>& seen) {
  if (!seen.insert(f).second) return;
  switch (f.kind()) {
    case Kind::Neg:
    case Kind::Coal: collect_subformulas(f.sub(), seen); break;
    case Kind::Impl:
      collect_subformulas(f.lhs(), seen);
      collect_subformulas(f.rhs(), seen);
      break;
    default: break;
  }
}

void canonical_sort(std::vector<Formula>& fs) {
  std::vector<std::pair<std::string, Formula>> keyed;
  keyed.reserve(fs.size());
  for (auto& f : fs) keyed.emplace_back(render(f), std::move(f));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.first < b.first;
  });
  fs.clear();
  for (auto& [_, f] : keyed) fs.push_back(std::move(f));
}

}  // namespace

bool canonical_less(const Formula& a, const Formula& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return render(a) < render(b);
}

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula> seen;
  collect_subformulas(f, seen);
  std::vector<Formula> out(seen.begin(), seen.end());
  canonical_sort(out);
  return out;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  for (const auto& g : subformulas(f)) {
    if (g.is(Kind::Var)) out.insert(g.name());
  }
  return out;
}

std::set<AgentId> agents(const Formula& f) {
  std::set<AgentId> out;
  for (const auto& g : subformulas(f)) {
    if (g.is(Kind::Coal)) out.insert(g.coalition().members().begin(), g.coalition().members().end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure

bool ClosureSet::contains(const Formula& f) const { return index_of(f) != static_cast<std::size_t>(-1); }

std::size_t ClosureSet::index_of(const Formula& f) const {
  for (std::size_t i = 0; i < formulas_.size(); ++i) {
    if (formulas_[i] == f) return i;
  }
  return static_cast<std::size_t>(-1);
}

ClosureSet closure(std::span<const Formula> seed) {
  std::unordered_set<Formula> seen;
  std::vector<Formula> work(seed.begin(), seed.end());
  while (!work.empty()) {
    Formula f = std::move(work.back());
    work.pop_back();
    if (!seen.insert(f).second) continue;
    switch (f.kind()) {
      case Kind::Neg:
      case Kind::Coal: work.push_back(f.sub()); break;
      case Kind::Impl:
        work.push_back(f.lhs());
        work.push_back(f.rhs());
        break;
      default: break;
    }
    if (!f.is(Kind::Neg)) work.push_back(Formula::neg(f));
  }
  ClosureSet out;
  out.formulas_.assign(seen.begin(), seen.end());
  canonical_sort(out.formulas_);
  return out;
}

// ---------------------------------------------------------------------------
// Propositional abstraction

namespace {

class Abstraction {
 public:
  explicit Abstraction(std::size_t cap) : cap_(cap) {}

  void add(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bot: return;
      case Kind::Neg: add(f.sub()); return;
      case Kind::Impl:
        add(f.lhs());
        add(f.rhs());
        return;
      case Kind::Var:
      case Kind::Coal:
        if (atoms_.emplace(f, atoms_.size()).second && atoms_.size() > cap_) {
          throw Error(ErrorKind::Limit, "propositional abstraction has more than " + std::to_string(cap_) +
                                            " atoms");
        }
        return;
    }
  }

  std::size_t atom_count() const { return atoms_.size(); }

  bool eval(const Formula& f, std::uint64_t assignment) const {
    switch (f.kind()) {
      case Kind::Bot: return false;
      case Kind::Neg: return !eval(f.sub(), assignment);
      case Kind::Impl: return !eval(f.lhs(), assignment) || eval(f.rhs(), assignment);
      default: return (assignment >> atoms_.at(f)) & 1u;
    }
  }

 private:
  std::size_t cap_;
  std::unordered_map<Formula, std::size_t> atoms_;
};

}  // namespace

bool is_tautology(const Formula& f, std::size_t atom_cap) {
  Abstraction abs(atom_cap);
  abs.add(f);
  const std::uint64_t rows = std::uint64_t{1} << abs.atom_count();
  for (std::uint64_t a = 0; a < rows; ++a) {
    if (!abs.eval(f, a)) return false;
  }
  return true;
}

bool is_satisfiable(std::span<const Formula> fs, std::size_t atom_cap) {
  Abstraction abs(atom_cap);
  for (const auto& f : fs) abs.add(f);
  const std::uint64_t rows = std::uint64_t{1} << abs.atom_count();
  for (std::uint64_t a = 0; a < rows; ++a) {
    if (std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return abs.eval(f, a); })) return true;
  }
  return false;
}

}  // namespace sgcl
