#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace macoord {

// Proposition names, index = proposition id. At most 64 propositions so a
// symbol (a set of propositions holding at one instant) fits in one word.
using Alphabet = std::vector<std::string>;
using SymbolSet = std::uint64_t;

constexpr std::size_t kMaxAlphabet = 64;

inline SymbolSet symbol_bit(int prop) { return SymbolSet{1} << prop; }

enum class LtlOp : std::uint8_t {
  True,
  Prop,
  Not,
  And,
  Or,
  Next,
  Until,
  Eventually,
  Always,
};

struct LtlNode;

// Immutable shared formula tree. Copies are cheap handle copies; equality is
// structural.
class Formula {
 public:
  Formula() = default;

  const LtlNode& node() const { return *n_; }
  LtlOp op() const;
  bool valid() const { return n_ != nullptr; }
  const LtlNode* ptr() const { return n_.get(); }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  explicit Formula(std::shared_ptr<const LtlNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const LtlNode> n_;

  friend Formula make_formula(LtlNode&& node);
};

struct LtlNode {
  LtlOp op = LtlOp::True;
  int prop = -1;          // LtlOp::Prop only
  std::string prop_name;  // LtlOp::Prop only
  Formula lhs;            // unary/binary operand
  Formula rhs;            // binary second operand
};

inline LtlOp Formula::op() const { return n_->op; }

Formula mk_true();
Formula mk_prop(int index, std::string name);
Formula mk_not(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_next(Formula f);
Formula mk_until(Formula a, Formula b);
Formula mk_eventually(Formula f);
Formula mk_always(Formula f);

// Surface syntax: true, identifiers, !, &&, ||, X, U, <>, [].
// Precedence: unary > U > && > ||; U is right-associative.
// Throws ParseError (with byte offset) on malformed text or identifiers not
// present in alphabet; ValidationError if alphabet exceeds kMaxAlphabet.
Formula parse_ltl(const std::string& text, const Alphabet& alphabet);

// Minimal-parenthesis rendering; parse_ltl(print_ltl(f), a) == f structurally.
std::string print_ltl(const Formula& f);

// No [] anywhere, and ! only directly above an atomic proposition (after
// rewriting <>x as true U x, which moves nothing).
bool is_sc_ltl(const Formula& f);

// All distinct subformula nodes (each shared node listed once), parents after
// children. Used for memo tables keyed by node identity.
std::vector<const LtlNode*> collect_subformulas(const Formula& f);

}  // namespace macoord
