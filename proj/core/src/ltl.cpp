#include "macoord/ltl.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "macoord/errors.hpp"

namespace macoord {

Formula make_formula(LtlNode&& node) {
  return Formula(std::make_shared<const LtlNode>(std::move(node)));
}

Formula mk_true() { return make_formula(LtlNode{LtlOp::True, -1, {}, {}, {}}); }

Formula mk_prop(int index, std::string name) {
  return make_formula(LtlNode{LtlOp::Prop, index, std::move(name), {}, {}});
}

Formula mk_not(Formula f) {
  return make_formula(LtlNode{LtlOp::Not, -1, {}, std::move(f), {}});
}

Formula mk_and(Formula a, Formula b) {
  return make_formula(LtlNode{LtlOp::And, -1, {}, std::move(a), std::move(b)});
}

Formula mk_or(Formula a, Formula b) {
  return make_formula(LtlNode{LtlOp::Or, -1, {}, std::move(a), std::move(b)});
}

Formula mk_next(Formula f) {
  return make_formula(LtlNode{LtlOp::Next, -1, {}, std::move(f), {}});
}

Formula mk_until(Formula a, Formula b) {
  return make_formula(
      LtlNode{LtlOp::Until, -1, {}, std::move(a), std::move(b)});
}

Formula mk_eventually(Formula f) {
  return make_formula(LtlNode{LtlOp::Eventually, -1, {}, std::move(f), {}});
}

Formula mk_always(Formula f) {
  return make_formula(LtlNode{LtlOp::Always, -1, {}, std::move(f), {}});
}

bool Formula::operator==(const Formula& other) const {
  if (n_ == other.n_) return true;
  if (!n_ || !other.n_) return false;
  const LtlNode& a = *n_;
  const LtlNode& b = *other.n_;
  if (a.op != b.op) return false;
  switch (a.op) {
    case LtlOp::True:
      return true;
    case LtlOp::Prop:
      return a.prop == b.prop;
    case LtlOp::Not:
    case LtlOp::Next:
    case LtlOp::Eventually:
    case LtlOp::Always:
      return a.lhs == b.lhs;
    case LtlOp::And:
    case LtlOp::Or:
    case LtlOp::Until:
      return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  return false;
}

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Next,
  Until,
  Eventually,
  Always,
  True,
  Ident,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;  // Ident only
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, at, {}}); ++i; continue;
      case ')': out.push_back({Tok::RParen, at, {}}); ++i; continue;
      case '!': out.push_back({Tok::Not, at, {}}); ++i; continue;
      case '&':
        if (i + 1 < n && text[i + 1] == '&') {
          out.push_back({Tok::And, at, {}});
          i += 2;
          continue;
        }
        throw ParseError("expected '&&'", at);
      case '|':
        if (i + 1 < n && text[i + 1] == '|') {
          out.push_back({Tok::Or, at, {}});
          i += 2;
          continue;
        }
        throw ParseError("expected '||'", at);
      case '<':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Tok::Eventually, at, {}});
          i += 2;
          continue;
        }
        throw ParseError("expected '<>'", at);
      case '[':
        if (i + 1 < n && text[i + 1] == ']') {
          out.push_back({Tok::Always, at, {}});
          i += 2;
          continue;
        }
        throw ParseError("expected '[]'", at);
      default:
        break;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_char(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      if (word == "true") {
        out.push_back({Tok::True, at, {}});
      } else if (word == "X") {
        out.push_back({Tok::Next, at, {}});
      } else if (word == "U") {
        out.push_back({Tok::Until, at, {}});
      } else {
        out.push_back({Tok::Ident, at, std::move(word)});
      }
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
  out.push_back({Tok::End, n, {}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Alphabet& alphabet)
      : toks_(std::move(toks)) {
    for (std::size_t k = 0; k < alphabet.size(); ++k)
      props_[alphabet[k]] = static_cast<int>(k);
  }

  Formula run() {
    Formula f = parse_or();
    if (peek().kind != Tok::End)
      throw ParseError("trailing input after formula", peek().offset);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = mk_or(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (accept(Tok::And)) f = mk_and(std::move(f), parse_until());
    return f;
  }

  Formula parse_until() {
    Formula f = parse_unary();
    if (accept(Tok::Until)) return mk_until(std::move(f), parse_until());
    return f;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: ++pos_; return mk_not(parse_unary());
      case Tok::Next: ++pos_; return mk_next(parse_unary());
      case Tok::Eventually: ++pos_; return mk_eventually(parse_unary());
      case Tok::Always: ++pos_; return mk_always(parse_unary());
      default: return parse_atom();
    }
  }

  Formula parse_atom() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::True:
        return mk_true();
      case Tok::Ident: {
        auto it = props_.find(t.text);
        if (it == props_.end())
          throw ParseError("unknown proposition '" + t.text + "'", t.offset);
        return mk_prop(it->second, t.text);
      }
      case Tok::LParen: {
        Formula f = parse_or();
        if (!accept(Tok::RParen))
          throw ParseError("expected ')'", peek().offset);
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of formula", t.offset);
      default:
        throw ParseError("expected a formula", t.offset);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, int> props_;
};

// Precedence levels for printing: || = 0, && = 1, U = 2, unary = 3, atom = 4.
int prec(const Formula& f) {
  switch (f.op()) {
    case LtlOp::Or: return 0;
    case LtlOp::And: return 1;
    case LtlOp::Until: return 2;
    case LtlOp::Not:
    case LtlOp::Next:
    case LtlOp::Eventually:
    case LtlOp::Always: return 3;
    default: return 4;
  }
}

void print_into(const Formula& f, std::string& out);

void print_child(const Formula& child, int need, std::string& out) {
  if (prec(child) < need) {
    out += '(';
    print_into(child, out);
    out += ')';
  } else {
    print_into(child, out);
  }
}

void print_into(const Formula& f, std::string& out) {
  const LtlNode& n = f.node();
  switch (n.op) {
    case LtlOp::True:
      out += "true";
      return;
    case LtlOp::Prop:
      out += n.prop_name;
      return;
    case LtlOp::Not:
      out += '!';
      print_child(n.lhs, 3, out);
      return;
    case LtlOp::Next:
      out += "X ";
      print_child(n.lhs, 3, out);
      return;
    case LtlOp::Eventually:
      out += "<>";
      print_child(n.lhs, 3, out);
      return;
    case LtlOp::Always:
      out += "[]";
      print_child(n.lhs, 3, out);
      return;
    case LtlOp::And:
      print_child(n.lhs, 1, out);
      out += " && ";
      // left-associative: a right operand at the same level needs parens
      print_child(n.rhs, 2, out);
      return;
    case LtlOp::Or:
      print_child(n.lhs, 0, out);
      out += " || ";
      print_child(n.rhs, 1, out);
      return;
    case LtlOp::Until:
      // right-associative
      print_child(n.lhs, 3, out);
      out += " U ";
      print_child(n.rhs, 2, out);
      return;
  }
}

}  // namespace

Formula parse_ltl(const std::string& text, const Alphabet& alphabet) {
  if (alphabet.size() > kMaxAlphabet)
    throw ValidationError("alphabet exceeds " + std::to_string(kMaxAlphabet) +
                          " propositions");
  return Parser(lex(text), alphabet).run();
}

std::string print_ltl(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

bool is_sc_ltl(const Formula& f) {
  const LtlNode& n = f.node();
  switch (n.op) {
    case LtlOp::True:
    case LtlOp::Prop:
      return true;
    case LtlOp::Not:
      return n.lhs.op() == LtlOp::Prop;
    case LtlOp::And:
    case LtlOp::Or:
    case LtlOp::Until:
      return is_sc_ltl(n.lhs) && is_sc_ltl(n.rhs);
    case LtlOp::Next:
    case LtlOp::Eventually:
      return is_sc_ltl(n.lhs);
    case LtlOp::Always:
      return false;
  }
  return false;
}

namespace {
void collect(const Formula& f, std::unordered_set<const LtlNode*>& seen,
             std::vector<const LtlNode*>& out) {
  const LtlNode* p = f.ptr();
  if (p == nullptr || seen.count(p)) return;
  if (f.node().lhs.valid()) collect(f.node().lhs, seen, out);
  if (f.node().rhs.valid()) collect(f.node().rhs, seen, out);
  seen.insert(p);
  out.push_back(p);
}
}  // namespace

std::vector<const LtlNode*> collect_subformulas(const Formula& f) {
  std::unordered_set<const LtlNode*> seen;
  std::vector<const LtlNode*> out;
  collect(f, seen, out);
  return out;
}

}  // namespace macoord
