#include "bkrel/expr.hpp"

#include <cctype>
#include <vector>

namespace bkrel {

// ---------------------------------------------------------------------------
// AST

ExprPtr Expr::ref(std::string name) {
  return ExprPtr(new Expr(ExprKind::RelRef, std::move(name), nullptr, nullptr));
}

ExprPtr Expr::converse(ExprPtr e) {
  if (!e) throw ValueError("converse of a null expression");
  return ExprPtr(new Expr(ExprKind::Converse, "", std::move(e), nullptr));
}

ExprPtr Expr::binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
  if (kind == ExprKind::RelRef || kind == ExprKind::Converse)
    throw ValueError("binary() needs a binary node kind");
  if (!lhs || !rhs) throw ValueError("binary node needs two operands");
  return ExprPtr(new Expr(kind, "", std::move(lhs), std::move(rhs)));
}

bool is_product(ExprKind k) {
  switch (k) {
    case ExprKind::Circle:
    case ExprKind::Sub:
    case ExprKind::Sup:
    case ExprKind::Square:
    case ExprKind::MeanSub:
    case ExprKind::MeanSup:
    case ExprKind::MeanSquare:
      return true;
    default:
      return false;
  }
}

bool is_comparison(ExprKind k) {
  return k == ExprKind::Included || k == ExprKind::Equal;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::RelRef:
      return a.name() == b.name();
    case ExprKind::Converse:
      return structurally_equal(*a.lhs(), *b.lhs());
    default:
      return structurally_equal(*a.lhs(), *b.lhs()) &&
             structurally_equal(*a.rhs(), *b.rhs());
  }
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Name,
  Quote,
  LParen,
  RParen,
  Circle,
  Sub,
  Sup,
  Square,
  MeanSub,
  MeanSup,
  MeanSquare,
  Le,
  Eq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const char* token_label(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Quote: return "'";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Circle: return "o";
    case Tok::Sub: return "<|";
    case Tok::Sup: return "|>";
    case Tok::Square: return "[]";
    case Tok::MeanSub: return "m<|";
    case Tok::MeanSup: return "m|>";
    case Tok::MeanSquare: return "m[]";
    case Tok::Le: return "<=";
    case Tok::Eq: return "==";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  auto two = [&](std::size_t at) -> std::string_view {
    return text.substr(at, std::min<std::size_t>(2, text.size() - at));
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == '\'') {
      toks.push_back({Tok::Quote, "'", start});
      ++i;
    } else if (c == '(') {
      toks.push_back({Tok::LParen, "(", start});
      ++i;
    } else if (c == ')') {
      toks.push_back({Tok::RParen, ")", start});
      ++i;
    } else if (two(i) == "<|") {
      toks.push_back({Tok::Sub, "<|", start});
      i += 2;
    } else if (two(i) == "<=") {
      toks.push_back({Tok::Le, "<=", start});
      i += 2;
    } else if (two(i) == "|>") {
      toks.push_back({Tok::Sup, "|>", start});
      i += 2;
    } else if (two(i) == "[]") {
      toks.push_back({Tok::Square, "[]", start});
      i += 2;
    } else if (two(i) == "==") {
      toks.push_back({Tok::Eq, "==", start});
      i += 2;
    } else if (c == 'm' && two(i + 1) == "<|") {
      toks.push_back({Tok::MeanSub, "m<|", start});
      i += 3;
    } else if (c == 'm' && two(i + 1) == "|>") {
      toks.push_back({Tok::MeanSup, "m|>", start});
      i += 3;
    } else if (c == 'm' && two(i + 1) == "[]") {
      toks.push_back({Tok::MeanSquare, "m[]", start});
      i += 3;
    } else if (name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (word == "o")
        toks.push_back({Tok::Circle, "o", start});
      else
        toks.push_back({Tok::Name, std::move(word), start});
      i = j;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                           std::to_string(start),
                       start);
    }
  }
  toks.push_back({Tok::End, "", text.size()});
  return toks;
}

bool is_binop_token(Tok t) {
  switch (t) {
    case Tok::Circle:
    case Tok::Sub:
    case Tok::Sup:
    case Tok::Square:
    case Tok::MeanSub:
    case Tok::MeanSup:
    case Tok::MeanSquare:
      return true;
    default:
      return false;
  }
}

ExprKind binop_kind(Tok t) {
  switch (t) {
    case Tok::Circle: return ExprKind::Circle;
    case Tok::Sub: return ExprKind::Sub;
    case Tok::Sup: return ExprKind::Sup;
    case Tok::Square: return ExprKind::Square;
    case Tok::MeanSub: return ExprKind::MeanSub;
    case Tok::MeanSup: return ExprKind::MeanSup;
    case Tok::MeanSquare: return ExprKind::MeanSquare;
    default: throw ValueError("not a product token");
  }
}

// Recursive-descent parser over the token list.
class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse_stmt() {
    ExprPtr lhs = parse_expr();
    if (peek().kind == Tok::Le || peek().kind == Tok::Eq) {
      const Tok cmp = take().kind;
      ExprPtr rhs = parse_expr();
      expect_end();
      return Expr::binary(cmp == Tok::Le ? ExprKind::Included : ExprKind::Equal,
                          std::move(lhs), std::move(rhs));
    }
    expect_end();
    return lhs;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
    throw ParseError(msg + " at offset " + std::to_string(pos), pos);
  }

  void expect_end() {
    if (peek().kind != Tok::End)
      fail("unexpected '" + std::string(token_label(peek().kind)) + "' after the expression",
           peek().pos);
  }

  ExprPtr parse_expr() {
    ExprPtr node = parse_atom();
    if (!is_binop_token(peek().kind)) return node;
    const Token first_op = take();
    node = Expr::binary(binop_kind(first_op.kind), std::move(node), parse_atom());
    while (is_binop_token(peek().kind)) {
      const Token& next_op = peek();
      if (first_op.kind != Tok::Circle || next_op.kind != Tok::Circle)
        fail(std::string("operator chains need parentheses: '") + token_label(next_op.kind) +
                 "' after '" + token_label(first_op.kind) +
                 "' does not associate (only 'o' chains)",
             next_op.pos);
      take();
      node = Expr::binary(ExprKind::Circle, std::move(node), parse_atom());
    }
    return node;
  }

  ExprPtr parse_atom() {
    ExprPtr node;
    const Token& t = peek();
    if (t.kind == Tok::Name) {
      node = Expr::ref(take().text);
    } else if (t.kind == Tok::LParen) {
      take();
      node = parse_expr();
      if (peek().kind != Tok::RParen) fail("expected ')'", peek().pos);
      take();
    } else {
      fail("expected a relation name or '(', got '" + std::string(token_label(t.kind)) + "'",
           t.pos);
    }
    while (peek().kind == Tok::Quote) {
      take();
      node = Expr::converse(std::move(node));
    }
    return node;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text) {
  Parser p(lex(text));
  return p.parse_stmt();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* op_spelling(ExprKind k) {
  switch (k) {
    case ExprKind::Circle: return "o";
    case ExprKind::Sub: return "<|";
    case ExprKind::Sup: return "|>";
    case ExprKind::Square: return "[]";
    case ExprKind::MeanSub: return "m<|";
    case ExprKind::MeanSup: return "m|>";
    case ExprKind::MeanSquare: return "m[]";
    case ExprKind::Included: return "<=";
    case ExprKind::Equal: return "==";
    default: throw ValueError("no spelling for this node");
  }
}

std::string print_node(const Expr& e);

// Operand rendering: names and converses stand alone, anything composite is
// parenthesized, which is exactly what the grammar demands on re-parse.
std::string print_operand(const Expr& e) {
  if (e.kind() == ExprKind::RelRef || e.kind() == ExprKind::Converse) return print_node(e);
  return "(" + print_node(e) + ")";
}

std::string print_node(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::RelRef:
      return e.name();
    case ExprKind::Converse:
      return print_operand(*e.lhs()) + "'";
    case ExprKind::Circle: {
      // Flatten the left spine so (A o B) o C prints as the chain it parses from.
      std::vector<const Expr*> operands;
      const Expr* cur = &e;
      while (cur->kind() == ExprKind::Circle) {
        operands.push_back(cur->rhs().get());
        cur = cur->lhs().get();
      }
      operands.push_back(cur);
      std::string out = print_operand(*operands.back());
      for (std::size_t i = operands.size() - 1; i-- > 0;)
        out += std::string(" o ") + print_operand(*operands[i]);
      return out;
    }
    case ExprKind::Included:
    case ExprKind::Equal:
      return print_node(*e.lhs()) + " " + op_spelling(e.kind()) + " " + print_node(*e.rhs());
    default:
      return print_operand(*e.lhs()) + " " + op_spelling(e.kind()) + " " +
             print_operand(*e.rhs());
  }
}

}  // namespace

std::string pretty_print(const Expr& e) { return print_node(e); }

// ---------------------------------------------------------------------------
// Workspace and evaluation

Workspace::Workspace(std::shared_ptr<const Lattice> lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw ValueError("workspace needs a lattice");
}

void Workspace::add(std::string name, Relation r) {
  if (name.empty()) throw ValueError("relation name must not be empty");
  if (name == "o") throw ValueError("'o' is the composition keyword and cannot name a relation");
  if (relations_.count(name))
    throw ValueError("relation name '" + name + "' is already bound");
  if (r.lattice_ptr() != lattice_)
    throw LatticeMismatchError("relation '" + name + "' is over " + r.lattice().describe() +
                               ", workspace uses " + lattice_->describe());
  relations_.emplace(std::move(name), std::move(r));
}

bool Workspace::has(const std::string& name) const { return relations_.count(name) > 0; }

const Relation& Workspace::get(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw ValueError("unbound relation name '" + name + "'");
  return it->second;
}

namespace {

Relation eval_relation(const Expr& e, const Workspace& w) {
  switch (e.kind()) {
    case ExprKind::RelRef:
      return w.get(e.name());
    case ExprKind::Converse:
      return converse(eval_relation(*e.lhs(), w));
    case ExprKind::Circle:
      return circle(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
    case ExprKind::Sub:
      return sub(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
    case ExprKind::Sup:
      return sup(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
    case ExprKind::Square:
      return square(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
    case ExprKind::MeanSub:
      return mean_product(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w),
                          MeanKind::Sub);
    case ExprKind::MeanSup:
      return mean_product(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w),
                          MeanKind::Sup);
    case ExprKind::MeanSquare:
      return mean_product(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w),
                          MeanKind::Square);
    case ExprKind::Included:
    case ExprKind::Equal:
      throw ValueError("comparisons are only allowed at the top level");
  }
  throw ValueError("unknown expression node");
}

}  // namespace

EvalResult evaluate(const Expr& e, const Workspace& w) {
  if (e.kind() == ExprKind::Included)
    return included_in(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
  if (e.kind() == ExprKind::Equal)
    return equal(eval_relation(*e.lhs(), w), eval_relation(*e.rhs(), w));
  return eval_relation(e, w);
}

}  // namespace bkrel
