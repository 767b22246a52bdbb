#include "inferkit/parser.hpp"

#include <cctype>
#include <memory>
#include <optional>

#include "inferkit/error.hpp"

namespace inferkit {

namespace {

enum class Tok {
  End,
  Name,
  Equals,
  LParen,
  RParen,
  True,
  False,
  Not,
  And,
  Nand,
  Or,
  Xor,
  Nor,
  Implies,
  ImpliedBy,
  NotImplies,
  NotImpliedBy,
  Iff,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based byte column
};

// Longest match first so "<->" wins over "<-" and "!&" over "!".
struct Symbol {
  std::string_view text;
  Tok kind;
};
constexpr Symbol kSymbols[] = {
    {"<->", Tok::Iff},         {"->", Tok::Implies},   {"<-", Tok::ImpliedBy},
    {"!&", Tok::Nand},         {"!|", Tok::Nor},       {"!", Tok::Not},
    {"&", Tok::And},           {"|", Tok::Or},         {"^", Tok::Xor},
    {"=", Tok::Equals},        {"(", Tok::LParen},     {")", Tok::RParen},
    {"¬", Tok::Not},      {"∧", Tok::And},   {"∨", Tok::Or},
    {"⊻", Tok::Xor},      {"↑", Tok::Nand},  {"↓", Tok::Nor},
    {"⇒", Tok::Implies},  {"→", Tok::Implies}, {"⇐", Tok::ImpliedBy},
    {"⇏", Tok::NotImplies}, {"⇍", Tok::NotImpliedBy}, {"⇔", Tok::Iff},
    {"↔", Tok::Iff},      {"⊤", Tok::True},  {"⊥", Tok::False},
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

[[noreturn]] void syntax_error(std::size_t column, const std::string& message) {
  throw Error(ErrorKind::syntax, "column " + std::to_string(column) + ": " + message);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Name;
      if (word == "true") kind = Tok::True;
      if (word == "false") kind = Tok::False;
      out.push_back({kind, std::move(word), i + 1});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (text.substr(i, sym.text.size()) == sym.text) {
        out.push_back({sym.kind, std::string(sym.text), i + 1});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) syntax_error(i + 1, "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

// Untyped syntax tree; names are resolved against a space afterwards.
struct Ast {
  enum class Kind { True, False, Atom, Not, Binary } kind;
  Connective op = Connective::And;
  std::string name;
  std::optional<std::string> value;
  std::size_t column = 0;
  std::unique_ptr<Ast> lhs;
  std::unique_ptr<Ast> rhs;
};
using AstPtr = std::unique_ptr<Ast>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AstPtr parse() {
    AstPtr root = parse_iff();
    if (peek().kind != Tok::End) syntax_error(peek().column, "unexpected '" + peek().text + "'");
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  static AstPtr binary(Connective op, AstPtr lhs, AstPtr rhs) {
    auto node = std::make_unique<Ast>();
    node->kind = Ast::Kind::Binary;
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  AstPtr parse_iff() {
    AstPtr lhs = parse_imp();
    while (peek().kind == Tok::Iff) {
      take();
      lhs = binary(Connective::Iff, std::move(lhs), parse_imp());
    }
    return lhs;
  }

  AstPtr parse_imp() {
    AstPtr lhs = parse_or();
    std::optional<Connective> op;
    switch (peek().kind) {
      case Tok::Implies: op = Connective::Implies; break;
      case Tok::ImpliedBy: op = Connective::ImpliedBy; break;
      case Tok::NotImplies: op = Connective::NotImplies; break;
      case Tok::NotImpliedBy: op = Connective::NotImpliedBy; break;
      default: return lhs;
    }
    take();
    return binary(*op, std::move(lhs), parse_imp());
  }

  AstPtr parse_or() {
    AstPtr lhs = parse_and();
    while (true) {
      Connective op;
      switch (peek().kind) {
        case Tok::Or: op = Connective::Or; break;
        case Tok::Xor: op = Connective::Xor; break;
        case Tok::Nor: op = Connective::Nor; break;
        default: return lhs;
      }
      take();
      lhs = binary(op, std::move(lhs), parse_and());
    }
  }

  AstPtr parse_and() {
    AstPtr lhs = parse_unary();
    while (true) {
      Connective op;
      switch (peek().kind) {
        case Tok::And: op = Connective::And; break;
        case Tok::Nand: op = Connective::Nand; break;
        default: return lhs;
      }
      take();
      lhs = binary(op, std::move(lhs), parse_unary());
    }
  }

  AstPtr parse_unary() {
    if (peek().kind == Tok::Not) {
      take();
      auto node = std::make_unique<Ast>();
      node->kind = Ast::Kind::Not;
      node->lhs = parse_unary();
      return node;
    }
    return parse_primary();
  }

  AstPtr parse_primary() {
    const Token& tok = take();
    auto node = std::make_unique<Ast>();
    node->column = tok.column;
    switch (tok.kind) {
      case Tok::True: node->kind = Ast::Kind::True; return node;
      case Tok::False: node->kind = Ast::Kind::False; return node;
      case Tok::LParen: {
        AstPtr inner = parse_iff();
        if (peek().kind != Tok::RParen) syntax_error(peek().column, "expected ')'");
        take();
        return inner;
      }
      case Tok::Name: {
        node->kind = Ast::Kind::Atom;
        node->name = tok.text;
        if (peek().kind == Tok::Equals) {
          take();
          const Token& value = take();
          if (value.kind != Tok::Name && value.kind != Tok::True && value.kind != Tok::False) {
            syntax_error(value.column, "expected a value after '='");
          }
          node->value = value.text;
        }
        return node;
      }
      case Tok::End: syntax_error(tok.column, "unexpected end of formula");
      default: syntax_error(tok.column, "unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

AstPtr parse_ast(std::string_view text) { return Parser(tokenize(text)).parse(); }

Formula bind(const Ast& node, const Space& space) {
  switch (node.kind) {
    case Ast::Kind::True: return Formula::truth();
    case Ast::Kind::False: return Formula::falsity();
    case Ast::Kind::Not: return !bind(*node.lhs, space);
    case Ast::Kind::Binary:
      return Formula::binary(node.op, bind(*node.lhs, space), bind(*node.rhs, space));
    case Ast::Kind::Atom: break;
  }
  const std::string where = "column " + std::to_string(node.column) + ": ";
  const auto var = space.find_variable(node.name);
  if (!var) throw Error(ErrorKind::unknown_symbol, where + "unknown variable '" + node.name + "'");
  if (!node.value) {
    if (!space.is_binary(*var)) {
      throw Error(ErrorKind::unknown_symbol,
                  where + "variable '" + node.name + "' is not binary; write " + node.name + "=<value>");
    }
    return Formula::atom(*var, 0);
  }
  const auto value = space.find_value(*var, *node.value);
  if (!value) {
    throw Error(ErrorKind::unknown_symbol,
                where + "'" + *node.value + "' is not a value of '" + node.name + "'");
  }
  return Formula::atom(*var, *value);
}

void collect_names(const Ast& node, std::vector<std::string>& names) {
  if (node.kind == Ast::Kind::Atom) {
    if (node.value && *node.value != "T" && *node.value != "F") {
      throw Error(ErrorKind::unknown_symbol, "column " + std::to_string(node.column) + ": '" +
                                                 *node.value + "' is not a value of binary variable '" +
                                                 node.name + "'");
    }
    for (const auto& n : names) {
      if (n == node.name) return;
    }
    names.push_back(node.name);
    return;
  }
  if (node.lhs) collect_names(*node.lhs, names);
  if (node.rhs) collect_names(*node.rhs, names);
}

}  // namespace

Formula parse_formula(std::string_view text, const Space& space) {
  return bind(*parse_ast(text), space);
}

ParsedFormulas parse_binary_formulas(std::span<const std::string> texts) {
  std::vector<AstPtr> trees;
  std::vector<std::string> names;
  for (const auto& t : texts) {
    trees.push_back(parse_ast(t));
    collect_names(*trees.back(), names);
  }
  // Constant-only input still needs a space to evaluate in.
  if (names.empty()) names.push_back("a");
  ParsedFormulas out{Space::binary(names), {}};
  for (const auto& tree : trees) out.formulas.push_back(bind(*tree, out.space));
  return out;
}

}  // namespace inferkit
