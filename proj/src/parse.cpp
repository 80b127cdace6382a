#include "vted/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vted {

ParseError::ParseError(SourceSpan s, const std::string& message)
    : std::runtime_error("line " + std::to_string(s.line) + ", column " +
                         std::to_string(s.column) + ": " + message),
      span(s) {}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

struct Token {
  enum Kind { Ident, Number, Op, LParen, RParen, Comma, End } kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(const std::string& text, SourceSpan origin)
      : text_(text), line_(origin.line), col_(origin.column) {
    advance();
  }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_, col_;
  Token current_;

  char cur() const { return text_[pos_]; }
  bool eof() const { return pos_ >= text_.size(); }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (!eof() && std::isspace(static_cast<unsigned char>(cur()))) bump();
    SourceSpan span{line_, col_};
    if (eof()) {
      current_ = {Token::End, "", span};
      return;
    }
    char c = cur();
    if (is_ident_start(c)) {
      std::string s;
      while (!eof() && is_ident_char(cur())) {
        s += cur();
        bump();
      }
      current_ = {Token::Ident, s, span};
      return;
    }
    if (is_digit(c)) {
      std::string s;
      while (!eof() && is_digit(cur())) {
        s += cur();
        bump();
      }
      if (!eof() && cur() == '.') {
        s += cur();
        bump();
        if (eof() || !is_digit(cur()))
          throw ParseError({line_, col_}, "expected digits after decimal point");
        while (!eof() && is_digit(cur())) {
          s += cur();
          bump();
        }
      }
      if (!eof() && (cur() == 'e' || cur() == 'E')) {
        s += cur();
        bump();
        if (!eof() && (cur() == '+' || cur() == '-')) {
          s += cur();
          bump();
        }
        if (eof() || !is_digit(cur()))
          throw ParseError({line_, col_}, "expected digits in exponent");
        while (!eof() && is_digit(cur())) {
          s += cur();
          bump();
        }
      }
      current_ = {Token::Number, s, span};
      return;
    }
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
        bump();
        current_ = {Token::Op, std::string(1, c), span};
        return;
      case '(':
        bump();
        current_ = {Token::LParen, "(", span};
        return;
      case ')':
        bump();
        current_ = {Token::RParen, ")", span};
        return;
      case ',':
        bump();
        current_ = {Token::Comma, ",", span};
        return;
      default:
        throw ParseError(span, std::string("unexpected character '") + c + "'");
    }
  }
};

// binding powers: ^ > unary minus > * / > + -
constexpr int kUnaryBp = 6;
bool binary_bp(const std::string& op, int& left, int& right) {
  if (op == "+" || op == "-") {
    left = 2;
    right = 3;  // left-associative
    return true;
  }
  if (op == "*" || op == "/") {
    left = 4;
    right = 5;
    return true;
  }
  if (op == "^") {
    left = 9;
    right = 8;  // right-associative
    return true;
  }
  return false;
}

class ExprParser {
 public:
  ExprParser(Lexer& lex, const VarPolicy& policy) : lex_(lex), policy_(policy) {}

  Tree parse() {
    Tree t = parse_bp(0);
    const Token& tok = lex_.peek();
    if (tok.kind != Token::End)
      throw ParseError(tok.span, "unexpected '" + tok.text + "'");
    return t;
  }

 private:
  Lexer& lex_;
  const VarPolicy& policy_;

  Tree leaf_for(const Token& tok) {
    if (tok.kind == Token::Number) return Tree::leaf(constant(tok.text));
    if (policy_.is_variable(tok.text)) return Tree::leaf(variable(tok.text));
    return Tree::leaf(constant(tok.text));
  }

  Tree parse_bp(int min_bp) {
    Token tok = lex_.next();
    Tree lhs = [&]() -> Tree {
      switch (tok.kind) {
        case Token::Ident:
          if (lex_.peek().kind == Token::LParen) {
            if (policy_.is_variable(tok.text))
              throw ParseError(tok.span, "variable '" + tok.text +
                                             "' used as a function");
            lex_.next();
            std::vector<Tree> args;
            args.push_back(parse_bp(0));
            while (lex_.peek().kind == Token::Comma) {
              lex_.next();
              args.push_back(parse_bp(0));
            }
            Token close = lex_.next();
            if (close.kind != Token::RParen)
              throw ParseError(close.span, "expected ')'");
            return Tree::branch(constant(tok.text), std::move(args));
          }
          return leaf_for(tok);
        case Token::Number:
          return leaf_for(tok);
        case Token::Op:
          if (tok.text == "-")
            return Tree::branch(constant("neg"), {parse_bp(kUnaryBp)});
          throw ParseError(tok.span, "unexpected operator '" + tok.text + "'");
        case Token::LParen: {
          Tree inner = parse_bp(0);
          Token close = lex_.next();
          if (close.kind != Token::RParen)
            throw ParseError(close.span, "expected ')'");
          return inner;
        }
        default:
          throw ParseError(tok.span, "expected an expression");
      }
    }();

    while (lex_.peek().kind == Token::Op) {
      int left, right;
      if (!binary_bp(lex_.peek().text, left, right)) break;
      if (left < min_bp) break;
      Token op = lex_.next();
      Tree rhs = parse_bp(right);
      std::vector<Tree> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = Tree::branch(constant(op.text), std::move(children));
    }
    return lhs;
  }
};

Tree parse_expr_at(const std::string& text, const VarPolicy& policy,
                   const ParseOptions& opts, SourceSpan origin) {
  Lexer lex(text, origin);
  ExprParser parser(lex, policy);
  Tree t = parser.parse();
  if (static_cast<std::size_t>(t.size()) > opts.max_nodes)
    throw ParseError(origin, "expression exceeds the node limit of " +
                                 std::to_string(opts.max_nodes));
  return t;
}

}  // namespace

Tree parse_expr(const std::string& text, const VarPolicy& policy,
                const ParseOptions& opts) {
  return parse_expr_at(text, policy, opts, {1, 1});
}

namespace {

// lexer for the canonical dump format: labels are maximal runs of anything
// except whitespace and `( ) , ;`
class DumpParser {
 public:
  DumpParser(const std::string& text, const VarPolicy& policy)
      : text_(text), policy_(policy) {}

  Tree parse() {
    Tree t = parse_node();
    skip_space();
    if (pos_ < text_.size())
      throw ParseError(span(), "unexpected trailing content");
    return t;
  }

 private:
  const std::string& text_;
  const VarPolicy& policy_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  SourceSpan span() const { return {line_, col_}; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
  }

  bool label_char(char c) const {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != ',' && c != ';';
  }

  Tree parse_node() {
    skip_space();
    SourceSpan start = span();
    std::string sym;
    while (pos_ < text_.size() && label_char(text_[pos_])) {
      sym += text_[pos_];
      bump();
    }
    if (sym.empty()) throw ParseError(start, "expected a label");
    skip_space();
    std::vector<Tree> children;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      bump();
      children.push_back(parse_node());
      skip_space();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        bump();
        children.push_back(parse_node());
        skip_space();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(span(), "expected ')'");
      bump();
    }
    bool is_var = policy_.is_variable(sym);
    if (is_var && !children.empty())
      throw ParseError(start,
                       "variable '" + sym + "' used at a non-leaf node");
    if (children.empty())
      return Tree::leaf(is_var ? variable(sym) : constant(sym));
    return Tree::branch(constant(sym), std::move(children));
  }
};

}  // namespace

Tree parse_tree_dump(const std::string& text, const VarPolicy& policy,
                     const ParseOptions& opts) {
  DumpParser parser(text, policy);
  Tree t = parser.parse();
  if (static_cast<std::size_t>(t.size()) > opts.max_nodes)
    throw ParseError({1, 1}, "tree exceeds the node limit of " +
                                 std::to_string(opts.max_nodes));
  return t;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_ident(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

}  // namespace

OdeSystem parse_system(const std::string& text,
                       std::vector<ParseWarning>* warnings,
                       const ParseOptions& opts) {
  struct RawEquation {
    std::string lhs;
    std::string rhs;
    int line;
    int rhs_column;
  };
  std::vector<RawEquation> raw;
  std::set<std::string> lhs_seen;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (trim(line).empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError({line_no, 1}, "expected '=' in equation");
    std::string lhs_text = trim(line.substr(0, eq));
    std::string rhs_text = line.substr(eq + 1);

    std::string name;
    if (lhs_text.size() >= 4 && lhs_text[0] == 'd' &&
        lhs_text.substr(lhs_text.size() - 3) == "/dt") {
      name = trim(lhs_text.substr(1, lhs_text.size() - 4));
    } else if (!lhs_text.empty() && lhs_text.back() == '\'') {
      name = trim(lhs_text.substr(0, lhs_text.size() - 1));
    } else {
      throw ParseError({line_no, 1},
                       "expected 'd<ident>/dt = ...' or \"<ident>' = ...\"");
    }
    if (!valid_ident(name))
      throw ParseError({line_no, 1}, "invalid lhs identifier '" + name + "'");
    if (!lhs_seen.insert(name).second)
      throw ParseError({line_no, 1}, "duplicate lhs identifier '" + name + "'");
    raw.push_back({name, rhs_text, line_no, static_cast<int>(eq) + 2});
  }

  if (raw.empty()) throw ParseError({1, 1}, "empty system");

  VarPolicy policy = VarPolicy::explicit_set(lhs_seen);
  OdeSystem system;
  for (const RawEquation& r : raw) {
    Tree rhs =
        parse_expr_at(r.rhs, policy, opts, {r.line, r.rhs_column});
    if (warnings) {
      std::set<std::string> already;
      for (int v = 0; v < rhs.size(); ++v) {
        const Label& l = rhs.label(v);
        if (!l.is_variable() && rhs.is_leaf(v) && !l.symbol.empty() &&
            l.symbol[0] >= 'A' && l.symbol[0] <= 'Z' &&
            already.insert(l.symbol).second) {
          warnings->push_back(
              {{r.line, 1},
               "identifier '" + l.symbol +
                   "' looks like a variable but is not a lhs symbol; "
                   "treated as a constant"});
        }
      }
    }
    system.equations.emplace_back(r.lhs, std::move(rhs));
  }
  system.validate();
  return system;
}

}  // namespace vted
