#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vted/system_dist.hpp"
#include "vted/tree.hpp"

namespace vted {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message);
  SourceSpan span;
};

/// Decides which identifiers are variables. CaseConvention: identifiers
/// whose first character is upper-case. ExplicitSet: exactly the named ones.
struct VarPolicy {
  static VarPolicy case_convention() { return VarPolicy{}; }
  static VarPolicy explicit_set(std::set<std::string> names) {
    VarPolicy p;
    p.explicit_mode = true;
    p.names = std::move(names);
    return p;
  }

  bool is_variable(const std::string& ident) const {
    if (explicit_mode) return names.count(ident) > 0;
    return !ident.empty() && ident[0] >= 'A' && ident[0] <= 'Z';
  }

  bool explicit_mode = false;
  std::set<std::string> names;
};

struct ParseOptions {
  std::size_t max_nodes = 10'000;
};

/// Infix expression over identifiers, numeric literals, + - * / ^, unary
/// minus (node `neg`), function application name(arg,...) and parentheses.
/// Precedence: ^ > unary minus > * / > + -; the binary operators associate
/// left except ^, which associates right. Numeric literals keep their exact
/// source text as symbol.
Tree parse_expr(const std::string& text,
                const VarPolicy& policy = VarPolicy::case_convention(),
                const ParseOptions& opts = {});

/// Canonical tree dump: `label` or `label(child,...)`. Any token free of
/// whitespace and `( ) , ;` is a valid label, so operator-headed dumps like
/// `*(+(x,y),z)` round-trip. The policy classifies leaf labels.
Tree parse_tree_dump(const std::string& text,
                     const VarPolicy& policy = VarPolicy::case_convention(),
                     const ParseOptions& opts = {});

struct ParseWarning {
  SourceSpan span;
  std::string message;
};

/// Line-oriented system file: one equation per line, either
/// `d<ident>/dt = <expr>` or `<ident>' = <expr>`; `#` starts a comment.
/// The lhs identifiers form the variable set for every rhs; rhs identifiers
/// that look like variables by case but are not lhs symbols are parsed as
/// constants and reported as warnings.
OdeSystem parse_system(const std::string& text,
                       std::vector<ParseWarning>* warnings = nullptr,
                       const ParseOptions& opts = {});

}  // namespace vted
