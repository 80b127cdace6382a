#pragma once

#include <string>
#include <string_view>

namespace vted {

enum class LabelKind { Constant, Variable };

/// A node symbol: either a constant (operators, identifiers, numeric
/// literals) or a substitutable variable. Variables may appear only at
/// leaves of a tree.
struct Label {
  LabelKind kind = LabelKind::Constant;
  std::string symbol;

  Label() = default;
  Label(LabelKind k, std::string s);

  bool operator==(const Label&) const = default;
  bool is_variable() const { return kind == LabelKind::Variable; }
};

Label constant(std::string symbol);
Label variable(std::string symbol);

// Non-empty, no whitespace, none of the reserved punctuation `( ) , ;`.
bool valid_symbol(std::string_view s);

}  // namespace vted
