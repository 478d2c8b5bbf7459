#pragma once

// Tiny arithmetic/boolean expression language used by the catalog data file.
//
//   expr   := or
//   or     := and ('||' and)*
//   and    := cmp ('&&' cmp)*
//   cmp    := sum (('<'|'<='|'>'|'>='|'=='|'!=') sum)?
//   sum    := prod (('+'|'-') prod)*
//   prod   := unary (('*'|'/') unary)*
//   unary  := ('-'|'+'|'!') unary | power
//   power  := atom ('^' unary)?
//   atom   := number | identifier | '(' expr ')'
//
// Booleans are doubles (0 false, anything else true). Identifiers are looked up in a
// Bindings map at evaluation time; true/false are built in.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace abnorm::expr {

using Bindings = std::map<std::string, double, std::less<>>;

class Expression {
 public:
  Expression() = default;

  /// Throws abnorm::CatalogError on a syntax error.
  static Expression parse(const std::string& source);

  /// Throws abnorm::CatalogError on an unbound identifier.
  double evaluate(const Bindings& bindings) const;
  bool holds(const Bindings& bindings) const { return evaluate(bindings) != 0.0; }

  const std::string& source() const { return source_; }
  std::vector<std::string> identifiers() const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace abnorm::expr
