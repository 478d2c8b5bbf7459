#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string_view>

#include "abnorm/errors.hpp"

namespace abnorm::expr {

struct Expression::Node {
  enum class Kind { Number, Variable, Unary, Binary };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string name;  // variable name or operator spelling
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->number = v;
  return n;
}

NodePtr make_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  n->name = std::move(name);
  return n;
}

NodePtr make_unary(std::string op, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Unary;
  n->name = std::move(op);
  n->lhs = std::move(arg);
  return n;
}

NodePtr make_binary(std::string op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Binary;
  n->name = std::move(op);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  NodePtr parse() {
    NodePtr n = parse_or();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw CatalogError("expression '" + src_ + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (src_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  // Accepts a one-character operator only when it is not the prefix of a longer one.
  bool accept_single(char c, char forbidden_next) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c &&
        (pos_ + 1 >= src_.size() || src_[pos_ + 1] != forbidden_next)) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("||")) lhs = make_binary("||", lhs, parse_and());
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_cmp();
    while (accept("&&")) lhs = make_binary("&&", lhs, parse_cmp());
    return lhs;
  }

  NodePtr parse_cmp() {
    NodePtr lhs = parse_sum();
    for (const char* op : {"<=", ">=", "==", "!="}) {
      if (accept(op)) return make_binary(op, lhs, parse_sum());
    }
    if (accept_single('<', '=')) return make_binary("<", lhs, parse_sum());
    if (accept_single('>', '=')) return make_binary(">", lhs, parse_sum());
    return lhs;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_prod();
    for (;;) {
      if (accept("+")) {
        lhs = make_binary("+", lhs, parse_prod());
      } else if (accept("-")) {
        lhs = make_binary("-", lhs, parse_prod());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_prod() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept("*")) {
        lhs = make_binary("*", lhs, parse_unary());
      } else if (accept("/")) {
        lhs = make_binary("/", lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept("-")) return make_unary("-", parse_unary());
    if (accept("+")) return parse_unary();
    if (accept_single('!', '=')) return make_unary("!", parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (accept("^")) return make_binary("^", base, parse_unary());
    return base;
  }

  NodePtr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_or();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make_number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = src_.substr(start, pos_ - start);
      if (name == "true") return make_number(1.0);
      if (name == "false") return make_number(0.0);
      return make_variable(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, const Bindings& b, const std::string& src) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number;
    case Node::Kind::Variable: {
      const auto it = b.find(n.name);
      if (it == b.end()) throw CatalogError("expression '" + src + "': unbound '" + n.name + "'");
      return it->second;
    }
    case Node::Kind::Unary: {
      const double v = eval(*n.lhs, b, src);
      return n.name == "-" ? -v : (v == 0.0 ? 1.0 : 0.0);
    }
    case Node::Kind::Binary:
      break;
  }
  const std::string& op = n.name;
  if (op == "&&") return (eval(*n.lhs, b, src) != 0.0 && eval(*n.rhs, b, src) != 0.0) ? 1.0 : 0.0;
  if (op == "||") return (eval(*n.lhs, b, src) != 0.0 || eval(*n.rhs, b, src) != 0.0) ? 1.0 : 0.0;
  const double x = eval(*n.lhs, b, src);
  const double y = eval(*n.rhs, b, src);
  if (op == "+") return x + y;
  if (op == "-") return x - y;
  if (op == "*") return x * y;
  if (op == "/") return x / y;
  if (op == "^") return std::pow(x, y);
  if (op == "<") return x < y ? 1.0 : 0.0;
  if (op == "<=") return x <= y ? 1.0 : 0.0;
  if (op == ">") return x > y ? 1.0 : 0.0;
  if (op == ">=") return x >= y ? 1.0 : 0.0;
  if (op == "==") return x == y ? 1.0 : 0.0;
  if (op == "!=") return x != y ? 1.0 : 0.0;
  throw CatalogError("expression '" + src + "': unknown operator " + op);
}

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::Variable) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Expression Expression::parse(const std::string& source) {
  Expression e;
  e.source_ = source;
  e.root_ = Parser(e.source_).parse();
  return e;
}

double Expression::evaluate(const Bindings& bindings) const {
  if (!root_) throw CatalogError("empty expression");
  return eval(*root_, bindings, source_);
}

std::vector<std::string> Expression::identifiers() const {
  std::set<std::string> names;
  if (root_) collect(*root_, names);
  return {names.begin(), names.end()};
}

}  // namespace abnorm::expr
