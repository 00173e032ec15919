#include "fl/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fl {

struct Expression::Node {
  enum Kind { num, var_x, var_y, var_r, neg, add, sub, mul, div, pow, call } kind;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double y) const {
    switch (kind) {
      case num: return value;
      case var_x: return x;
      case var_y: return y;
      case var_r: return std::hypot(x, y);
      case neg: return -args[0]->eval(x, y);
      case add: return args[0]->eval(x, y) + args[1]->eval(x, y);
      case sub: return args[0]->eval(x, y) - args[1]->eval(x, y);
      case mul: return args[0]->eval(x, y) * args[1]->eval(x, y);
      case div: return args[0]->eval(x, y) / args[1]->eval(x, y);
      case pow: {
        const double b = args[0]->eval(x, y), e = args[1]->eval(x, y);
        if (e == std::round(e) && std::abs(e) <= 64) {
          double p = 1.0;
          for (int k = 0; k < std::abs(static_cast<int>(e)); ++k) p *= b;
          return e < 0 ? 1.0 / p : p;
        }
        return std::pow(b, e);
      }
      case call: return fn(args[0]->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using NodeP = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodeP make(Node::Kind k, std::vector<NodeP> args = {}, double v = 0.0, double (*fn)(double) = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = v;
  n->fn = fn;
  return n;
}

double fabs_(double v) { return std::fabs(v); }

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodeP parse() {
    NodeP n = sum();
    skip();
    if (p_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + s_ + "': " + what + " at position " + std::to_string(p_));
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }

  NodeP sum() {
    NodeP n = product();
    for (;;) {
      if (eat('+')) n = make(Node::add, {n, product()});
      else if (eat('-')) n = make(Node::sub, {n, product()});
      else return n;
    }
  }
  NodeP product() {
    NodeP n = unary();
    for (;;) {
      if (eat('*')) n = make(Node::mul, {n, unary()});
      else if (eat('/')) n = make(Node::div, {n, unary()});
      else return n;
    }
  }
  NodeP unary() {
    if (eat('-')) return make(Node::neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }
  NodeP power() {
    NodeP b = atom();
    if (eat('^')) return make(Node::pow, {b, unary()});  // right associative
    return b;
  }
  NodeP atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      NodeP n = sum();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[p_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(s_.c_str() + p_, &end);
      if (end == s_.c_str() + p_) fail("bad number");
      p_ = end - s_.c_str();
      return make(Node::num, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
      const std::string id = s_.substr(start, p_ - start);
      if (id == "x" || id == "x1") return make(Node::var_x);
      if (id == "y" || id == "x2") return make(Node::var_y);
      if (id == "r") return make(Node::var_r);
      if (id == "pi") return make(Node::num, {}, std::numbers::pi);
      if (id == "e") return make(Node::num, {}, std::numbers::e);
      double (*fn)(double) = nullptr;
      if (id == "sin") fn = [](double v) { return std::sin(v); };
      else if (id == "cos") fn = [](double v) { return std::cos(v); };
      else if (id == "tan") fn = [](double v) { return std::tan(v); };
      else if (id == "exp") fn = [](double v) { return std::exp(v); };
      else if (id == "log") fn = [](double v) { return std::log(v); };
      else if (id == "sqrt") fn = [](double v) { return std::sqrt(v); };
      else if (id == "abs") fn = fabs_;
      else {
        p_ = start;
        fail("unknown name '" + id + "'");
      }
      if (!eat('(')) fail("expected '(' after " + id);
      NodeP arg = sum();
      if (!eat(')')) fail("missing ')'");
      return make(Node::call, {arg}, 0.0, fn);
    }
    fail("unexpected character");
  }
};

}  // namespace

Expression::Expression(const std::string& text) : text_(text), root_(Parser(text).parse()) {}

double Expression::operator()(double x, double y) const {
  if (!root_) throw std::logic_error("empty expression");
  return root_->eval(x, y);
}

}  // namespace fl
