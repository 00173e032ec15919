#pragma once

#include <memory>
#include <string>

namespace fl {

// Arithmetic expression in x, y (aliases x1, x2) and r = sqrt(x^2 + y^2).
// Operators + - * / ^, functions sin cos tan exp log sqrt abs, constants pi and e.
class Expression {
 public:
  Expression() = default;
  explicit Expression(const std::string& text);  // throws std::invalid_argument with the offending position
  double operator()(double x, double y = 0.0) const;
  const std::string& text() const { return text_; }
  bool empty() const { return !root_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace fl
