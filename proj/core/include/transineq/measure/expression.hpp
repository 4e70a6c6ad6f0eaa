#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transineq {

/// c * r^theta + b, recognised when an expression reduces to that shape.
struct AffinePower {
  double coeff = 0.0;
  double theta = 0.0;
  double offset = 0.0;
};

/// Immutable arithmetic expression in the single variable `r`.
///
/// Grammar: numbers, `r`, binary + - * / ^ (right associative, binds
/// tighter than unary minus), unary -, and the functions abs, exp, log,
/// min, max. Evaluation carries a forward-mode derivative.
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(double r) const;
  /// Value and d/dr at r.
  std::pair<double, double> eval_with_derivative(double r) const;

  /// Present when the tree folds to c * r^theta + b with constant c, theta, b.
  std::optional<AffinePower> affine_power() const;

  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace transineq
