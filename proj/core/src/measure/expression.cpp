#include "transineq/measure/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "transineq/errors.hpp"

namespace transineq {

struct Expression::Node {
  enum class Op { kNum, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kAbs, kExp, kLog, kMin, kMax };
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
    NodePtr n = expr();
    skip_ws();
    if (pos_ < s_.size()) throw SyntaxError(pos_, "unexpected character");
    return n;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::kNeg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::kPow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "expected operand");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "r") return make(Op::kVar);
      Op op;
      int arity = 1;
      if (name == "abs") {
        op = Op::kAbs;
      } else if (name == "exp") {
        op = Op::kExp;
      } else if (name == "log") {
        op = Op::kLog;
      } else if (name == "min") {
        op = Op::kMin;
        arity = 2;
      } else if (name == "max") {
        op = Op::kMax;
        arity = 2;
      } else {
        throw UnknownIdentifier(start, name);
      }
      if (!accept('(')) throw SyntaxError(pos_, "expected '(' after " + name);
      NodePtr a = expr();
      NodePtr b;
      if (arity == 2) {
        if (!accept(',')) throw SyntaxError(pos_, "expected ','");
        b = expr();
      }
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return make(op, a, b);
    }
    throw SyntaxError(pos_, "unexpected character");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw SyntaxError(start, "malformed number");
    return make(Op::kNum, nullptr, nullptr, v);
  }
};

struct Dual {
  double v, d;
};

Dual eval(const Node& n, double r) {
  switch (n.op) {
    case Op::kNum: return {n.value, 0.0};
    case Op::kVar: return {r, 1.0};
    case Op::kNeg: {
      const Dual a = eval(*n.a, r);
      return {-a.v, -a.d};
    }
    case Op::kAdd: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return {a.v + b.v, a.d + b.d};
    }
    case Op::kSub: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return {a.v - b.v, a.d - b.d};
    }
    case Op::kMul: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return {a.v * b.v, a.d * b.v + a.v * b.d};
    }
    case Op::kDiv: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
    }
    case Op::kPow: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      const double v = std::pow(a.v, b.v);
      double d = 0.0;
      if (a.d != 0.0) d += (b.v == 0.0) ? 0.0 : b.v * std::pow(a.v, b.v - 1.0) * a.d;
      if (b.d != 0.0) d += v * std::log(a.v) * b.d;
      return {v, d};
    }
    case Op::kAbs: {
      const Dual a = eval(*n.a, r);
      return a.v < 0.0 ? Dual{-a.v, -a.d} : a;
    }
    case Op::kExp: {
      const Dual a = eval(*n.a, r);
      const double e = std::exp(a.v);
      return {e, e * a.d};
    }
    case Op::kLog: {
      const Dual a = eval(*n.a, r);
      return {std::log(a.v), a.d / a.v};
    }
    case Op::kMin: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return a.v <= b.v ? a : b;
    }
    case Op::kMax: {
      const Dual a = eval(*n.a, r), b = eval(*n.b, r);
      return a.v >= b.v ? a : b;
    }
  }
  return {NAN, NAN};
}

// Partial fold to c * r^theta + b. theta is empty for pure constants.
struct Fold {
  double c = 0.0;
  std::optional<double> theta;
  double b = 0.0;
};

std::optional<double> constant_of(const Node& n);

std::optional<Fold> fold(const Node& n) {
  switch (n.op) {
    case Op::kNum: return Fold{0.0, std::nullopt, n.value};
    case Op::kVar: return Fold{1.0, 1.0, 0.0};
    case Op::kPow: {
      const bool var_base = n.a->op == Op::kVar ||
                            (n.a->op == Op::kAbs && n.a->a->op == Op::kVar);
      const auto e = constant_of(*n.b);
      if (var_base && e) return Fold{1.0, *e, 0.0};
      if (auto k = constant_of(n)) return Fold{0.0, std::nullopt, *k};
      return std::nullopt;
    }
    case Op::kNeg: {
      // Only a literal leading sign counts; -(1 + r^2) stays an expression.
      if (n.a->op == Op::kAdd || n.a->op == Op::kSub) return std::nullopt;
      auto f = fold(*n.a);
      if (!f) return std::nullopt;
      return Fold{-f->c, f->theta, -f->b};
    }
    case Op::kAdd:
    case Op::kSub: {
      auto x = fold(*n.a), y = fold(*n.b);
      if (!x || !y) return std::nullopt;
      const double s = n.op == Op::kAdd ? 1.0 : -1.0;
      if (x->theta && y->theta && *x->theta != *y->theta) return std::nullopt;
      return Fold{x->c + s * y->c, x->theta ? x->theta : y->theta, x->b + s * y->b};
    }
    case Op::kMul: {
      auto x = fold(*n.a), y = fold(*n.b);
      if (!x || !y) return std::nullopt;
      if (!x->theta) std::swap(x, y);
      if (y->theta) return std::nullopt;  // product of two non-constants
      return Fold{x->c * y->b, x->theta, x->b * y->b};
    }
    case Op::kDiv: {
      auto x = fold(*n.a), y = fold(*n.b);
      if (!x || !y || y->theta) return std::nullopt;
      return Fold{x->c / y->b, x->theta, x->b / y->b};
    }
    default: {
      if (auto k = constant_of(n)) return Fold{0.0, std::nullopt, *k};
      return std::nullopt;
    }
  }
}

bool depends_on_r(const Node& n) {
  if (n.op == Op::kVar) return true;
  return (n.a && depends_on_r(*n.a)) || (n.b && depends_on_r(*n.b));
}

std::optional<double> constant_of(const Node& n) {
  if (depends_on_r(n)) return std::nullopt;
  return eval(n, 0.0).v;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 127) throw SyntaxError(i, "non-ASCII character");
  }
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double r) const { return eval(*root_, r).v; }

std::pair<double, double> Expression::eval_with_derivative(double r) const {
  const Dual d = eval(*root_, r);
  return {d.v, d.d};
}

std::optional<AffinePower> Expression::affine_power() const {
  auto f = fold(*root_);
  if (!f || !f->theta) return std::nullopt;
  return AffinePower{f->c, *f->theta, f->b};
}

}  // namespace transineq
