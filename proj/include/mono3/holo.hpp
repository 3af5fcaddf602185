#pragma once

/**
 * @file holo.hpp
 * @brief Holomorphic expressions in one complex variable z.
 *
 * Grammar (see docs/grammar.md):
 *
 *     expr    := term { ('+' | '-') term }
 *     term    := unary { ('*' | '/') unary }
 *     unary   := '-' unary | '+' unary | power
 *     power   := primary { '^' integer }
 *     primary := number | 'i' | 'z' | func '(' expr ')' | '(' expr ')'
 *     func    := 'exp' | 'sin' | 'cos' | 'log'
 *
 * An expression is evaluated over any ring that supplies constants, a
 * checked reciprocal and a lift for the builtin functions: complex numbers,
 * algebra elements (A3) and truncated series (Taylor<N>). Over A3 a builtin g
 * is lifted through the nilpotent Taylor expansion
 *
 *     g(a + n) = g(a) + g'(a) n + g''(a) n^2 / 2,    n in the radical,
 *
 * which is exact because n^3 = 0. Seeding with xi + rho therefore returns the
 * second-order jet of F at xi.
 */

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"
#include "mono3/taylor.hpp"

namespace mono3 {

enum class Builtin { exp, sin, cos, log };

constexpr std::string_view builtin_name(Builtin fn) noexcept {
  switch (fn) {
    case Builtin::exp: return "exp";
    case Builtin::sin: return "sin";
    case Builtin::cos: return "cos";
    case Builtin::log: return "log";
  }
  return "?";
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { literal, variable, negate, add, sub, mul, div, power, call };

  Kind kind = Kind::literal;
  Complex value{};       // literal
  int exponent = 0;      // power
  Builtin fn{};          // call
  NodePtr lhs, rhs;      // unary nodes use lhs only
  std::size_t pos = 0;   // offset in the source text, for error reporting
};

/// g^(m)(a) for m < N. The principal branch is used for log.
template <std::size_t N>
std::array<Complex, N> builtin_derivatives(Builtin fn, Complex a, std::size_t pos = 0) {
  std::array<Complex, N> d{};
  switch (fn) {
    case Builtin::exp: {
      const Complex e = std::exp(a);
      d.fill(e);
      break;
    }
    case Builtin::sin:
    case Builtin::cos: {
      const Complex s = std::sin(a);
      const Complex c = std::cos(a);
      const std::array<Complex, 4> cycle =
          fn == Builtin::sin ? std::array<Complex, 4>{s, c, -s, -c} : std::array<Complex, 4>{c, -s, -c, s};
      for (std::size_t m = 0; m < N; ++m) d[m] = cycle[m % 4];
      break;
    }
    case Builtin::log: {
      if (a == Complex{}) throw Error(Errc::branch_error, "log of zero at offset " + std::to_string(pos));
      d[0] = std::log(a);
      // d^m/da^m log a = (-1)^(m-1) (m-1)! / a^m
      Complex power = 1.0 / a;
      double coeff = 1.0;
      for (std::size_t m = 1; m < N; ++m) {
        d[m] = coeff * power;
        power /= a;
        coeff *= -static_cast<double>(m);
      }
      break;
    }
  }
  return d;
}

namespace detail {

template <class T>
struct Ring;

template <>
struct Ring<Complex> {
  static Complex constant(Complex v) { return v; }
  static Complex divide(const Complex& x, const Complex& y, std::size_t pos) {
    if (y == Complex{}) throw Error(Errc::pole_error, "division by zero at offset " + std::to_string(pos));
    return x / y;
  }
  static Complex apply(Builtin fn, const Complex& x, std::size_t pos) {
    switch (fn) {
      case Builtin::exp: return std::exp(x);
      case Builtin::sin: return std::sin(x);
      case Builtin::cos: return std::cos(x);
      case Builtin::log:
        if (x == Complex{}) throw Error(Errc::branch_error, "log of zero at offset " + std::to_string(pos));
        return std::log(x);
    }
    return {};
  }
};

template <>
struct Ring<A3> {
  static A3 constant(Complex v) { return scalar(v); }
  static A3 divide(const A3& x, const A3& y, std::size_t pos) {
    if (!(std::abs(y.a) >= kInvertibilityFloor) || y.a == Complex{})
      throw Error(Errc::non_invertible,
                  "division at offset " + std::to_string(pos) + " over the singular fiber");
    return x * inverse(y);
  }
  static A3 apply(Builtin fn, const A3& x, std::size_t pos) {
    const auto g = builtin_derivatives<3>(fn, x.a, pos);
    return {g[0], g[1] * x.b, g[1] * x.c + g[2] * x.b * x.b / 2.0};
  }
};

template <std::size_t N>
struct Ring<Taylor<N>> {
  static Taylor<N> constant(Complex v) { return Taylor<N>::constant(v); }
  static Taylor<N> divide(const Taylor<N>& x, const Taylor<N>& y, std::size_t pos) {
    if (!(std::abs(y.c[0]) >= kInvertibilityFloor) || y.c[0] == Complex{})
      throw Error(Errc::non_invertible,
                  "division at offset " + std::to_string(pos) + " over the singular fiber");
    return x * inverse(y);
  }
  static Taylor<N> apply(Builtin fn, const Taylor<N>& x, std::size_t pos) {
    return lift(builtin_derivatives<N>(fn, x.c[0], pos), x);
  }
};

}  // namespace detail

/// Evaluates the tree at z over any ring with a detail::Ring specialization.
template <class T>
T evaluate(const Node& n, const T& z) {
  using R = detail::Ring<T>;
  switch (n.kind) {
    case Node::Kind::literal: return R::constant(n.value);
    case Node::Kind::variable: return z;
    case Node::Kind::negate: return -evaluate(*n.lhs, z);
    case Node::Kind::add: return evaluate(*n.lhs, z) + evaluate(*n.rhs, z);
    case Node::Kind::sub: return evaluate(*n.lhs, z) - evaluate(*n.rhs, z);
    case Node::Kind::mul: return evaluate(*n.lhs, z) * evaluate(*n.rhs, z);
    case Node::Kind::div: return R::divide(evaluate(*n.lhs, z), evaluate(*n.rhs, z), n.pos);
    case Node::Kind::power: {
      const T base = evaluate(*n.lhs, z);
      // 0^0 = 1: the empty product.
      T result = R::constant(1.0);
      T square = base;
      for (long e = std::abs(static_cast<long>(n.exponent)); e > 0; e >>= 1) {
        if (e & 1) result = result * square;
        if (e > 1) square = square * square;
      }
      if (n.exponent < 0) return R::divide(R::constant(1.0), result, n.pos);
      return result;
    }
    case Node::Kind::call: return R::apply(n.fn, evaluate(*n.lhs, z), n.pos);
  }
  return R::constant(0.0);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace detail {

inline NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::syntax_error, msg + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static NodePtr binary(Node::Kind kind, NodePtr l, NodePtr r, std::size_t pos) {
    Node n;
    n.kind = kind;
    n.lhs = std::move(l);
    n.rhs = std::move(r);
    n.pos = pos;
    return make_node(std::move(n));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = binary(Node::Kind::add, lhs, term(), at);
      else if (accept('-'))
        lhs = binary(Node::Kind::sub, lhs, term(), at);
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*'))
        lhs = binary(Node::Kind::mul, lhs, unary(), at);
      else if (accept('/'))
        lhs = binary(Node::Kind::div, lhs, unary(), at);
      else
        return lhs;
    }
  }

  NodePtr unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      Node n;
      n.kind = Node::Kind::negate;
      n.lhs = unary();
      n.pos = at;
      return make_node(std::move(n));
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('^')) return base;
      Node n;
      n.kind = Node::Kind::power;
      n.lhs = base;
      n.exponent = integer_exponent();
      n.pos = at;
      base = make_node(std::move(n));
    }
  }

  int integer_exponent() {
    skip_ws();
    const bool parens = accept('(');
    skip_ws();
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("integer exponent expected");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      pos_ = start;
      fail("integer exponent expected");
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("exponent out of range");
    }
    if (parens) expect(')');
    return negative ? -value : value;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char ch = text_[pos_];

    if ((ch >= '0' && ch <= '9') || ch == '.') return number();

    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view id = text_.substr(at, pos_ - at);
      Node n;
      n.pos = at;
      if (id == "z") {
        n.kind = Node::Kind::variable;
        return make_node(std::move(n));
      }
      if (id == "i") {
        n.kind = Node::Kind::literal;
        n.value = Complex{0.0, 1.0};
        return make_node(std::move(n));
      }
      for (Builtin fn : {Builtin::exp, Builtin::sin, Builtin::cos, Builtin::log}) {
        if (id != builtin_name(fn)) continue;
        n.kind = Node::Kind::call;
        n.fn = fn;
        expect('(');
        n.lhs = expr();
        expect(')');
        return make_node(std::move(n));
      }
      pos_ = at;
      fail("unknown identifier '" + std::string(id) + "'");
    }

    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      digits();
      if (exp_start == pos_) pos_ = mark;  // "2e" is 2 followed by identifier e
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      pos_ = start;
      fail("malformed number");
    }
    Node n;
    n.kind = Node::Kind::literal;
    n.value = value;
    n.pos = start;
    return make_node(std::move(n));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Binding strength used to decide parenthesization.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

inline int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::add:
    case Node::Kind::sub: return kSum;
    case Node::Kind::mul:
    case Node::Kind::div: return kProduct;
    case Node::Kind::negate: return kUnary;
    case Node::Kind::power: return kPower;
    case Node::Kind::literal: {
      const Complex v = n.value;
      if (v.imag() == 0.0) return std::signbit(v.real()) ? kUnary : kAtom;
      if (v.real() == 0.0 && v.imag() == 1.0) return kAtom;
      return kSum;
    }
    default: return kAtom;
  }
}

inline void print(const Node& n, std::string& out);

inline void print_operand(const Node& n, int min_prec, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

inline void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::literal: {
      const Complex v = n.value;
      if (v.imag() == 0.0) {
        if (std::signbit(v.real())) out += '-';
        out += format_real(std::abs(v.real()));
      } else if (v.real() == 0.0 && v.imag() == 1.0) {
        out += 'i';
      } else {
        out += format_real(v.real());
        out += v.imag() < 0 ? " - " : " + ";
        out += format_real(std::abs(v.imag()));
        out += "*i";
      }
      return;
    }
    case Node::Kind::variable: out += 'z'; return;
    case Node::Kind::negate:
      out += '-';
      print_operand(*n.lhs, kUnary, out);
      return;
    case Node::Kind::add:
    case Node::Kind::sub:
      print_operand(*n.lhs, kSum, out);
      out += n.kind == Node::Kind::add ? " + " : " - ";
      print_operand(*n.rhs, kProduct, out);
      return;
    case Node::Kind::mul:
    case Node::Kind::div:
      print_operand(*n.lhs, kProduct, out);
      out += n.kind == Node::Kind::mul ? '*' : '/';
      print_operand(*n.rhs, kUnary, out);
      return;
    case Node::Kind::power:
      print_operand(*n.lhs, kAtom, out);
      out += '^';
      if (n.exponent < 0)
        out += "(" + std::to_string(n.exponent) + ")";
      else
        out += std::to_string(n.exponent);
      return;
    case Node::Kind::call:
      out += builtin_name(n.fn);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace detail

/// An immutable holomorphic expression. Default-constructed value is the
/// zero function.
class HoloFn {
 public:
  HoloFn() : HoloFn(constant_node(0.0)) {}
  explicit HoloFn(NodePtr root) : root_(std::move(root)) {}

  static HoloFn constant(Complex v) { return HoloFn(constant_node(v)); }

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  bool is_zero() const { return root_->kind == Node::Kind::literal && root_->value == Complex{}; }

  Complex operator()(Complex z) const { return evaluate(*root_, z); }
  A3 operator()(const A3& z) const { return evaluate(*root_, z); }
  template <std::size_t N>
  Taylor<N> operator()(const Taylor<N>& z) const {
    return evaluate(*root_, z);
  }

  std::string str() const {
    std::string out;
    detail::print(*root_, out);
    return out;
  }

  friend HoloFn operator*(const HoloFn& f, const HoloFn& g) {
    Node n;
    n.kind = Node::Kind::mul;
    n.lhs = f.root_;
    n.rhs = g.root_;
    return HoloFn(detail::make_node(std::move(n)));
  }

 private:
  static NodePtr constant_node(Complex v) {
    Node n;
    n.kind = Node::Kind::literal;
    n.value = v;
    return detail::make_node(std::move(n));
  }

  NodePtr root_;
};

inline HoloFn parse(std::string_view text) { return HoloFn(detail::Parser(text).parse()); }

inline std::string to_string(const HoloFn& f) { return f.str(); }

inline Complex eval_c(const HoloFn& f, Complex z) { return f(z); }

inline A3 eval_a3(const HoloFn& f, const A3& z) { return f(z); }

/// F(xi), F'(xi), F''(xi).
struct Jet {
  Complex value{};
  Complex first{};
  Complex second{};
};

/// Reads the jet off F(xi + rho) = F + F' rho + (F''/2) rho^2.
inline Jet jet(const HoloFn& f, Complex xi) {
  const A3 v = eval_a3(f, A3{xi, 1.0, 0.0});
  return {v.a, v.b, 2.0 * v.c};
}

/// F^(m)(xi) for m < N, from a truncated series seeded at xi.
template <std::size_t N>
std::array<Complex, N> derivatives(const HoloFn& f, Complex xi) {
  const Taylor<N> t = f(Taylor<N>::variable(xi));
  std::array<Complex, N> d{};
  double factorial = 1.0;
  for (std::size_t m = 0; m < N; ++m) {
    if (m > 0) factorial *= static_cast<double>(m);
    d[m] = t.c[m] * factorial;
  }
  return d;
}

}  // namespace mono3
