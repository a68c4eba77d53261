#include "dioph/rational.hpp"

#include <cctype>
#include <numeric>

namespace dioph {

namespace {

std::int64_t narrow(__int128 value) {
  if (value > INT64_MAX || value < INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(value);
}

Rational make(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = g > 1 ? numerator / g : numerator;
  den_ = g > 1 ? denominator / g : denominator;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto to_int = [&](std::string_view part) {
    if (part.empty()) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    std::size_t used = 0;
    const long long v = std::stoll(std::string(part), &used);
    if (used != part.size()) throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    return static_cast<std::int64_t>(v);
  };
  if (slash == std::string_view::npos) return Rational(to_int(text));
  return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  if (num_ == INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  return Rational(-num_, den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

// Precedence climbing over: || && (== != < <= > >=) (+ -) (* /) unary ^
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ExpressionScope& scope) : text_(text), scope_(scope) {}

  Rational run() {
    Rational value = disjunction();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  static Rational truth(bool b) { return Rational(b ? 1 : 0); }

  Rational disjunction() {
    Rational value = conjunction();
    while (take("||")) {
      const Rational rhs = conjunction();
      value = truth(value != Rational(0) || rhs != Rational(0));
    }
    return value;
  }

  Rational conjunction() {
    Rational value = comparison();
    while (take("&&")) {
      const Rational rhs = comparison();
      value = truth(value != Rational(0) && rhs != Rational(0));
    }
    return value;
  }

  Rational comparison() {
    Rational value = sum();
    for (;;) {
      if (take("==")) value = truth(value == sum());
      else if (take("!=")) value = truth(value != sum());
      else if (take("<=")) value = truth(value <= sum());
      else if (take(">=")) value = truth(value >= sum());
      else if (take("<")) value = truth(value < sum());
      else if (take(">")) value = truth(value > sum());
      else return value;
    }
  }

  Rational sum() {
    Rational value = product();
    for (;;) {
      if (take("+")) value = value + product();
      else if (take("-")) value = value - product();
      else return value;
    }
  }

  Rational product() {
    Rational value = unary();
    for (;;) {
      if (take("*")) value = value * unary();
      else if (take("/")) value = value / unary();
      else return value;
    }
  }

  Rational unary() {
    if (take("-")) return -unary();
    if (take("!")) return truth(unary() == Rational(0));
    return power();
  }

  Rational power() {
    const Rational base = primary();
    if (!take("^")) return base;
    const Rational exponent = unary();
    if (exponent.den() != 1 || exponent.num() < 0 || exponent.num() > 64) {
      fail("exponent must be an integer in [0, 64]");
    }
    Rational result(1);
    for (std::int64_t i = 0; i < exponent.num(); ++i) result = result * base;
    return result;
  }

  Rational primary() {
    skip();
    if (take("(")) {
      const Rational value = disjunction();
      if (!take(")")) fail("expected ')'");
      return value;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::int64_t value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (__builtin_mul_overflow(value, 10, &value) || __builtin_add_overflow(value, text_[pos_] - '0', &value)) {
          fail("integer literal too large");
        }
        ++pos_;
      }
      return Rational(value);
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto it = scope_.find(name);
      if (it == scope_.end()) fail("unknown variable '" + std::string(name) + "'");
      return it->second;
    }
    fail("expected a number, variable or '('");
  }

  bool take(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) != token) return false;
    // keep "<" from eating the first half of "<=" and so on
    if (token.size() == 1 && (token == "<" || token == ">" || token == "!") && pos_ + 1 < text_.size() &&
        text_[pos_ + 1] == '=') {
      return false;
    }
    pos_ += token.size();
    return true;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ExpressionError("in expression '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + message);
  }

  std::string_view text_;
  const ExpressionScope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational evaluate_expression(std::string_view expression, const ExpressionScope& scope) {
  return ExpressionParser(expression, scope).run();
}

}  // namespace dioph
