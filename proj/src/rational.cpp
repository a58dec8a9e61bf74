#include "sgcl/rational.hpp"

#include <limits>
#include <ostream>

#include "sgcl/error.hpp"

namespace sgcl {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

[[noreturn]] void overflow() {
  throw Error(ErrorKind::Overflow, "rational arithmetic exceeds 64-bit range");
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

__int128 parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw Error(ErrorKind::NotRational, "not a rational literal: '" + std::string(whole) + "'");
  }
  __int128 v = 0;
  for (char c : digits) {
    if (!is_digit(c)) {
      throw Error(ErrorKind::NotRational, "not a rational literal: '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
    if (v > kMax) overflow();
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::Argument, "rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::Argument, "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) overflow();
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  __int128 num = 0;
  __int128 den = 1;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    num = parse_digits(body.substr(0, slash), text);
    den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::NotRational, "zero denominator in '" + std::string(text) + "'");
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = body.substr(dot + 1);
    num = parse_digits(whole, text);
    if (frac.empty()) throw Error(ErrorKind::NotRational, "not a rational literal: '" + std::string(text) + "'");
    for (char c : frac) {
      if (!is_digit(c)) {
        throw Error(ErrorKind::NotRational, "not a rational literal: '" + std::string(text) + "'");
      }
      num = num * 10 + (c - '0');
      den *= 10;
      if (num > kMax * 10 || den > kMax * 10) overflow();
    }
  } else {
    num = parse_digits(body, text);
  }
  return from_wide(negative ? -num : num, den);
}

Rational Rational::pow10_neg(int k) {
  if (k < 0 || k > 18) throw Error(ErrorKind::Overflow, "10^-k out of range");
  std::int64_t d = 1;
  for (int i = 0; i < k; ++i) d *= 10;
  return Rational(1, d);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorKind::Argument, "division by zero");
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownAgent: return "unknown-agent";
    case ErrorKind::SubscriptRange: return "subscript-range";
    case ErrorKind::NotRational: return "not-rational";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::UnknownState: return "unknown-state";
    case ErrorKind::FailureState: return "failure-state";
    case ErrorKind::BadProfile: return "bad-profile";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::InvalidGame: return "invalid-game";
    case ErrorKind::Io: return "io";
    case ErrorKind::Limit: return "limit";
    case ErrorKind::Argument: return "argument";
  }
  return "unknown";
}

}  // namespace sgcl
