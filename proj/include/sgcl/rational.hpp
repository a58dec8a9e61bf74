#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sgcl {

// Exact rational with 64-bit numerator and denominator.
//
// Always normalized: den > 0 and gcd(|num|, den) == 1. Every operation
// computes in 128-bit intermediates and throws Error(Overflow) when the
// normalized result does not fit, so a result is either exact or absent.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t num) noexcept : num_(num), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "3", "-2", "9/10", "0.25", "1.0". No exponents, no whitespace.
  static Rational parse(std::string_view text);

  // 10^{-k} as an exact value.
  static Rational pow10_neg(int k);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool in_unit_interval() const noexcept { return num_ >= 0 && num_ <= den_; }

  // "n" or "n/d", lowest terms.
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  std::size_t hash() const noexcept {
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace sgcl

template <>
struct std::hash<sgcl::Rational> {
  std::size_t operator()(const sgcl::Rational& r) const noexcept { return r.hash(); }
};
