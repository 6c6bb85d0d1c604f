#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "bd/error.hpp"

namespace bd {

// Exact positive-denominator rational over 64-bit integers.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ParameterError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  // Accepts "3", "5/2" and finite decimals such as "2.5".
  static Rational parse(std::string_view text) {
    auto fail = [&] { return ParameterError("cannot parse rational '" + std::string(text) + "'"); };
    auto parse_int = [&](std::string_view s) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw fail();
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view frac = text.substr(dot + 1);
      if (frac.size() > 17) throw fail();
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      std::string_view whole = text.substr(0, dot);
      bool negative = !whole.empty() && whole.front() == '-';
      std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
      std::int64_t f = frac.empty() ? 0 : parse_int(frac);
      if (f < 0) throw fail();
      __int128 n = static_cast<__int128>(w < 0 ? -w : w) * scale + f;
      if (n > INT64_MAX) throw fail();
      return Rational(negative ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n), scale);
    }
    return Rational(parse_int(text));
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace bd
