#pragma once

// Exact rational numbers.
//
// Values live in a pair of int64 (numerator, denominator) while they fit;
// any operation whose result does not fit is redone in arbitrary precision
// and the value is kept in a boost::multiprecision::cpp_rational until it
// becomes small again. Both representations are always canonical:
// gcd(num, den) = 1 and den > 0.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eqt {

class Rational {
 public:
  using BigInt = boost::multiprecision::cpp_int;
  using BigRational = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : num_(value) {  // NOLINT: implicit by design of numeric types
    if (value == kMin) promote_from(BigRational(value));
  }
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    assign(static_cast<i128>(num), static_cast<i128>(den));
  }
  explicit Rational(const BigRational& value) { assign_big(value); }

  Rational(const Rational& other)
      : num_(other.num_), den_(other.den_),
        big_(other.big_ ? std::make_unique<BigRational>(*other.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other) {
    if (this != &other) {
      num_ = other.num_;
      den_ = other.den_;
      big_ = other.big_ ? std::make_unique<BigRational>(*other.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return big_ == nullptr; }
  bool is_zero() const { return is_small() && num_ == 0; }
  bool is_integer() const {
    return is_small() ? den_ == 1 : boost::multiprecision::denominator(*big_) == 1;
  }
  int sign() const {
    if (is_small()) return (num_ > 0) - (num_ < 0);
    return big_->sign();
  }

  BigInt numerator() const {
    return is_small() ? BigInt(num_) : boost::multiprecision::numerator(*big_);
  }
  BigInt denominator() const {
    return is_small() ? BigInt(den_) : boost::multiprecision::denominator(*big_);
  }
  BigRational to_big() const { return is_small() ? BigRational(num_, den_) : *big_; }

  double to_double() const {
    return is_small() ? static_cast<double>(num_) / static_cast<double>(den_)
                      : big_->convert_to<double>();
  }

  // Throws std::range_error unless this is an integer that fits in int64.
  std::int64_t to_int64() const {
    if (!is_small() || den_ != 1) throw std::range_error("rational " + str() + " is not an int64");
    return num_;
  }

  // Largest integer not greater than this value.
  Rational floor() const {
    if (is_small()) {
      std::int64_t q = num_ / den_;
      if (num_ % den_ != 0 && num_ < 0) --q;
      return Rational(q);
    }
    BigInt n = boost::multiprecision::numerator(*big_);
    BigInt d = boost::multiprecision::denominator(*big_);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) --q;
    return Rational(BigRational(q));
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational operator-() const {
    if (is_small()) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(BigRational(-*big_));
  }

  Rational& operator+=(const Rational& o) {
    if (is_small() && o.is_small()) {
      add_small(o.num_, o.den_);
    } else {
      assign_big(to_big() + o.to_big());
    }
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    if (is_small() && o.is_small() && o.num_ != kMin) {
      add_small(-o.num_, o.den_);
    } else {
      assign_big(to_big() - o.to_big());
    }
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    if (is_small() && o.is_small()) {
      mul_small(o.num_, o.den_);
    } else {
      assign_big(to_big() * o.to_big());
    }
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    if (is_small() && o.is_small()) {
      std::int64_t n = o.den_;
      std::int64_t d = o.num_;
      if (d < 0) {
        n = -n;
        d = -d;
      }
      mul_small(n, d);
    } else {
      assign_big(to_big() / o.to_big());
    }
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.is_small() != b.is_small()) return false;  // canonical forms differ
    return *a.big_ == *b.big_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
      i128 lhs = static_cast<i128>(a.num_) * b.den_;
      i128 rhs = static_cast<i128>(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    BigRational x = a.to_big();
    BigRational y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Canonical text form: "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (is_small()) {
      return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    BigInt n = boost::multiprecision::numerator(*big_);
    BigInt d = boost::multiprecision::denominator(*big_);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
  }

  // Accepts "p", "-p", "+p" or "p/q" with decimal digits; q must be nonzero.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num_text = text.substr(0, slash);
    std::string_view den_text = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
    BigInt n = parse_integer(num_text, text);
    BigInt d = parse_integer(den_text, text);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(BigRational(n, d));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using i128 = __int128;
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  static bool fits(i128 v) { return v <= kMax && v >= -static_cast<i128>(kMax); }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static BigInt to_bigint(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : v;
    BigInt hi = static_cast<std::uint64_t>(u >> 64);
    BigInt r = (hi << 64) + BigInt(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-r) : r;
  }

  static BigInt parse_integer(std::string_view digits, std::string_view whole) {
    std::size_t pos = 0;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      neg = digits[0] == '-';
      pos = 1;
    }
    if (pos == digits.size()) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    BigInt v = 0;
    for (; pos < digits.size(); ++pos) {
      char c = digits[pos];
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
      }
      v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
  }

  // num/den with den != 0, arbitrary sign, not necessarily reduced.
  void assign(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
    } else {
      promote_from(BigRational(to_bigint(num), to_bigint(den)));
    }
  }

  void assign_big(const BigRational& v) {
    const BigInt& n = boost::multiprecision::numerator(v);
    const BigInt& d = boost::multiprecision::denominator(v);
    if (n <= kMax && n >= -BigInt(kMax) && d <= kMax) {
      num_ = n.convert_to<std::int64_t>();
      den_ = d.convert_to<std::int64_t>();
      big_.reset();
    } else {
      promote_from(v);
    }
  }

  void promote_from(const BigRational& v) {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<BigRational>(v);
  }

  void add_small(std::int64_t c, std::int64_t d) {
    std::int64_t g = std::gcd(den_, d);
    if (g == 1) {
      i128 n = static_cast<i128>(num_) * d + static_cast<i128>(c) * den_;
      i128 dd = static_cast<i128>(den_) * d;
      store_reduced(n, dd);
      return;
    }
    std::int64_t bg = den_ / g;
    i128 t = static_cast<i128>(num_) * (d / g) + static_cast<i128>(c) * bg;
    std::int64_t rem = static_cast<std::int64_t>(t % g);
    std::int64_t g2 = std::gcd(rem < 0 ? -rem : rem, g);
    store_reduced(t / g2, static_cast<i128>(bg) * (d / g2));
  }

  void mul_small(std::int64_t c, std::int64_t d) {
    std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, d);
    std::int64_t g2 = std::gcd(c < 0 ? -c : c, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 n = static_cast<i128>(num_ / g1) * (c / g2);
    i128 dd = static_cast<i128>(den_ / g2) * (d / g1);
    store_reduced(n, dd);
  }

  // n/d already reduced, d > 0.
  void store_reduced(i128 n, i128 d) {
    if (n == 0) d = 1;
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      promote_from(BigRational(to_bigint(n), to_bigint(d)));
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<BigRational> big_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace eqt
