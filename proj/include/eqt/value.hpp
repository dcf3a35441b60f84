#pragma once

// Extended values: payoffs may be -inf, reward costs may be +inf.

#include <compare>
#include <cstdint>
#include <string>

#include "eqt/errors.hpp"
#include "eqt/rational.hpp"

namespace eqt {

// A payoff entry: an exact rational or -inf.
class Payoff {
 public:
  Payoff() = default;
  Payoff(Rational v) : value_(std::move(v)) {}  // NOLINT
  Payoff(std::int64_t v) : value_(v) {}        // NOLINT

  static Payoff neg_inf() {
    Payoff p;
    p.neg_inf_ = true;
    return p;
  }

  bool is_neg_inf() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }

  // Precondition: is_finite().
  const Rational& value() const {
    if (neg_inf_) throw InternalError("value() on -inf payoff");
    return value_;
  }

  Payoff& operator+=(const Payoff& o) {
    if (neg_inf_ || o.neg_inf_) {
      *this = neg_inf();
    } else {
      value_ += o.value_;
    }
    return *this;
  }
  friend Payoff operator+(Payoff a, const Payoff& b) { return a += b; }

  // Nonnegative integer multiple; 0 * -inf = 0.
  friend Payoff scale(std::int64_t s, const Payoff& p) {
    if (s < 0) throw InternalError("negative payoff scale");
    if (s == 0) return Payoff(0);
    if (p.neg_inf_) return neg_inf();
    return Payoff(p.value_ * Rational(s));
  }

  friend bool operator==(const Payoff& a, const Payoff& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Payoff& a, const Payoff& b) {
    if (a.neg_inf_ || b.neg_inf_) {
      if (a.neg_inf_ && b.neg_inf_) return std::strong_ordering::equal;
      return a.neg_inf_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.value_ <=> b.value_;
  }

  std::string str() const { return neg_inf_ ? "-inf" : value_.str(); }

 private:
  Rational value_;
  bool neg_inf_ = false;
};

// A reward amount: a nonnegative exact rational or +inf.
class Cost {
 public:
  Cost() = default;
  explicit Cost(Rational v) : value_(std::move(v)) {
    if (value_.sign() < 0) throw InternalError("negative cost " + value_.str());
  }

  static Cost inf() {
    Cost c;
    c.inf_ = true;
    return c;
  }
  static Cost zero() { return Cost(); }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  bool is_zero() const { return !inf_ && value_.is_zero(); }

  const Rational& value() const {
    if (inf_) throw InternalError("value() on infinite cost");
    return value_;
  }

  Cost& operator+=(const Cost& o) {
    if (inf_ || o.inf_) {
      *this = inf();
    } else {
      value_ += o.value_;
    }
    return *this;
  }
  friend Cost operator+(Cost a, const Cost& b) { return a += b; }

  friend bool operator==(const Cost& a, const Cost& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.inf_ || b.inf_) {
      if (a.inf_ && b.inf_) return std::strong_ordering::equal;
      return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }

  // "inf" or the canonical "p/q" form.
  std::string str() const { return inf_ ? "inf" : value_.str(); }

 private:
  Rational value_;
  bool inf_ = false;
};

// best - achieved, where best >= achieved is guaranteed by the caller.
// -inf achieved (or an all -inf best) means no finite reward suffices.
inline Cost incentive_gap(const Payoff& best, const Payoff& achieved) {
  if (best.is_neg_inf() || achieved.is_neg_inf()) return Cost::inf();
  return Cost(best.value() - achieved.value());
}

}  // namespace eqt
