#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace seqcontract {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

// Accepts "num/den" or "num" with an optional leading '-'. Throws
// ValidationError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "num" for integers, "num/den" otherwise.
std::string format_rational(const Rational& value);

// num/den in canonical form. Precondition: den != 0.
Rational ratio(long num, long den);

double to_double(const Rational& value);

Rational abs(const Rational& value);

// A rational or +infinity. Reservation values of free actions are infinite.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT

  static ExtendedRational infinity() {
    ExtendedRational out;
    out.infinite_ = true;
    return out;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  // Precondition: is_finite().
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a,
                                          const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::string to_string() const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace seqcontract
