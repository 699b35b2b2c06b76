#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pdl {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Renders "a/b", or just "a" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Int& n);

// Accepts "a/b", a decimal such as "0.25", or a plain integer. Exact.
Rational parse_rational(const std::string& text);

// A rational constrained to [0, 1].
class Probability {
 public:
  Probability() : value_(0) {}
  explicit Probability(Rational value);
  static Probability parse(const std::string& text);

  const Rational& value() const { return value_; }
  Probability complement() const;

  bool operator==(const Probability& other) const { return value_ == other.value_; }

 private:
  Rational value_;
};

}  // namespace pdl
