#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace pdl {

std::string to_string(const Int& n) { return n.str(); }

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Int parse_int(const std::string& s) {
  if (!is_integer_text(s)) {
    throw Error(ErrorKind::Syntax, "not an integer literal: '" + s + "'");
  }
  return Int(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::Syntax, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() || !is_integer_text(frac) || frac[0] == '-' || frac[0] == '+') {
      throw Error(ErrorKind::Syntax, "malformed decimal literal '" + text + "'");
    }
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int whole_part = parse_int(whole);
    Int frac_part = parse_int(frac);
    Int num = whole_part * scale + (negative ? -frac_part : frac_part);
    return Rational(num, scale);
  }
  return Rational(parse_int(text));
}

Probability::Probability(Rational value) : value_(std::move(value)) {
  if (value_ < 0 || value_ > 1) {
    throw Error(ErrorKind::ProbOutOfRange,
                "probability " + to_string(value_) + " is outside [0, 1]");
  }
}

Probability Probability::parse(const std::string& text) {
  return Probability(parse_rational(text));
}

Probability Probability::complement() const {
  return Probability(Rational(1) - value_);
}

}  // namespace pdl
