#include "rational.hpp"

#include <stdexcept>

namespace lasso {

Rational rational_from_string(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  Rational value;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad decimal literal: " + text);
    mpz_class num(digits.empty() ? "0" : digits);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    value = Rational(num, den);
  } else {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::string num = s.substr(0, slash);
      std::string den = s.substr(slash + 1);
      if (num.empty() || den.empty() ||
          num.find_first_not_of("0123456789") != std::string::npos ||
          den.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad rational literal: " + text);
      value = Rational(mpz_class(num), mpz_class(den));
      if (value.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    } else {
      if (s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad integer literal: " + text);
      value = Rational(mpz_class(s));
    }
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

}  // namespace lasso
