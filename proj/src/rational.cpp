#include "rse/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rse {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) ||
      (slash != std::string_view::npos && !is_integer_literal(den, false))) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  Rational value;
  value.get_num() = mpz_class(std::string(num));
  value.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den));
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

}  // namespace rse
