#include "tsn/rational.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "tsn/errors.hpp"

namespace tsn {
namespace {

std::int64_t checked_mul10(std::int64_t value, std::string_view text) {
  if (value > std::numeric_limits<std::int64_t>::max() / 10) {
    throw InputError("rational out of range: " + std::string(text));
  }
  return value * 10;
}

std::int64_t pow10(int exponent, std::string_view text) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) result = checked_mul10(result, text);
  return result;
}

}  // namespace

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

Rational parse_rational(std::string_view text) {
  const auto fail = [&]() -> Rational {
    throw InputError("not a rational number: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::size_t digits = 0;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos, ++digits) {
    numerator = checked_mul10(numerator, text) + (text[pos] - '0');
  }
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::int64_t den = 0;
    std::size_t den_digits = 0;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos, ++den_digits) {
      den = checked_mul10(den, text) + (text[pos] - '0');
    }
    if (digits == 0 || den_digits == 0 || pos != text.size() || den == 0) return fail();
    return Rational(negative ? -numerator : numerator, den);
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos, ++digits) {
      numerator = checked_mul10(numerator, text) + (text[pos] - '0');
      denominator = checked_mul10(denominator, text);
    }
  }
  if (digits == 0) return fail();
  Rational value(numerator, denominator);
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative_exponent = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative_exponent = text[pos] == '-';
      ++pos;
    }
    int exponent = 0;
    std::size_t exp_digits = 0;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos, ++exp_digits) {
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 18) return fail();
    }
    if (exp_digits == 0) return fail();
    const std::int64_t scale = pow10(exponent, text);
    value = negative_exponent ? value / scale : value * scale;
  }
  if (pos != text.size()) return fail();
  return negative ? -value : value;
}

bool has_exact_decimal(const Rational& value) {
  std::int64_t den = value.denominator();
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  return den == 1;
}

std::string to_decimal_string(const Rational& value) {
  if (!has_exact_decimal(value)) {
    throw InputError("no exact decimal form for " + to_string(value));
  }
  if (value.denominator() == 1) return std::to_string(value.numerator());
  int places = 0;
  std::int64_t scale = 1;
  while (scale % value.denominator() != 0) {
    scale *= 10;
    ++places;
  }
  const std::int64_t scaled = value.numerator() * (scale / value.denominator());
  const bool negative = scaled < 0;
  std::string digits = std::to_string(negative ? -scaled : scaled);
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
  }
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

}  // namespace tsn
