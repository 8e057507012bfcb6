#ifndef TSN_RATIONAL_HPP_
#define TSN_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tsn {

// Exact edge weights. Reductions halve weights and optima are compared with
// equality, so floating point is never used for costs.
using Rational = boost::rational<std::int64_t>;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

// Accepts "p", "p/q", and finite decimals such as "-1.25" or "2e-3".
// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

// Decimal rendering when the denominator is of the form 2^a 5^b.
bool has_exact_decimal(const Rational& value);
std::string to_decimal_string(const Rational& value);

}  // namespace tsn

#endif  // TSN_RATIONAL_HPP_
