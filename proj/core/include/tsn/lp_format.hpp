#ifndef TSN_LP_FORMAT_HPP_
#define TSN_LP_FORMAT_HPP_

#include <string>
#include <string_view>

#include "tsn/ilp.hpp"

namespace tsn {

// CPLEX-style LP text. The objective lists every variable in index order so
// that parsing restores the variable order. Weights are written as decimals
// when all are finite decimals; otherwise they are multiplied by the least
// common denominator, announced in a "\ objective scale N" comment.
std::string emit_lp(const LinearProgram& program);
std::string emit_lp(const IlpModel& model);

// Reads text produced by emit_lp. Throws InputError on malformed input.
LinearProgram parse_lp(std::string_view text);

}  // namespace tsn

#endif  // TSN_LP_FORMAT_HPP_
