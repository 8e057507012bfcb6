#ifndef TSN_ERRORS_HPP_
#define TSN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tsn {

// Malformed input or violated operation precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some demand cannot be met even when every edge is kept.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, int demand = -1)
      : std::runtime_error(what), demand_(demand) {}

  // Index of the first offending demand, -1 when not attributable.
  int demand() const { return demand_; }

 private:
  int demand_;
};

// An internal consistency check failed. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tsn

#endif  // TSN_ERRORS_HPP_
