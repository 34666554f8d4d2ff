#pragma once

#include <stdexcept>
#include <string>

namespace conekit {

// Syntax error in the polynomial grammar; keeps the offset into the input.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised when an operation requires an Archimedean module and no witness
// was found within the search budget.
class non_archimedean_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a closure query is posed over an (apparently) empty feasible set.
class empty_set_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conekit
