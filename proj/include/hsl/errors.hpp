#pragma once

#include <stdexcept>
#include <string>

namespace hsl {

struct EmptyInputError : std::invalid_argument {
  EmptyInputError() : std::invalid_argument("no nonzero generators") {}
};

struct NotPointedError : std::runtime_error {
  NotPointedError() : std::runtime_error("the cone of the semigroup contains a line") {}
};

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// No valid conductor translate was found within the candidate budget.
struct BudgetExhaustedError : std::runtime_error {
  BudgetExhaustedError(std::size_t candidates, std::string level)
      : std::runtime_error("gamma search exhausted " + std::to_string(candidates) +
                           " candidates (grading level reached " + level + ")"),
        candidates_examined(candidates),
        level_reached(std::move(level)) {}
  std::size_t candidates_examined;
  std::string level_reached;
};

}  // namespace hsl
