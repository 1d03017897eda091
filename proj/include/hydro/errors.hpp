#pragma once

#include <stdexcept>
#include <string>

namespace hydro {

// Malformed graph or walk text. The message names the offending line.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The safety question is not defined for this input (cycle graphs,
// walks that are not walks, invisible endpoints, ...).
class ModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The graph admits no solution for the requested model.
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hydro
