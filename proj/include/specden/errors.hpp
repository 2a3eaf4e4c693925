#pragma once

#include <stdexcept>
#include <string>

namespace specden {

// Walk/sample budget guard tripped; CLI maps this to exit code 3.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (LP stall, probe ambiguity after retries, ...); exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or missing input files; exit code 2.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specden
