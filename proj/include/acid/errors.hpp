#pragma once

#include <stdexcept>
#include <string>

namespace acid {

//! Configuration problems (bad keys, malformed values). CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

//! Input-data problems (missing files, malformed CSV, degenerate samples).
//! CLI exit code 3.
struct data_error : std::runtime_error {
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

//! Numeric failures (non-convergent quadrature, non-finite updates,
//! factorization failure). CLI exit code 4.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

//! Query falls outside the support of every kernel atom.
struct no_support_error : numeric_error {
  explicit no_support_error(const std::string& what) : numeric_error(what) {}
};

//! Operation not defined for the given configuration (e.g. density of a
//! point mass).
struct unsupported_operation : std::logic_error {
  explicit unsupported_operation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace acid
