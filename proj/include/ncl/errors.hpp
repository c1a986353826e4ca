#pragma once

#include <stdexcept>
#include <string>

namespace ncl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad field configuration or operands drawn from different fields.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument does not hold (out-of-range interval,
/// inhomogeneous input where homogeneity is required, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// An expansion would exceed the configured term budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace ncl
