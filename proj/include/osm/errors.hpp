#pragma once

#include <stdexcept>
#include <string>

namespace osm {

/// Bad parameter values (out-of-range exponents, malformed specs, ...).
/// CLI maps this to exit code 2.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad input data (non-finite samples, malformed CSV, uncovered domains, ...).
/// CLI maps this to exit code 3.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace osm
