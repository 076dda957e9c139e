#pragma once

#include <stdexcept>
#include <string>

namespace copulas {

//! thrown when an operation is mathematically undefined for the object
//! (e.g. the density of a singular copula)
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! thrown when a parameter estimate does not exist or leaves the family
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! thrown when a numerical routine fails to reach its tolerance;
//! the message reports the tolerance actually achieved
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}
