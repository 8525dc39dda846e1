#pragma once

#include <stdexcept>
#include <string>

namespace hyperstab {

// Base class for all numerical failures raised by this library. The CLI maps
// these to exit code 3; invalid user input maps to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

} // namespace hyperstab
