#pragma once

#include <stdexcept>
#include <string>

namespace se2n {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class InvalidFrequency : public InputError {
public:
    using InputError::InputError;
};

class IncompleteField : public InputError {
public:
    using InputError::InputError;
};

class Unsupported : public InputError {
public:
    using InputError::InputError;
};

class DegenerateInput : public InputError {
public:
    using InputError::InputError;
};

class NotCenterable : public InputError {
public:
    using InputError::InputError;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

// Numerical breakdown. The CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IllPosed : public NumericalError {
public:
    IllPosed(int block, const std::string& what)
        : NumericalError(what), block_(block) {}
    int block() const { return block_; }

private:
    int block_;
};

class CapExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace se2n
