#pragma once

#include <stdexcept>
#include <string>

namespace nlpm {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class DimMismatch : public Error {
public:
    using Error::Error;
};

class NotPsd : public Error {
public:
    using Error::Error;
};

class Singular : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class DomainViolation : public Error {
public:
    using Error::Error;
};

class NegativeJump : public Error {
public:
    using Error::Error;
};

class NoLimit : public Error {
public:
    using Error::Error;
};

class DegeneratePoints : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class NegativeInput : public Error {
public:
    using Error::Error;
};

class SpectrumOutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidCapacity : public Error {
public:
    using Error::Error;
};

// Raised when a user-supplied map evaluator throws; carries the offending
// input serialized as JSON text so the failure can be replayed.
class EvaluatorError : public Error {
public:
    EvaluatorError(const std::string& msg, std::string input_json)
        : Error(msg), input_json_(std::move(input_json)) {}
    const std::string& input_json() const { return input_json_; }

private:
    std::string input_json_;
};

}  // namespace nlpm
