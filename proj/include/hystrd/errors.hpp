#pragma once

#include <stdexcept>
#include <string>

namespace hystrd {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class InvalidBounds : public Error {
public:
    using Error::Error;
};

// A-priori stock bound requested while its hypotheses are violated.
class AssumptionError : public Error {
public:
    using Error::Error;
};

// N <= 0 reached while stepping a population model.
class DegeneratePopulation : public Error {
public:
    using Error::Error;
};

// Non-finite value produced by a time stepper.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& field, double t)
        : Error("non-finite value in '" + field + "' at t=" + std::to_string(t)),
          field_(field), time_(t) {}

    const std::string& field() const noexcept { return field_; }
    double time() const noexcept { return time_; }

private:
    std::string field_;
    double time_;
};

// Configuration failure; `path` names the offending key ("dt", "consume.c_min", ...).
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace hystrd
