#pragma once

#include <stdexcept>
#include <string>

namespace heavenly {

// Base class for every structured error thrown by this library.  Callers that
// want a single catch site can catch heavenly::Error; the derived types exist
// so tests and the CLI can distinguish failure modes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A polynomial operation would exceed the configured total-degree cap.
struct DegreeCapError : Error {
    explicit DegreeCapError(const std::string& msg) : Error(msg) {}
};

// Malformed text input (rational, polynomial, or series grammar).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A solve step requires dividing by a quantity that is zero for the given
// parameter draw.
struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& msg) : Error(msg) {}
};

// The two independent determinations of the proportionality constant in the
// second frame ansatz disagree for the supplied families.
struct InconsistentC : Error {
    explicit InconsistentC(const std::string& msg) : Error(msg) {}
};

// A frame-correction matrix fed to a reconstruction routine has entries that
// are not constants.
struct NonConstantEntries : Error {
    explicit NonConstantEntries(const std::string& msg) : Error(msg) {}
};

// Numeric input outside the mathematical domain of a routine.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A quantity that must be positive to take a square root came out
// non-positive.
struct SignError : Error {
    explicit SignError(const std::string& msg) : Error(msg) {}
};

// A finite-difference step was requested with a non-positive step size.
struct StepError : Error {
    explicit StepError(const std::string& msg) : Error(msg) {}
};

// A list argument is shorter than the order of the computation requires.
struct LengthError : Error {
    explicit LengthError(const std::string& msg) : Error(msg) {}
};

// Bad CLI or JSON configuration (unknown command, missing file, bad key).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace heavenly
