#pragma once

#include <stdexcept>
#include <string>

namespace blindspot {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReplayFormatError : ParseError {
    using ParseError::ParseError;
};

struct BackendUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeasurementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClockError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace blindspot
