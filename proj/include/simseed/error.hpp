#pragma once

#include <stdexcept>
#include <string>

namespace simseed {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (grids, CSV, config files). Carries a 1-based line
// number when the failure can be pinned to one.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Arguments or data that violate a documented contract.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Filesystem trouble: missing paths, unwritable outputs.
class IoError : public Error {
public:
    using Error::Error;
};

// HTTP transfer failures, including checksum mismatches after download.
class NetworkError : public Error {
public:
    using Error::Error;
};

// A broken internal invariant. Reaching this is a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace simseed
