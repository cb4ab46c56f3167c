#pragma once

#include <stdexcept>
#include <string>

namespace scmag {

// Each kind maps to a distinct process exit code (see README).
enum class ErrorKind {
    InvalidArgument = 4,
    InvalidGeometry = 4,
    Numerical = 5,
    NoTrap = 6,
    UnknownEntry = 7,
    Config = 2,
    Unit = 3,
    Io = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& w) : Error(ErrorKind::InvalidArgument, w) {}
};

struct InvalidGeometry : Error {
    explicit InvalidGeometry(const std::string& w) : Error(ErrorKind::InvalidGeometry, w) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

struct NoTrapError : Error {
    explicit NoTrapError(const std::string& w) : Error(ErrorKind::NoTrap, w) {}
};

struct UnknownEntry : Error {
    explicit UnknownEntry(const std::string& w) : Error(ErrorKind::UnknownEntry, w) {}
};

struct ConfigError : Error {
    ConfigError(int line, const std::string& w)
        : Error(ErrorKind::Config, line > 0 ? "line " + std::to_string(line) + ": " + w : w), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct UnitError : Error {
    UnitError(int line, const std::string& w)
        : Error(ErrorKind::Unit, line > 0 ? "line " + std::to_string(line) + ": " + w : w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

}  // namespace scmag
