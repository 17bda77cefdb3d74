#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

enum class ErrorCode {
    InvalidArgument = 1,
    Domain = 2,
    Singular = 3,
    Accuracy = 4,
    Io = 5,
};

/// Base exception for the library. The code is what the C API reports.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what)
        : Error(ErrorCode::InvalidArgument, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& what) : Error(ErrorCode::Singular, what) {}
};

class AccuracyError : public Error {
public:
    explicit AccuracyError(const std::string& what) : Error(ErrorCode::Accuracy, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace fracdiff
