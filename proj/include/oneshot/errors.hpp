#pragma once

#include <stdexcept>
#include <string>

namespace oneshot {

/// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
    Parameter,
    Domain,
    NoContraction,
    State,
    Ingestion,
    Precision,
    Unsupported,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// The contraction rate of a family is not below one.
class NoContractionError : public Error {
public:
    explicit NoContractionError(const std::string& what) : Error(ErrorKind::NoContraction, what) {}
};

class StateError : public Error {
public:
    explicit StateError(const std::string& what) : Error(ErrorKind::State, what) {}
};

class IngestionError : public Error {
public:
    explicit IngestionError(const std::string& what) : Error(ErrorKind::Ingestion, what) {}
};

class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& what) : Error(ErrorKind::Precision, what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

}  // namespace oneshot
