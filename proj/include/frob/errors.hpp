#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frob {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Position is 1-based; column 0 means "whole line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(format(line, column, what)), line_(line), column_(column), bare_(what) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return bare_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }
    std::size_t line_;
    std::size_t column_;
    std::string bare_;
};

class ScopeError : public Error { public: using Error::Error; };
class NestedExpError : public Error { public: using Error::Error; };
class DivisionByZero : public Error { public: using Error::Error; };
class EvaluationError : public Error { public: using Error::Error; };
class SingularError : public Error { public: using Error::Error; };
class InconsistentError : public Error { public: using Error::Error; };
class UnderdeterminedError : public Error { public: using Error::Error; };
class SamplingExhausted : public Error { public: using Error::Error; };
class RankDeficientError : public Error { public: using Error::Error; };
class ConversionError : public Error { public: using Error::Error; };
class MethodDisagreement : public Error { public: using Error::Error; };

}  // namespace frob
