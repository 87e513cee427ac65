#pragma once

#include <stdexcept>
#include <string>

namespace confit {

// Base class for everything thrown by this library. The three mid-level
// categories map onto the CLI exit codes: InputError -> 2, ModelError -> 3,
// UsageError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

// -- input family ------------------------------------------------------

class MissingColumn : public InputError {
public:
    explicit MissingColumn(const std::string& column)
        : InputError("missing column: " + column), column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

class BadValue : public InputError {
public:
    BadValue(std::size_t row, const std::string& column, const std::string& what)
        : InputError("bad value at row " + std::to_string(row) + ", column " +
                     column + ": " + what),
          row_(row), column_(column) {}
    std::size_t row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

class EmptyData : public InputError {
public:
    EmptyData() : InputError("no data rows") {}
};

class MissingCovariate : public InputError {
public:
    explicit MissingCovariate(const std::string& name)
        : InputError("missing covariate: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class TooLarge : public InputError {
public:
    using InputError::InputError;
};

// -- model / numerical family ------------------------------------------

class SingularDesign : public ModelError {
public:
    explicit SingularDesign(const std::string& column)
        : ModelError("singular design: column '" + column +
                     "' is collinear with the preceding columns"),
          column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

class Underdetermined : public ModelError {
public:
    Underdetermined(std::size_t n, std::size_t params)
        : ModelError("underdetermined fit: " + std::to_string(n) +
                     " rows for " + std::to_string(params) + " parameters") {}
};

class ZeroVariance : public ModelError {
public:
    explicit ZeroVariance(const std::string& column)
        : ModelError("zero variance in column: " + column), column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

class NoTurningPoint : public ModelError {
public:
    NoTurningPoint() : ModelError("no turning point: quadratic coefficient is zero") {}
};

class NotQuadratic : public ModelError {
public:
    NotQuadratic() : ModelError("operation requires a quadratic model") {}
};

class TooManySingular : public ModelError {
public:
    TooManySingular(std::size_t skipped, std::size_t budget)
        : ModelError("too many singular resamples: " + std::to_string(skipped) +
                     " redraws exceed budget " + std::to_string(budget)) {}
};

}  // namespace confit
