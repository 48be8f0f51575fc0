#pragma once

#include <stdexcept>
#include <string>

namespace thincc {

/// Bad arguments or unsupported requests (maps to CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the offending line when known (exit code 2).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(file), line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    std::string file_;
    long line_;
};

/// Table file failed validation; names the header field that failed (exit code 2).
class CorruptTableError : public std::runtime_error {
public:
    CorruptTableError(const std::string& field, const std::string& what)
        : std::runtime_error("corrupt table (" + field + "): " + what), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// A table or oracle was used with a complex of a different cell kind.
class KindMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency failure; aborts the operation (exit code 4).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace thincc
