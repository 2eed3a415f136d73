#pragma once

#include <stdexcept>
#include <string>

namespace nnc {

// Error hierarchy. exit_code() matches the CLI contract:
// 1 usage, 2 data/format/IO, 3 numerical failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 2; }
};

class UsageError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 1; }
};

class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

}  // namespace nnc
