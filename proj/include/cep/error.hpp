// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cep {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

// Raised while ingesting a stream; `record` is the zero-based record index.
class StreamError : public Error {
public:
    StreamError(std::size_t record, const std::string& what)
        : Error("record " + std::to_string(record) + ": " + what), record_(record) {}
    std::size_t record() const noexcept { return record_; }

private:
    std::size_t record_;
};

// Syntax or name-resolution error in a query or predicate; `offset` is a byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class NotWellFormedError : public Error {
public:
    using Error::Error;
};

class NotUnaryError : public Error {
public:
    using Error::Error;
};

// A compilation precondition (safety, LP-normal form, nesting) did not hold.
class CompileError : public Error {
public:
    using Error::Error;
};

} // namespace cep
