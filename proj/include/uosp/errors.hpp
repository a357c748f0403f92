#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uosp {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke an API precondition (duplicate element, dead handle, bad params).
class UsageError : public Error {
public:
    using Error::Error;
};

// pop/peek on a heap without elements.
class EmptyHeapError : public Error {
public:
    EmptyHeapError() : Error("heap is empty") {}
};

// decrease_key called with a larger key.
class ContractError : public Error {
public:
    using Error::Error;
};

// Malformed DIMACS input. line() is 1-based; 0 means end of input.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed input that violates a semantic assumption (e.g. unreachable vertex).
class InputError : public Error {
public:
    static constexpr std::uint32_t kNoVertex = UINT32_MAX;

    explicit InputError(const std::string& what, std::uint32_t vertex = kNoVertex)
        : Error(what), vertex_(vertex) {}

    std::uint32_t vertex() const noexcept { return vertex_; }

private:
    std::uint32_t vertex_;
};

// Distance or weight arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Exact computation requested beyond its supported size.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A structural invariant does not hold. clause() names the violated rule.
class InvariantError : public Error {
public:
    InvariantError(std::string clause, const std::string& detail)
        : Error(clause + ": " + detail), clause_(std::move(clause)) {}

    const std::string& clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

}  // namespace uosp
