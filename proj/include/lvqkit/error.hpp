#pragma once

#include <stdexcept>
#include <string>

namespace lvqkit {

// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed (CSV cells, JSON documents, ...).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition: bad dimensions, missing
// class coverage, wrong data representation for a variant, ...
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Internal state no longer satisfies its invariants (non-finite
// prototypes, broken normalization).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace lvqkit
