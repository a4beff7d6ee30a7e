#pragma once

#include <stdexcept>
#include <string>

namespace nnspectra {

// Malformed input text (bad grammar, ragged rows, unparsable cells).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a domain precondition
// (negative entry, zero denominator, index out of range, bad shape).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap was exceeded (cell counts, enumeration
// caps, search-node budgets where exactness is mandatory).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nnspectra
