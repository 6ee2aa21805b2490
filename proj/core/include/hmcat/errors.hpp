#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmcat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

struct BaseMismatch : Error {
    using Error::Error;
};

struct CategoryMismatch : Error {
    using Error::Error;
};

struct CompositionNotZero : Error {
    using Error::Error;
};

struct IllFormedSES : Error {
    using Error::Error;
};

struct InvalidPartition : Error {
    using Error::Error;
};

struct UnknownObject : Error {
    using Error::Error;
};

struct NotConvex : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    BudgetExceeded(std::size_t projected, std::size_t budget, std::string what)
        : Error(std::move(what)), projected(projected), budget(budget) {}
    std::size_t projected;
    std::size_t budget;
};

struct ParseError : Error {
    ParseError(std::string msg, std::size_t line) : Error(std::move(msg)), line(line) {}
    std::size_t line;
};

/* Collected axiom violations; empty means valid. */
struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    void add(std::string p) { problems.push_back(std::move(p)); }
};

struct ValidationError : Error {
    ValidationError(std::string msg, ValidationReport rep)
        : Error(std::move(msg)), report(std::move(rep)) {}
    ValidationReport report;
};

}  // namespace hmcat
