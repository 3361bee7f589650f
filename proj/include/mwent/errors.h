#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwent {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A dense computation would exceed the configured dimension guard.
class CapacityError : public std::length_error {
   public:
    CapacityError(const std::string &what, std::size_t dimension, std::size_t limit)
        : std::length_error(what), dimension_(dimension), limit_(limit) {}

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t limit() const noexcept { return limit_; }

   private:
    std::size_t dimension_;
    std::size_t limit_;
};

/// No truncation level up to the cap satisfies the requested error budget.
class BudgetInfeasible : public std::runtime_error {
   public:
    BudgetInfeasible(const std::string &what, double r) : std::runtime_error(what), r_(r) {}

    double r() const noexcept { return r_; }

   private:
    double r_;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Line numbers are 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &what, std::size_t line) : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

}  // namespace mwent
