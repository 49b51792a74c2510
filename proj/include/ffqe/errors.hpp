#ifndef FFQE_ERRORS_HPP
#define FFQE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffqe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid field parameters or arithmetic across distinct fields.
struct FieldError : Error {
    using Error::Error;
};

// Arithmetic across distinct rings (field, variable table or order differ).
struct RingMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg), line(line_), column(col_) {}
};

// Well-formed input that violates a semantic requirement (shadowed variable,
// reserved identifier, formula not closed, wrong shape, ...).
struct SemanticError : Error {
    using Error::Error;
};

// Enumeration space of the oracle or witness search exceeds the configured cap.
struct BoundExceeded : Error {
    using Error::Error;
};

// Engine resource budget (wall clock, basis size, expansion size) ran out.
// Never produced as an "answer"; callers see it as a distinguished failure.
struct BudgetExhausted : Error {
    using Error::Error;
};

} // namespace ffqe

#endif
