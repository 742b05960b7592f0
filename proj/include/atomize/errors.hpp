#pragma once

#include <stdexcept>
#include <string>

namespace atomize {

/// Malformed DIMACS input (bad problem line, out-of-range literal, ...).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An explicit empty clause in the input. Kept separate from ParseError so
/// callers can report "trivially unsatisfiable input" instead of "syntax".
class EmptyClauseError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Analysis requested on an unsatisfiable formula.
class UnsatisfiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The configured wall-clock budget ran out; no partial result is produced.
class TimeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumeration requested beyond the brute-force variable limit.
class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unit propagation during elimination derived the empty clause, which means
/// the atomic-set report and the formula disagree.
class ConflictError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace atomize
