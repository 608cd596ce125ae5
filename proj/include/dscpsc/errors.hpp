#ifndef DSCPSC_ERRORS_HPP
#define DSCPSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dscpsc {

/* Base class for everything thrown by this library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Instance file could not be read or is not well-formed. */
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

/* Instance violates a structural invariant (totality, range, ownership...). */
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

/* A variable or constraint name was registered twice. */
class DuplicateName : public Error {
public:
    explicit DuplicateName(const std::string& name) : Error("duplicate name: " + name) {}
};

/* A solution lacks a value for a variable referenced by an expression. */
class MissingValue : public Error {
public:
    explicit MissingValue(const std::string& name) : Error("missing value for variable: " + name) {}
};

/* Model was mutated after freeze(). */
class FrozenModel : public Error {
public:
    explicit FrozenModel(const std::string& what_op)
        : Error("model is frozen; rejected operation: " + what_op) {}
};

/* MPS serialization failures. */
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("i/o error: " + msg) {}
};

class NameMangleCollision : public Error {
public:
    NameMangleCollision(const std::string& a, const std::string& b, const std::string& mangled)
        : Error("name mangling collision: '" + a + "' and '" + b + "' both map to '" + mangled + "'") {}
};

/* External solver subprocess failures. */
class SolverCrashed : public Error {
public:
    explicit SolverCrashed(const std::string& msg) : Error("external solver failed: " + msg) {}
};

class SolutionParseError : public Error {
public:
    explicit SolutionParseError(const std::string& msg) : Error("solution file parse error: " + msg) {}
};

class TimeLimit : public Error {
public:
    explicit TimeLimit(const std::string& msg) : Error("time limit exceeded: " + msg) {}
};

/* Embedded exact backend refusals. */
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& msg) : Error("enumeration budget exceeded: " + msg) {}
};

class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& msg) : Error("numerical failure: " + msg) {}
};

/* Fuzzy scalarization failures. */
class InfeasibleModel : public Error {
public:
    explicit InfeasibleModel(const std::string& msg) : Error("model infeasible: " + msg) {}
};

class UnboundedObjective : public Error {
public:
    explicit UnboundedObjective(const std::string& msg) : Error("objective unbounded: " + msg) {}
};

class DegenerateBounds : public Error {
public:
    explicit DegenerateBounds(const std::string& msg) : Error("degenerate objective bounds: " + msg) {}
};

} // namespace dscpsc

#endif
