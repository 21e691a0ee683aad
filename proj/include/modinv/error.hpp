#pragma once

#include <stdexcept>
#include <string>

namespace modinv {

/// Base of all library errors. `kind()` drives the CLI exit code.
class Error : public std::runtime_error {
public:
    enum class Kind { structural, capacity, precondition, unsupported, input, inconsistency };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Mismatched variable counts, characteristics or matrix shapes; singular generators.
struct StructuralError : Error {
    explicit StructuralError(const std::string& w) : Error(Kind::structural, w) {}
};

/// A configured size cap (group order, linear-algebra dimension, pair queue, computed depth) was hit.
struct CapacityError : Error {
    explicit CapacityError(const std::string& w) : Error(Kind::capacity, w) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error(Kind::precondition, w) {}
};

struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& w) : Error(Kind::unsupported, w) {}
};

/// Parse or validation failure of user input.
struct InputError : Error {
    explicit InputError(const std::string& w) : Error(Kind::input, w) {}
};

/// Two independent computations that must agree did not.
struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& w) : Error(Kind::inconsistency, w) {}
};

}  // namespace modinv
