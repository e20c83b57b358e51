#pragma once

#include <stdexcept>
#include <string>

namespace paoi_jam {

/// Argument outside the domain of a closed-form expression.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Queue utilization at or beyond the stability boundary.
class InstabilityError : public std::domain_error {
public:
    InstabilityError(const std::string& what, double rho)
        : std::domain_error(what + " (rho=" + std::to_string(rho) + ")"), rho_(rho) {}

    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// A configuration document failed to parse. Carries the 1-based line when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A parsed configuration violates an invariant. `field()` names the offending path.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Numerical routine failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw DomainError(std::string(name) + " must be > 0, got " + std::to_string(v));
    }
}

inline void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0)) {
        throw DomainError(std::string(name) + " must be >= 0, got " + std::to_string(v));
    }
}

inline void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
    }
}

}  // namespace detail
}  // namespace paoi_jam
