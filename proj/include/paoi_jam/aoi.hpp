#pragma once

// Closed-form peak age for queued (M/D/1) and just-in-time updating with
// i.i.d. packet loss, and the PAoI-minimizing arrival rate.

#include <cmath>
#include <string>

#include "errors.hpp"

namespace paoi_jam {

enum class UpdateModel {
    /// Poisson arrivals, FIFO buffer, deterministic service.
    queued,
    /// Bufferless: an update is generated in the slot it is sent.
    jit,
};

inline const char* to_string(UpdateModel m) { return m == UpdateModel::queued ? "M1" : "M2"; }

/// Utilization at or above this is rejected as unstable.
inline constexpr double kStabilityMargin = 1e-9;

/// Mean sojourn time of an M/G/1 queue: E[S] + lambda E[S^2] / (2 (1 - rho)).
inline double mg1_sojourn(double lambda, double es, double es2) {
    detail::require_non_negative(lambda, "lambda");
    detail::require_positive(es, "es");
    detail::require_non_negative(es2, "es2");
    const double rho = lambda * es;
    if (rho >= 1.0 - kStabilityMargin) {
        throw InstabilityError("M/G/1 queue is unstable", rho);
    }
    return es + lambda * es2 / (2.0 * (1.0 - rho));
}

namespace detail {

inline void check_loss(double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw DomainError("loss probability must lie in [0,1), got " + std::to_string(p));
    }
}

}  // namespace detail

/// Average PAoI of an M/D/1 queue with i.i.d. loss p:
///   1/(lambda (1-p)) + d + d rho / (2 (1 - rho)),  rho = lambda d.
inline double paoi_md1(double lambda, double d, double p) {
    detail::require_positive(lambda, "lambda");
    detail::require_positive(d, "d");
    detail::check_loss(p);
    const double rho = lambda * d;
    if (rho >= 1.0 - kStabilityMargin) {
        throw InstabilityError("M/D/1 queue is unstable", rho);
    }
    return 1.0 / (lambda * (1.0 - p)) + d + d * rho / (2.0 * (1.0 - rho));
}

/// Average PAoI under just-in-time updating: 1/(lambda (1-p)) + d. Requires lambda <= 1/d.
inline double paoi_jit(double lambda, double d, double p) {
    detail::require_positive(lambda, "lambda");
    detail::require_positive(d, "d");
    detail::check_loss(p);
    if (lambda * d > 1.0 + 1e-12) {
        throw InstabilityError("JIT updating needs at most one update per slot", lambda * d);
    }
    return 1.0 / (lambda * (1.0 - p)) + d;
}

inline double paoi(UpdateModel model, double lambda, double d, double p) {
    return model == UpdateModel::queued ? paoi_md1(lambda, d, p) : paoi_jit(lambda, d, p);
}

/// d/dlambda of paoi_md1:
///   (2 - 4 d lambda + lambda^2 d^2 (p + 1)) / (2 (p - 1) lambda^2 (1 - lambda d)^2).
inline double paoi_md1_derivative(double lambda, double d, double p) {
    detail::require_positive(lambda, "lambda");
    detail::require_positive(d, "d");
    detail::check_loss(p);
    const double one_minus_rho = 1.0 - lambda * d;
    const double num = 2.0 - 4.0 * d * lambda + lambda * lambda * d * d * (p + 1.0);
    const double den = 2.0 * (p - 1.0) * lambda * lambda * one_minus_rho * one_minus_rho;
    return num / den;
}

/// Stable root of the derivative: (2 - sqrt(2 (1 - p))) / (d (1 + p)).
inline double optimal_lambda_md1(double d, double p) {
    detail::require_positive(d, "d");
    detail::check_loss(p);
    return (2.0 - std::sqrt(2.0 * (1.0 - p))) / (d * (1.0 + p));
}

}  // namespace paoi_jam
