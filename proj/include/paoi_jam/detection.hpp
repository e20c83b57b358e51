#pragma once

// Jammer-side signal detection: hypothesis decision probabilities from a ROC
// pair, plus the detector models that produce ROC pairs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "errors.hpp"

namespace paoi_jam {

/// Misdetection and false-alarm probabilities seen by the jammer.
/// `_t` refers to the T->J link, `_d` to the D->J link.
struct RocPair {
    double p_m_t = 0.0;
    double p_m_d = 0.0;
    double p_f_t = 0.0;
    double p_f_d = 0.0;

    /// Union of the two false-alarm events.
    double p_f() const { return p_f_t + p_f_d - p_f_t * p_f_d; }

    void validate() const {
        detail::require_probability(p_m_t, "p_m_t");
        detail::require_probability(p_m_d, "p_m_d");
        detail::require_probability(p_f_t, "p_f_t");
        detail::require_probability(p_f_d, "p_f_d");
    }
};

/// How the analytic model weights the idle hypothesis and the jam trigger.
///
/// `exclusive`: T and D never transmit together, so P[idle] = 1 - q_t - q_d, and a
/// real packet is jammed with probability 1 - p_m_t.
///
/// `paper_literal`: idle weight (1 - q_t)(1 - q_d) and a per-packet jam
/// probability of q_t (1 - p_m_t), exactly as the closed forms are usually printed.
enum class DecisionMode { exclusive, paper_literal };

namespace detail {

inline double idle_weight(double q_t, double q_d, DecisionMode mode) {
    require_probability(q_t, "q_t");
    require_probability(q_d, "q_d");
    if (mode == DecisionMode::exclusive) {
        if (q_t + q_d > 1.0 + 1e-12) {
            throw DomainError("q_t + q_d must be <= 1 for mutually exclusive activity, got " +
                              std::to_string(q_t + q_d));
        }
        return std::max(0.0, 1.0 - q_t - q_d);
    }
    return (1.0 - q_t) * (1.0 - q_d);
}

}  // namespace detail

/// P[jammer declares the channel busy] for one slot.
inline double prob_jammer_declares_busy(double q_t, double q_d, const RocPair& roc,
                                        DecisionMode mode = DecisionMode::exclusive) {
    roc.validate();
    const double idle = detail::idle_weight(q_t, q_d, mode);
    const double busy =
        q_t * (1.0 - roc.p_m_t) + q_d * (1.0 - roc.p_m_d) + idle * roc.p_f();
    // The literal weighting over-counts the idle hypothesis by q_t*q_d and can exceed 1.
    return std::clamp(busy, 0.0, 1.0);
}

/// Complement of prob_jammer_declares_busy in the same mode.
inline double prob_jammer_declares_idle(double q_t, double q_d, const RocPair& roc,
                                        DecisionMode mode = DecisionMode::exclusive) {
    return 1.0 - prob_jammer_declares_busy(q_t, q_d, roc, mode);
}

/// Per-slot joint probability that T sends a real packet and the jammer fires: q_t (1 - p_m_t).
inline double jam_trigger_probability_real(double q_t, const RocPair& roc) {
    detail::require_probability(q_t, "q_t");
    roc.validate();
    return q_t * (1.0 - roc.p_m_t);
}

/// Probability that a given real packet is jammed.
inline double jam_probability_given_real(const RocPair& roc) {
    roc.validate();
    return 1.0 - roc.p_m_t;
}

/// Jam probability per real packet, as used by the outage term in each mode.
inline double jam_probability_for_outage(double q_t, const RocPair& roc, DecisionMode mode) {
    return mode == DecisionMode::exclusive ? jam_probability_given_real(roc)
                                           : jam_trigger_probability_real(q_t, roc);
}

struct EnergyRoc {
    double p_false_alarm = 0.0;
    double p_detect = 0.0;
};

/// Energy detector over `n_samples` complex baseband samples with statistic sum |y_k|^2.
///
/// Under noise only the normalized statistic is Gamma(n, 1), so p_false_alarm is the
/// regularized upper incomplete gamma Q(n, threshold/noise). Under a signal with
/// instantaneous SNR g, 2 sum |y_k|^2 / noise is noncentral chi-square with 2n degrees
/// of freedom and noncentrality 2 n g. p_detect averages that tail over an exponential
/// (Rayleigh block-fading) SNR with mean avg_snr.
inline EnergyRoc energy_detector_roc(double threshold, int n_samples, double noise,
                                     double avg_snr) {
    if (n_samples < 1) {
        throw DomainError("n_samples must be >= 1");
    }
    detail::require_non_negative(threshold, "threshold");
    detail::require_positive(noise, "noise");
    detail::require_non_negative(avg_snr, "avg_snr");

    const double n = static_cast<double>(n_samples);
    const double x = threshold / noise;
    EnergyRoc roc;
    roc.p_false_alarm = x == 0.0 ? 1.0 : boost::math::gamma_q(n, x);
    if (x == 0.0) {
        roc.p_detect = 1.0;
        return roc;
    }
    if (avg_snr == 0.0) {
        roc.p_detect = roc.p_false_alarm;
        return roc;
    }

    // Conditional detection probability at instantaneous SNR avg_snr * u, u ~ Exp(1).
    const auto conditional = [&](double u) {
        const double g = avg_snr * u;
        if (g <= 0.0) {
            return boost::math::gamma_q(n, x);
        }
        const boost::math::non_central_chi_squared dist(2.0 * n, 2.0 * n * g);
        return boost::math::cdf(boost::math::complement(dist, 2.0 * x));
    };
    const auto integrand = [&](double u) { return std::exp(-u) * conditional(u); };

    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-10, &error);
    if (!std::isfinite(value) || error > 1e-6) {
        throw NumericError("energy detector fading average did not converge (error estimate " +
                           std::to_string(error) + ")");
    }
    roc.p_detect = std::clamp(value, 0.0, 1.0);
    return roc;
}

/// Anything that maps (average SNR, packet size) to detection and false-alarm rates.
class DetectorModel {
public:
    virtual ~DetectorModel() = default;

    /// `snr` is linear average SNR at the jammer.
    virtual double p_detect(double snr, int n_samples) const = 0;
    virtual double p_false_alarm(int n_samples) const = 0;
};

/// Constant-false-alarm-rate energy detector: the threshold is chosen per packet size
/// to hold p_false_alarm fixed, which makes p_detect non-decreasing in n_samples.
class EnergyDetector final : public DetectorModel {
public:
    EnergyDetector(double target_p_false_alarm, double noise = 1.0)
        : p_fa_(target_p_false_alarm), noise_(noise) {
        if (!(p_fa_ > 0.0 && p_fa_ < 1.0)) {
            throw DomainError("target false-alarm probability must lie in (0,1)");
        }
        detail::require_positive(noise_, "noise");
    }

    double threshold(int n_samples) const {
        if (n_samples < 1) {
            throw DomainError("n_samples must be >= 1");
        }
        return noise_ * boost::math::gamma_q_inv(static_cast<double>(n_samples), p_fa_);
    }

    double p_detect(double snr, int n_samples) const override {
        return energy_detector_roc(threshold(n_samples), n_samples, noise_, snr).p_detect;
    }

    double p_false_alarm(int n_samples) const override {
        return energy_detector_roc(threshold(n_samples), n_samples, noise_, 0.0).p_false_alarm;
    }

private:
    double p_fa_;
    double noise_;
};

/// ROC pair from a detector model at the jammer's average SNR on the T and D links.
/// A single classifier sees one received signal, so its false-alarm rate is charged to
/// the T side and p_f_d is zero; the union p_f() then equals that rate.
inline RocPair derive_roc(const DetectorModel& model, double snr_t, double snr_d,
                          int n_samples) {
    RocPair roc;
    roc.p_m_t = 1.0 - model.p_detect(snr_t, n_samples);
    roc.p_m_d = 1.0 - model.p_detect(snr_d, n_samples);
    roc.p_f_t = model.p_false_alarm(n_samples);
    roc.p_f_d = 0.0;
    roc.validate();
    return roc;
}

}  // namespace paoi_jam
