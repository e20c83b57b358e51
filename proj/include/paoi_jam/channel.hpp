#pragma once

// Rayleigh block-fading link model: SNR and SINR distributions, outage
// probability conditioned on jammer activity, and per-packet gain draws.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace paoi_jam {

/// Link indices: 1 = T->R, 2 = T->J, 3 = J->R, 4 = D->J.
struct ChannelConfig {
    double h1 = 1.0;
    double h2 = 1.0;
    double h3 = 1.0;
    double h4 = 1.0;
    std::array<double, 4> sigma2{1.0, 1.0, 1.0, 1.0};
    double alpha = 1.0;
    double gamma_min = 1.0;

    /// Builds a config with h1 = h2 / alpha, so the legitimate link is never weaker than T->J.
    static ChannelConfig from_gain_ratio(double h2, double alpha, double h3, double h4,
                                         std::array<double, 4> sigma2, double gamma_min) {
        ChannelConfig c;
        c.h2 = h2;
        c.alpha = alpha;
        c.h1 = h2 / alpha;
        c.h3 = h3;
        c.h4 = h4;
        c.sigma2 = sigma2;
        c.gamma_min = gamma_min;
        c.validate();
        return c;
    }

    /// Noise power of link i in {1..4}.
    double noise(int link) const { return sigma2.at(static_cast<std::size_t>(link - 1)); }

    void validate() const {
        const std::array<double, 4> gains{h1, h2, h3, h4};
        for (std::size_t i = 0; i < gains.size(); ++i) {
            if (!(gains[i] > 0.0)) {
                throw ValidationError("channel.h" + std::to_string(i + 1), "gain must be > 0");
            }
            if (!(sigma2[i] > 0.0)) {
                throw ValidationError("channel.sigma2", "noise power must be > 0");
            }
        }
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw ValidationError("channel.alpha", "must lie in (0,1]");
        }
        if (!(gamma_min > 0.0)) {
            throw ValidationError("channel.gamma_min", "must be > 0");
        }
    }
};

struct PowerConfig {
    double p_t = 10.0;
    double p_d = 10.0;
    /// Shared average budget for T and D; unconstrained when absent.
    std::optional<double> p_t_max;
    double p_j_max = 1.0;

    /// `q_t`, `q_d` are the per-slot activity probabilities of T and D.
    void validate(double q_t, double q_d) const {
        if (!(p_t > 0.0)) {
            throw ValidationError("power.p_t", "transmit power must be > 0");
        }
        if (!(p_d >= 0.0)) {
            throw ValidationError("power.p_d", "decoy power must be >= 0");
        }
        if (!(p_j_max >= 0.0)) {
            throw ValidationError("power.p_j_max", "jamming budget must be >= 0");
        }
        if (p_t_max) {
            if (!(*p_t_max >= 0.0)) {
                throw ValidationError("power.p_t_max", "budget must be >= 0");
            }
            const double spent = q_t * p_t + q_d * p_d;
            if (spent > *p_t_max * (1.0 + 1e-12)) {
                throw ValidationError("power.p_t_max",
                                      "average T+D power " + std::to_string(spent) +
                                          " exceeds budget " + std::to_string(*p_t_max));
            }
        }
    }
};

/// P[SNR <= y] for an exponentially distributed SNR with mean avg_gain*power/noise.
inline double snr_cdf(double y, double avg_gain, double power, double noise) {
    detail::require_non_negative(y, "y");
    detail::require_positive(avg_gain, "avg_gain");
    detail::require_positive(power, "power");
    detail::require_positive(noise, "noise");
    return -std::expm1(-noise * y / (avg_gain * power));
}

/// P[SINR <= y] with the desired signal and the interferer both Rayleigh faded:
///   1 - h1 p_t / (h1 p_t + y h3 p_j) * exp(-noise y / (h1 p_t)).
/// With p_j = 0 this is snr_cdf(y; h1, p_t, noise).
inline double sinr_cdf(double y, double p_t, double p_j, double h1, double h3, double noise) {
    detail::require_non_negative(y, "y");
    detail::require_positive(p_t, "p_t");
    detail::require_non_negative(p_j, "p_j");
    detail::require_positive(h1, "h1");
    detail::require_positive(h3, "h3");
    detail::require_positive(noise, "noise");
    const double signal = h1 * p_t;
    const double ratio = signal / (signal + y * h3 * p_j);
    return 1.0 - ratio * std::exp(-noise * y / signal);
}

/// Loss probability of one real packet given the probability the jammer is active on it.
inline double outage_probability(const ChannelConfig& cfg, double p_t, double p_j,
                                 double p_jam_active) {
    detail::require_probability(p_jam_active, "p_jam_active");
    const double noise = cfg.noise(1);
    const double clear = snr_cdf(cfg.gamma_min, cfg.h1, p_t, noise);
    const double jammed = sinr_cdf(cfg.gamma_min, p_t, p_j, cfg.h1, cfg.h3, noise);
    return clear * (1.0 - p_jam_active) + jammed * p_jam_active;
}

inline double outage_probability(const ChannelConfig& cfg, const PowerConfig& pw, double p_j,
                                 double p_jam_active) {
    return outage_probability(cfg, pw.p_t, p_j, p_jam_active);
}

/// Power gain of a Rayleigh channel for one block: exponential with mean avg_gain.
inline double sample_fading(RngStream& rng, double avg_gain) {
    detail::require_positive(avg_gain, "avg_gain");
    return rng.exponential(avg_gain);
}

}  // namespace paoi_jam
