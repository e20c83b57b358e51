#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library: draws come from <random> distributions and the queue is event-driven
// in continuous time.

#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

namespace oracle {

struct Proportion {
    double p = 0.0;
    double se = 0.0;
    /// |value - p| within k standard errors.
    bool agrees(double value, double k = 3.0) const { return std::abs(value - p) <= k * se; }
};

inline Proportion proportion(std::uint64_t hits, std::uint64_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(n)) /
                         static_cast<double>(n))};
}

/// Empirical P[SINR <= y] with h1, h3 exponential and the jammer active w.p. p_jam.
inline Proportion outage_mc(double y, double h1, double h3, double p_t, double p_j, double noise,
                            double p_jam, std::uint64_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> e1(1.0 / h1);
    std::exponential_distribution<double> e3(1.0 / h3);
    std::bernoulli_distribution jam(p_jam);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double g1 = e1(rng);
        const double g3 = e3(rng);
        const double interference = jam(rng) ? g3 * p_j : 0.0;
        if (g1 * p_t / (noise + interference) <= y) {
            ++hits;
        }
    }
    return proportion(hits, draws);
}

/// Slot-level four-outcome detection experiment with exclusive real/decoy/idle slots.
inline Proportion busy_declaration_mc(double q_t, double q_d, double p_m_t, double p_m_d,
                                      double p_f, std::uint64_t slots, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uint64_t busy = 0;
    for (std::uint64_t i = 0; i < slots; ++i) {
        const double truth = u(rng);
        const double detect = u(rng);
        double p_declare = p_f;
        if (truth < q_t) {
            p_declare = 1.0 - p_m_t;
        } else if (truth < q_t + q_d) {
            p_declare = 1.0 - p_m_d;
        }
        if (detect < p_declare) {
            ++busy;
        }
    }
    return proportion(busy, slots);
}

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
};

/// Continuous-time M/D/1 with Poisson(lambda) arrivals, service d, i.i.d. loss p.
/// Returns the mean sojourn time over `packets` packets.
inline MeanEstimate md1_sojourn(double lambda, double d, std::uint64_t packets,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(lambda);
    double t = 0.0;
    double server_free = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t k = 0; k < packets; ++k) {
        t += gap(rng);
        const double start = std::max(t, server_free);
        server_free = start + d;
        const double sojourn = server_free - t;
        sum += sojourn;
        sum_sq += sojourn * sojourn;
    }
    const double n = static_cast<double>(packets);
    const double mean = sum / n;
    // Sojourn times are autocorrelated; this se is only indicative.
    return {mean, std::sqrt((sum_sq / n - mean * mean) / n)};
}

/// Event-driven M/D/1 peak age with i.i.d. loss: peaks are measured at each
/// successful departure as departure time minus the previous informative generation.
inline double md1_mean_peak(double lambda, double d, double p, std::uint64_t packets,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(lambda);
    std::bernoulli_distribution lost(p);
    double t = 0.0;
    double server_free = 0.0;
    double last_gen = 0.0;
    bool have_last = false;
    double sum = 0.0;
    std::uint64_t peaks = 0;
    for (std::uint64_t k = 0; k < packets; ++k) {
        t += gap(rng);
        const double start = std::max(t, server_free);
        server_free = start + d;
        if (lost(rng)) {
            continue;
        }
        if (have_last) {
            sum += server_free - last_gen;
            ++peaks;
        }
        last_gen = t;
        have_last = true;
    }
    return sum / static_cast<double>(peaks);
}

/// Slotted JIT updating: an update is generated with probability lambda*d per slot of
/// length d, delivered at the slot end unless lost.
inline double jit_mean_peak(double lambda, double d, double p, std::uint64_t slots,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution send(lambda * d);
    std::bernoulli_distribution lost(p);
    double last_gen = 0.0;
    bool have_last = false;
    double sum = 0.0;
    std::uint64_t peaks = 0;
    for (std::uint64_t s = 0; s < slots; ++s) {
        if (!send(rng) || lost(rng)) {
            continue;
        }
        const double gen = static_cast<double>(s) * d;
        const double delivered = gen + d;
        if (have_last) {
            sum += delivered - last_gen;
            ++peaks;
        }
        last_gen = gen;
        have_last = true;
    }
    return sum / static_cast<double>(peaks);
}

/// Minimizer of f over a uniform grid on (lo, hi) with the given step.
template <class F>
double grid_argmin(F f, double lo, double hi, double step) {
    double best_x = lo + step;
    double best = f(best_x);
    for (double x = lo + step; x < hi; x += step) {
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

/// Energy detector by simulation: returns (false alarm rate, detection rate) for
/// n complex samples, unit-power BPSK under Rayleigh block fading with mean SNR.
inline std::pair<Proportion, Proportion> energy_detector_mc(double threshold, int n, double noise,
                                                            double avg_snr, std::uint64_t trials,
                                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(noise / 2.0));
    std::exponential_distribution<double> fade(1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::bernoulli_distribution bit(0.5);
    std::uint64_t fa = 0;
    std::uint64_t det = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double e0 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double re = g(rng), im = g(rng);
            e0 += re * re + im * im;
        }
        fa += e0 > threshold;
        const double amp = std::sqrt(fade(rng) * avg_snr * noise);
        const double th = phase(rng);
        double e1 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double s = bit(rng) ? 1.0 : -1.0;
            const double re = amp * s * std::cos(th) + g(rng);
            const double im = amp * s * std::sin(th) + g(rng);
            e1 += re * re + im * im;
        }
        det += e1 > threshold;
    }
    return {proportion(fa, trials), proportion(det, trials)};
}

}  // namespace oracle
