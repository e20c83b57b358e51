#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace paoi_jam {

/// Sawtooth age process at the receiver. Age grows at unit rate; an informative
/// delivery records the peak reached just before it and resets the age to the
/// delivered packet's own age.
///
/// A delivery is informative when its generation time is no earlier than the last
/// informative one, so several updates generated in the same slot each count.
class AoiTracker {
public:
    explicit AoiTracker(double initial_age = 0.0, double t0 = 0.0)
        : last_gen_(t0 - initial_age), now_(t0), window_start_(t0) {}

    /// Moves the clock forward, integrating the age for the time-average.
    void advance_to(double t) {
        if (t < now_) {
            throw std::logic_error("AoiTracker: time went backwards (" + std::to_string(t) +
                                   " < " + std::to_string(now_) + ")");
        }
        const double dt = t - now_;
        area_ += dt * (age() + 0.5 * dt);
        now_ = t;
    }

    /// Returns the recorded peak, or nullopt for a stale packet.
    std::optional<double> record_delivery(double t_gen, double t_now) {
        if (t_gen > t_now) {
            throw std::logic_error("AoiTracker: packet delivered before it was generated");
        }
        advance_to(t_now);
        if (t_gen < last_gen_) {
            return std::nullopt;
        }
        const double peak = t_now - last_gen_;
        last_gen_ = t_gen;
        ++peaks_;
        peak_sum_ += peak;
        peak_sum_sq_ += peak * peak;
        return peak;
    }

    double age() const { return now_ - last_gen_; }
    double now() const { return now_; }
    double last_generation() const { return last_gen_; }

    /// Drops accumulated statistics but keeps the age process (burn-in).
    void reset_statistics() {
        peaks_ = 0;
        peak_sum_ = 0.0;
        peak_sum_sq_ = 0.0;
        area_ = 0.0;
        window_start_ = now_;
    }

    long long peak_count() const { return peaks_; }
    double peak_sum() const { return peak_sum_; }

    std::optional<double> mean_peak() const {
        if (peaks_ == 0) {
            return std::nullopt;
        }
        return peak_sum_ / static_cast<double>(peaks_);
    }

    std::optional<double> time_average_age() const {
        const double span = now_ - window_start_;
        if (span <= 0.0) {
            return std::nullopt;
        }
        return area_ / span;
    }

private:
    double last_gen_;
    double now_;
    double window_start_;
    long long peaks_ = 0;
    double peak_sum_ = 0.0;
    double peak_sum_sq_ = 0.0;
    double area_ = 0.0;
};

}  // namespace paoi_jam
