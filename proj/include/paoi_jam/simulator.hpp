#pragma once

// Slotted Monte Carlo of the transmitter / decoy / jammer / receiver loop.
//
// Slot s covers [s, s+1) in units of the service time d. Per slot:
//   M1: Poisson(lambda d) updates join a FIFO queue stamped with time s; the head
//       is served if the queue is non-empty.
//   M2: with probability lambda d an update is generated at s and sent.
//   If T is silent, D sends a decoy with probability q.
//   The jammer senses the slot and fires on a busy declaration.
//   A real packet draws h1 and h3 and is lost if its SINR falls below gamma_min;
//   otherwise it is delivered at s+1. Lost packets are not retransmitted.
//
// Arrivals, decoy coins, detection, and fading use separate sub-streams of the
// scenario seed, so runs that differ only in q or in jammer power share their
// arrival and fading realizations.

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "adversary.hpp"
#include "aoi_tracker.hpp"
#include "closed_loop.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace paoi_jam {

struct SlotRecord {
    std::uint64_t slot = 0;
    SlotTruth truth = SlotTruth::idle;
    bool jammed = false;
    /// Fading draws of the real packet; NaN when the slot carried none.
    double gain_tr = std::numeric_limits<double>::quiet_NaN();
    double gain_jr = std::numeric_limits<double>::quiet_NaN();
    bool outage = false;
    std::uint64_t queue_length = 0;
    std::optional<double> served_generation;
    /// Receiver age at the end of the slot, in slots.
    double age = 0.0;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

struct AoiStats {
    /// Absent when no informative delivery fell inside the measurement window.
    std::optional<double> mean_paoi;
    std::optional<double> paoi_ci;
    std::optional<double> time_avg_aoi;
    std::optional<double> loss_rate;
    std::optional<double> loss_ci;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    std::uint64_t real_slots = 0;
    std::uint64_t decoy_slots = 0;
    std::uint64_t idle_slots = 0;
    std::uint64_t measured_slots = 0;
    std::uint64_t jammer_activations = 0;
    double jammer_activation_rate = 0.0;
    double jammer_avg_power = 0.0;
    /// Per-activation power in oracle mode.
    double p_j = 0.0;

    // Whole-run counts, burn-in included.
    std::uint64_t total_arrivals = 0;
    std::uint64_t total_delivered = 0;
    std::uint64_t total_dropped = 0;
    std::uint64_t final_queue = 0;

    std::vector<std::string> warnings;
};

/// Two-sided 99% interval half-width for the mean of `samples` (Student t).
inline std::optional<double> ci99_half_width(const std::vector<double>& samples) {
    if (samples.size() < 2) {
        return std::nullopt;
    }
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) {
        mean += v;
    }
    mean /= n;
    double ss = 0.0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    return boost::math::quantile(dist, 0.995) * sd / std::sqrt(n);
}

inline constexpr double kZ995 = 2.5758293035489004;

inline AoiStats run(const Scenario& scenario, const SlotObserver* observer = nullptr) {
    scenario.validate();
    const TrafficConfig& traffic = scenario.traffic;
    const ChannelConfig& channel = scenario.channel;
    const SimulationConfig& cfg = scenario.sim;

    AoiStats out;
    const double per_slot_rate = traffic.q_t();
    if (traffic.model == UpdateModel::queued && per_slot_rate >= 1.0) {
        out.warnings.push_back("M1 utilization lambda*d >= 1: queue is unstable");
    }

    const RocPair roc = resolve_roc(scenario);
    const double p_busy =
        prob_jammer_declares_busy(traffic.q_t(), traffic.q_d(), roc, scenario.detector.mode);
    const JamPower oracle = jam_power(scenario.power.p_j_max, p_busy);
    out.p_j = oracle.active ? oracle.power : 0.0;
    Jammer jammer(scenario.jammer(), oracle);

    RngStream arrivals = RngStream::derive(cfg.seed, 1);
    RngStream decoys = RngStream::derive(cfg.seed, 2);
    RngStream detection = RngStream::derive(cfg.seed, 3);
    RngStream fading = RngStream::derive(cfg.seed, 4);

    const std::uint64_t n = cfg.n_slots;
    const auto burn_in = static_cast<std::uint64_t>(cfg.burn_in_fraction * static_cast<double>(n));
    const std::uint64_t window = n - burn_in;
    const auto batches = static_cast<std::uint64_t>(cfg.batches);
    const std::uint64_t batch_len = std::max<std::uint64_t>(1, window / batches);
    std::vector<double> batch_peak_sum(batches, 0.0);
    std::vector<std::uint64_t> batch_peak_count(batches, 0);

    const double noise = channel.noise(1);
    std::deque<std::uint64_t> queue;
    AoiTracker tracker;
    double energy_at_window = 0.0;
    std::uint64_t activations_at_window = 0;

    for (std::uint64_t s = 0; s < n; ++s) {
        const bool measuring = s >= burn_in;
        if (s == burn_in) {
            tracker.advance_to(static_cast<double>(s));
            tracker.reset_statistics();
            energy_at_window = jammer.state().energy_spent;
            activations_at_window = jammer.state().activations;
        }

        SlotRecord rec;
        rec.slot = s;

        std::optional<std::uint64_t> served;
        if (traffic.model == UpdateModel::queued) {
            const std::uint64_t k = arrivals.poisson(per_slot_rate);
            out.total_arrivals += k;
            queue.insert(queue.end(), k, s);
            if (!queue.empty()) {
                served = queue.front();
                queue.pop_front();
            }
        } else if (arrivals.bernoulli(per_slot_rate)) {
            ++out.total_arrivals;
            served = s;
        }

        const bool decoy_coin = decoys.bernoulli(traffic.q);
        rec.truth = served ? SlotTruth::real : (decoy_coin ? SlotTruth::decoy : SlotTruth::idle);
        const auto decision = jammer.step(rec.truth, roc, detection);
        rec.jammed = decision.fired;
        const double jam = decision.power;

        if (measuring) {
            switch (rec.truth) {
                case SlotTruth::real: ++out.real_slots; break;
                case SlotTruth::decoy: ++out.decoy_slots; break;
                case SlotTruth::idle: ++out.idle_slots; break;
            }
        }

        if (served) {
            rec.gain_tr = sample_fading(fading, channel.h1);
            rec.gain_jr = sample_fading(fading, channel.h3);
            const double sinr =
                rec.gain_tr * scenario.power.p_t / (noise + (rec.jammed ? rec.gain_jr * jam : 0.0));
            rec.outage = sinr < channel.gamma_min;
            rec.served_generation = static_cast<double>(*served);
            if (rec.outage) {
                ++out.total_dropped;
                if (measuring) {
                    ++out.dropped;
                }
                tracker.advance_to(static_cast<double>(s + 1));
            } else {
                ++out.total_delivered;
                const auto peak =
                    tracker.record_delivery(static_cast<double>(*served), static_cast<double>(s + 1));
                if (!peak) {
                    throw std::logic_error("FIFO service delivered a stale update");
                }
                if (measuring) {
                    ++out.delivered;
                    const std::uint64_t b = std::min(batches - 1, (s - burn_in) / batch_len);
                    batch_peak_sum[b] += *peak;
                    ++batch_peak_count[b];
                }
            }
        } else {
            tracker.advance_to(static_cast<double>(s + 1));
        }

        if (observer) {
            rec.queue_length = queue.size();
            rec.age = tracker.age();
            (*observer)(rec);
        }
    }
    out.final_queue = queue.size();

    const double d = traffic.d;
    out.measured_slots = window;
    out.mean_paoi = tracker.mean_peak();
    if (out.mean_paoi) {
        *out.mean_paoi *= d;
        std::vector<double> means;
        for (std::uint64_t b = 0; b < batches; ++b) {
            if (batch_peak_count[b] > 0) {
                means.push_back(d * batch_peak_sum[b] / static_cast<double>(batch_peak_count[b]));
            }
        }
        out.paoi_ci = ci99_half_width(means);
    }
    if (auto avg = tracker.time_average_age()) {
        out.time_avg_aoi = *avg * d;
    }
    const std::uint64_t sent = out.delivered + out.dropped;
    if (sent > 0) {
        const double p = static_cast<double>(out.dropped) / static_cast<double>(sent);
        out.loss_rate = p;
        out.loss_ci = kZ995 * std::sqrt(p * (1.0 - p) / static_cast<double>(sent));
    }
    if (window > 0) {
        out.jammer_activations = jammer.state().activations - activations_at_window;
        out.jammer_activation_rate =
            static_cast<double>(out.jammer_activations) / static_cast<double>(window);
        out.jammer_avg_power =
            (jammer.state().energy_spent - energy_at_window) / static_cast<double>(window);
    }
    return out;
}

struct Comparison {
    bool applicable = true;
    std::string reason;
    std::optional<AnalyticResult> analytic;
    AoiStats simulated;
    std::optional<double> relative_error;
    bool inside_ci = false;
};

/// Runs the closed form and the simulator on the same scenario.
inline Comparison compare_with_analytic(const Scenario& scenario) {
    Comparison c;
    if (scenario.jammer_mode == JammerMode::adaptive) {
        c.applicable = false;
        c.reason = "analytic not applicable: adaptive jammer";
        c.simulated = run(scenario);
        return c;
    }
    c.analytic = closed_loop_paoi(scenario);
    c.simulated = run(scenario);
    if (c.simulated.mean_paoi) {
        const double a = c.analytic->paoi;
        const double m = *c.simulated.mean_paoi;
        c.relative_error = std::abs(m - a) / a;
        c.inside_ci = c.simulated.paoi_ci && std::abs(m - a) <= *c.simulated.paoi_ci;
    } else {
        c.reason = "no informative deliveries in the measurement window";
    }
    return c;
}

}  // namespace paoi_jam
