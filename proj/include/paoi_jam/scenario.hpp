#pragma once

// A complete experiment description and the derivation of the jammer's ROC
// pair from whichever detector the scenario names.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "adversary.hpp"
#include "aoi.hpp"
#include "channel.hpp"
#include "detection.hpp"
#include "detector_table.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace paoi_jam {

struct TrafficConfig {
    UpdateModel model = UpdateModel::queued;
    /// Update generation rate per unit time.
    double lambda = 0.6;
    /// Fraction of T-idle slots that carry a decoy.
    double q = 0.0;
    /// Service time, equal to one slot.
    double d = 1.0;

    /// Per-slot probability of a real transmission (utilization lambda*d).
    double q_t() const { return lambda * d; }
    double q_d() const { return (1.0 - q_t()) * q; }

    void validate() const {
        if (!(lambda >= 0.0)) {
            throw ValidationError("traffic.lambda", "must be >= 0");
        }
        if (!(d > 0.0)) {
            throw ValidationError("traffic.d", "must be > 0");
        }
        if (!(q_t() >= 0.0 && q_t() <= 1.0)) {
            throw ValidationError("traffic.q_t", "lambda*d must lie in [0,1]");
        }
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError("traffic.q", "must lie in [0,1]");
        }
    }
};

/// Placeholder ROC used when no detector is configured: a mediocre classifier at
/// 0 dB whose decoy link is 3 dB stronger than the T link.
inline RocPair default_roc() { return RocPair{0.25, 0.15, 0.2, 0.0}; }

struct FixedRocDetector {
    RocPair roc = default_roc();
};

struct EnergyDetectorSpec {
    int n_samples = 16;
    /// Target false-alarm rate; the threshold follows from it.
    double p_false_alarm = 0.1;
    /// Explicit threshold overriding the false-alarm target.
    std::optional<double> threshold;
};

struct TableDetectorSpec {
    std::string path;
    int n_samples = 16;
    std::shared_ptr<const TableDetector> model;
};

struct DetectorSpec {
    std::variant<FixedRocDetector, EnergyDetectorSpec, TableDetectorSpec> kind;
    DecisionMode mode = DecisionMode::exclusive;
    /// Holds the T->J average SNR fixed (dB) instead of deriving it from h2*p_t/sigma2^2.
    std::optional<double> snr_db;
    /// D->J SNR relative to T->J SNR.
    double decoy_snr_offset_db = 3.0;
};

struct SimulationConfig {
    std::uint64_t seed = 1;
    std::uint64_t n_slots = 1'000'000;
    double burn_in_fraction = 0.01;
    int batches = 30;

    void validate() const {
        if (n_slots < 1) {
            throw ValidationError("simulation.n_slots", "must be >= 1");
        }
        if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
            throw ValidationError("simulation.burn_in_fraction", "must lie in [0,1)");
        }
        if (batches < 2) {
            throw ValidationError("simulation.batches", "must be >= 2");
        }
    }
};

struct Scenario {
    ChannelConfig channel;
    PowerConfig power;
    TrafficConfig traffic;
    DetectorSpec detector;
    JammerMode jammer_mode = JammerMode::oracle;
    SimulationConfig sim;

    JammerConfig jammer() const { return {power.p_j_max, jammer_mode}; }

    void validate() const {
        channel.validate();
        traffic.validate();
        power.validate(traffic.q_t(), traffic.q_d());
        jammer().validate();
        sim.validate();
        std::visit(
            [](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, FixedRocDetector>) {
                    try {
                        k.roc.validate();
                    } catch (const DomainError& e) {
                        throw ValidationError("detector", e.what());
                    }
                } else if constexpr (std::is_same_v<K, EnergyDetectorSpec>) {
                    if (k.n_samples < 1) {
                        throw ValidationError("detector.n_samples", "must be >= 1");
                    }
                    if (!(k.p_false_alarm > 0.0 && k.p_false_alarm < 1.0)) {
                        throw ValidationError("detector.p_false_alarm", "must lie in (0,1)");
                    }
                    if (k.threshold && !(*k.threshold >= 0.0)) {
                        throw ValidationError("detector.threshold", "must be >= 0");
                    }
                } else {
                    if (!k.model) {
                        throw ValidationError("detector.path", "table not loaded");
                    }
                    (void)k.model->table().row_of(k.n_samples);
                }
            },
            detector.kind);
    }
};

/// Linear average SNR of the T->J link seen by the detector.
inline double detector_snr_real(const Scenario& s) {
    if (s.detector.snr_db) {
        return db_to_linear(*s.detector.snr_db);
    }
    return s.channel.h2 * s.power.p_t / s.channel.noise(2);
}

inline double detector_snr_decoy(const Scenario& s) {
    return detector_snr_real(s) * db_to_linear(s.detector.decoy_snr_offset_db);
}

/// The jammer's ROC pair for this scenario.
inline RocPair resolve_roc(const Scenario& s) {
    const double snr_t = detector_snr_real(s);
    const double snr_d = detector_snr_decoy(s);
    return std::visit(
        [&](const auto& k) -> RocPair {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FixedRocDetector>) {
                return k.roc;
            } else if constexpr (std::is_same_v<K, EnergyDetectorSpec>) {
                const double noise = s.channel.noise(2);
                if (k.threshold) {
                    RocPair roc;
                    const auto real = energy_detector_roc(*k.threshold, k.n_samples, noise, snr_t);
                    const auto decoy =
                        energy_detector_roc(*k.threshold, k.n_samples, noise, snr_d);
                    roc.p_m_t = 1.0 - real.p_detect;
                    roc.p_m_d = 1.0 - decoy.p_detect;
                    roc.p_f_t = real.p_false_alarm;
                    return roc;
                }
                return derive_roc(EnergyDetector(k.p_false_alarm, noise), snr_t, snr_d,
                                  k.n_samples);
            } else {
                return derive_roc(*k.model, snr_t, snr_d, k.n_samples);
            }
        },
        s.detector.kind);
}

}  // namespace paoi_jam
