#pragma once

// Reactive jammer: per-activation power under an average budget, per-slot
// jam decisions, and energy bookkeeping.

#include <algorithm>
#include <cstdint>
#include <string>

#include "detection.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace paoi_jam {

enum class SlotTruth { real, decoy, idle };

inline const char* to_string(SlotTruth t) {
    switch (t) {
        case SlotTruth::real: return "real";
        case SlotTruth::decoy: return "decoy";
        case SlotTruth::idle: return "idle";
    }
    return "?";
}

enum class JammerMode {
    /// Fixed per-activation power from the closed-form busy probability.
    oracle,
    /// Power re-derived each slot from the empirical activation rate.
    adaptive,
};

struct JammerConfig {
    double p_j_max = 1.0;
    JammerMode mode = JammerMode::oracle;

    void validate() const {
        if (!(p_j_max >= 0.0)) {
            throw ValidationError("power.p_j_max", "must be >= 0");
        }
    }
};

struct JammerState {
    std::uint64_t slots_observed = 0;
    std::uint64_t activations = 0;
    double energy_spent = 0.0;
};

struct JamPower {
    double power = 0.0;
    /// False when the jammer never declares busy; `power` is then meaningless and reported as 0.
    bool active = false;
};

/// Per-activation power that spends the average budget exactly: p_j_max / p_busy.
inline JamPower jam_power(double p_j_max, double p_busy) {
    detail::require_non_negative(p_j_max, "p_j_max");
    detail::require_probability(p_busy, "p_busy");
    if (p_busy == 0.0) {
        return {};
    }
    return {p_j_max / p_busy, true};
}

/// One sensing slot. The jammer declares busy with probability 1-p_m_t, 1-p_m_d or p_f
/// depending on the truth, and transmits `power` for the whole slot whenever it does,
/// decoy and false alarm included. Exactly one uniform is drawn per call.
inline bool decide_and_spend(JammerState& state, SlotTruth truth, const RocPair& roc,
                             RngStream& rng, double power) {
    const double u = rng.uniform();
    double p_declare = 0.0;
    switch (truth) {
        case SlotTruth::real: p_declare = 1.0 - roc.p_m_t; break;
        case SlotTruth::decoy: p_declare = 1.0 - roc.p_m_d; break;
        case SlotTruth::idle: p_declare = roc.p_f(); break;
    }
    ++state.slots_observed;
    const bool jams = u < p_declare;
    if (jams) {
        ++state.activations;
        state.energy_spent += power;
    }
    return jams;
}

/// p_j * activations / slots_observed.
inline double realized_average_power(const JammerState& state, double p_j) {
    if (state.slots_observed == 0) {
        throw DomainError("realized_average_power needs at least one observed slot");
    }
    return p_j * static_cast<double>(state.activations) /
           static_cast<double>(state.slots_observed);
}

/// Energy actually spent per observed slot; equals realized_average_power in oracle mode.
inline double spent_average_power(const JammerState& state) {
    if (state.slots_observed == 0) {
        throw DomainError("spent_average_power needs at least one observed slot");
    }
    return state.energy_spent / static_cast<double>(state.slots_observed);
}

/// A jammer instance for one simulation run.
class Jammer {
public:
    Jammer(JammerConfig config, JamPower oracle_power)
        : config_(config), oracle_(oracle_power) {
        config_.validate();
    }

    /// Power the jammer would use if it fires in the next slot.
    double next_power() const {
        if (config_.mode == JammerMode::oracle) {
            return oracle_.active ? oracle_.power : 0.0;
        }
        const double slots = static_cast<double>(state_.slots_observed + 1);
        const double acts = static_cast<double>(state_.activations + 1);
        return config_.p_j_max * slots / std::max(1.0, acts);
    }

    struct Decision {
        bool fired = false;
        /// Power transmitted in this slot, 0 when silent.
        double power = 0.0;
    };

    Decision step(SlotTruth truth, const RocPair& roc, RngStream& rng) {
        const double p = next_power();
        if (decide_and_spend(state_, truth, roc, rng, p)) {
            return {true, p};
        }
        return {};
    }

    const JammerState& state() const { return state_; }
    const JammerConfig& config() const { return config_; }
    JamPower oracle_power() const { return oracle_; }

private:
    JammerConfig config_;
    JamPower oracle_;
    JammerState state_;
};

}  // namespace paoi_jam
