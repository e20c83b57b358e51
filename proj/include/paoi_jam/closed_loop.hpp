#pragma once

#include "adversary.hpp"
#include "aoi.hpp"
#include "channel.hpp"
#include "detection.hpp"
#include "scenario.hpp"

namespace paoi_jam {

struct AnalyticResult {
    RocPair roc;
    double q_t = 0.0;
    double q_d = 0.0;
    /// Per-slot probability that the jammer declares busy.
    double p_busy = 0.0;
    /// Per-activation jamming power (0 when the jammer never fires).
    double p_j = 0.0;
    bool jammer_active = false;
    /// Probability that a real packet is jammed.
    double p_jam_real = 0.0;
    double p_loss = 0.0;
    double paoi = 0.0;
    /// Long-run jammer power, p_j * p_busy.
    double jammer_avg_power = 0.0;
};

/// Detection -> budgeted jamming power -> outage -> peak age, for one scenario.
inline AnalyticResult closed_loop_paoi(const Scenario& s) {
    s.validate();
    AnalyticResult r;
    r.roc = resolve_roc(s);
    r.q_t = s.traffic.q_t();
    r.q_d = s.traffic.q_d();
    r.p_busy = prob_jammer_declares_busy(r.q_t, r.q_d, r.roc, s.detector.mode);
    const JamPower jp = jam_power(s.power.p_j_max, r.p_busy);
    r.jammer_active = jp.active;
    r.p_j = jp.power;
    r.jammer_avg_power = r.p_j * r.p_busy;
    r.p_jam_real = jp.active ? jam_probability_for_outage(r.q_t, r.roc, s.detector.mode) : 0.0;
    r.p_loss = outage_probability(s.channel, s.power, r.p_j, r.p_jam_real);
    r.paoi = paoi(s.traffic.model, s.traffic.lambda, s.traffic.d, r.p_loss);
    return r;
}

}  // namespace paoi_jam
