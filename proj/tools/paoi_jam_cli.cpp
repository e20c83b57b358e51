// paoi-jam: closed-form and simulated peak age under a budgeted reactive jammer.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "paoi_jam/paoi_jam.hpp"

namespace {

using nlohmann::json;
using namespace paoi_jam;

constexpr const char* kSeedEnv = "PAOI_JAM_SEED";

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json roc_json(const RocPair& r) {
    return {{"p_m_t", r.p_m_t}, {"p_m_d", r.p_m_d}, {"p_f_t", r.p_f_t}, {"p_f_d", r.p_f_d},
            {"p_f", r.p_f()}};
}

json analytic_json(const AnalyticResult& a) {
    return {{"roc", roc_json(a.roc)},
            {"q_t", a.q_t},
            {"q_d", a.q_d},
            {"p_busy", a.p_busy},
            {"p_j", a.p_j},
            {"jammer_active", a.jammer_active},
            {"p_jam_real", a.p_jam_real},
            {"p_loss", a.p_loss},
            {"paoi", a.paoi},
            {"jammer_avg_power", a.jammer_avg_power}};
}

json stats_json(const AoiStats& s) {
    return {{"mean_paoi", opt(s.mean_paoi)},
            {"paoi_ci99", opt(s.paoi_ci)},
            {"time_avg_aoi", opt(s.time_avg_aoi)},
            {"loss_rate", opt(s.loss_rate)},
            {"loss_ci99", opt(s.loss_ci)},
            {"delivered", s.delivered},
            {"dropped", s.dropped},
            {"real_slots", s.real_slots},
            {"decoy_slots", s.decoy_slots},
            {"idle_slots", s.idle_slots},
            {"measured_slots", s.measured_slots},
            {"jammer_activations", s.jammer_activations},
            {"jammer_activation_rate", s.jammer_activation_rate},
            {"jammer_avg_power", s.jammer_avg_power},
            {"p_j", s.p_j},
            {"total_arrivals", s.total_arrivals},
            {"total_delivered", s.total_delivered},
            {"total_dropped", s.total_dropped},
            {"final_queue", s.final_queue},
            {"warnings", s.warnings}};
}

/// Machine-readable error summary on stderr.
int fail(const std::string& kind, const std::string& message) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return 1;
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv(kSeedEnv);
    if (!v || !*v) {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const auto seed = std::stoull(v, &used);
        if (used != std::string(v).size()) {
            throw std::invalid_argument(v);
        }
        return seed;
    } catch (const std::exception&) {
        throw ValidationError(kSeedEnv, std::string("not an unsigned integer: ") + v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peak age of information under a reactive, power-budgeted jammer with decoys"};
    app.require_subcommand(1);

    std::string scenario_path;
    auto* analytic = app.add_subcommand("analytic", "Evaluate the closed-form pipeline");
    analytic->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    std::string sim_path;
    std::optional<std::uint64_t> slots;
    std::optional<std::uint64_t> seed;
    std::string trace_path;
    bool compare = false;
    auto* simulate = app.add_subcommand("simulate", "Run the slotted Monte Carlo simulator");
    simulate->add_option("scenario", sim_path, "Scenario JSON file")->required();
    simulate->add_option("--slots", slots, "Number of slots");
    simulate->add_option("--seed", seed, "Seed (overrides the scenario and PAOI_JAM_SEED)");
    simulate->add_option("--trace", trace_path, "Write a per-slot CSV trace");
    simulate->add_flag("--compare", compare, "Also report the closed form and its agreement");

    std::string sweep_target;
    std::string out_path;
    std::string format = "csv";
    std::string engines;
    std::optional<std::uint64_t> sweep_slots;
    unsigned workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep spec file or a bundled figure recipe");
    sweep->add_option("spec", sweep_target, "Sweep JSON file or recipe name (fig4a fig4b fig5a fig5b fig6)")
        ->required();
    sweep->add_option("--out", out_path, "Output file (stdout when omitted)");
    sweep->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    sweep->add_option("--engines", engines, "Override engines: analytic, simulation or both")
        ->check(CLI::IsMember({"analytic", "simulation", "both"}));
    sweep->add_option("--slots", sweep_slots, "Override simulated slots per point");
    sweep->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate a scenario and print it in canonical form");
    validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

    std::string table_path;
    auto* table = app.add_subcommand("detector-table", "Detector table utilities");
    table->require_subcommand(1);
    auto* check = table->add_subcommand("check", "Validate a detector table file");
    check->add_option("file", table_path, "Detector table JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (analytic->parsed()) {
            const Scenario s = load_scenario(scenario_path);
            std::cout << analytic_json(closed_loop_paoi(s)).dump(2) << '\n';
        } else if (simulate->parsed()) {
            Scenario s = load_scenario(sim_path);
            if (auto e = env_seed()) {
                s.sim.seed = *e;
            }
            if (seed) {
                s.sim.seed = *seed;
            }
            if (slots) {
                s.sim.n_slots = *slots;
            }
            std::ofstream trace;
            SlotObserver observer;
            if (!trace_path.empty()) {
                trace.open(trace_path, std::ios::binary);
                if (!trace) {
                    return fail("io", "cannot open " + trace_path);
                }
                trace << "slot,truth,jam,outage,qlen,age\n";
                observer = [&](const SlotRecord& r) {
                    trace << r.slot << ',' << to_string(r.truth) << ',' << int(r.jammed) << ','
                          << int(r.outage) << ',' << r.queue_length << ',' << format_number(r.age)
                          << '\n';
                };
            }
            json out;
            if (compare) {
                const Comparison c = compare_with_analytic(s);
                out = {{"simulation", stats_json(c.simulated)},
                       {"applicable", c.applicable},
                       {"reason", c.reason}};
                if (c.analytic) {
                    out["analytic"] = analytic_json(*c.analytic);
                    out["relative_error"] = opt(c.relative_error);
                    out["inside_ci99"] = c.inside_ci;
                }
                if (observer) {
                    run(s, &observer);
                }
            } else {
                out = stats_json(run(s, observer ? &observer : nullptr));
            }
            out["seed"] = s.sim.seed;
            std::cout << out.dump(2) << '\n';
        } else if (sweep->parsed()) {
            const auto names = recipe_names();
            SweepSpec spec = std::find(names.begin(), names.end(), sweep_target) != names.end()
                                 ? recipe(sweep_target)
                                 : load_sweep(sweep_target);
            if (!engines.empty()) {
                spec.engines = detail::parse_engines(engines);
            }
            if (auto e = env_seed()) {
                spec.base["simulation"]["seed"] = *e;
            }
            if (sweep_slots) {
                spec.base["simulation"]["n_slots"] = *sweep_slots;
            }
            const auto rows = run_sweep(spec, workers);
            const auto fmt = format == "svg" ? OutputFormat::svg : OutputFormat::csv;
            if (out_path.empty()) {
                std::cout << (fmt == OutputFormat::csv
                                  ? to_csv(rows)
                                  : to_svg(rows, spec.metric, spec.x_label, spec.y_label, spec.name));
            } else {
                emit(rows, fmt, out_path, spec);
            }
        } else if (validate->parsed()) {
            const Scenario s = load_scenario(validate_path);
            std::cout << scenario_to_json(s).dump(2) << '\n';
        } else if (check->parsed()) {
            const DetectorTable t = load_detector_table(table_path);
            std::cout << json{{"ok", true},
                              {"packet_sizes", t.packet_sizes},
                              {"snr_points", t.snr_db.size()}}
                             .dump()
                      << '\n';
        }
    } catch (const ParseError& e) {
        return fail("parse", e.what());
    } catch (const ValidationError& e) {
        return fail("validation", e.what());
    } catch (const InstabilityError& e) {
        return fail("instability", e.what());
    } catch (const SweepError& e) {
        return fail("sweep", e.what());
    } catch (const LookupError& e) {
        return fail("lookup", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
