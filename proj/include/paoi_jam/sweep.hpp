#pragma once

// Parameter sweeps over a base scenario, evaluated by the closed form, the
// simulator, or both, plus the bundled figure recipes.

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "closed_loop.hpp"
#include "errors.hpp"
#include "scenario.hpp"
#include "scenario_io.hpp"
#include "simulator.hpp"

namespace paoi_jam {

enum class Engine { analytic, simulation };

inline const char* to_string(Engine e) { return e == Engine::analytic ? "analytic" : "simulation"; }

struct Series {
    std::string name = "default";
    /// Dotted scenario paths applied after the swept value.
    std::vector<std::pair<std::string, nlohmann::json>> overrides;
};

struct SweepSpec {
    std::string name = "sweep";
    nlohmann::json base = nlohmann::json::object();
    std::filesystem::path base_dir = ".";
    std::string parameter;
    std::vector<double> values;
    std::vector<Series> series{Series{}};
    std::vector<Engine> engines{Engine::analytic};
    int replications = 1;
    /// One seed per replication; defaults to base seed + replication index.
    std::vector<std::uint64_t> seeds;
    std::string metric = "paoi";
    std::string x_label;
    std::string y_label;

    void validate() const {
        if (values.empty()) {
            throw ValidationError("values", "grid must not be empty");
        }
        bool up = true;
        bool down = true;
        for (std::size_t i = 1; i < values.size(); ++i) {
            up = up && values[i] > values[i - 1];
            down = down && values[i] < values[i - 1];
        }
        if (values.size() > 1 && !up && !down) {
            throw ValidationError("values", "grid must be strictly monotone");
        }
        if (parameter.empty()) {
            throw ValidationError("parameter", "required");
        }
        if (series.empty()) {
            throw ValidationError("series", "must not be empty");
        }
        if (engines.empty()) {
            throw ValidationError("engines", "must not be empty");
        }
        if (replications < 1) {
            throw ValidationError("replications", "must be >= 1");
        }
        if (!seeds.empty() && seeds.size() != static_cast<std::size_t>(replications)) {
            throw ValidationError("seeds", "needs one seed per replication");
        }
        static const char* const metrics[] = {"paoi", "p_j", "p_loss", "p_busy",
                                              "jammer_avg_power"};
        if (std::find(std::begin(metrics), std::end(metrics), metric) == std::end(metrics)) {
            throw ValidationError("metric", "unknown metric " + metric);
        }
    }
};

struct ResultRow {
    double swept_value = 0.0;
    Engine engine = Engine::analytic;
    double p_busy = 0.0;
    double p_j = 0.0;
    double p_loss = 0.0;
    double paoi = 0.0;
    /// Present iff engine == simulation.
    std::optional<double> paoi_ci;
    double jammer_avg_power = 0.0;
    std::string series = "default";

    double metric(const std::string& name) const {
        if (name == "paoi") return paoi;
        if (name == "p_j") return p_j;
        if (name == "p_loss") return p_loss;
        if (name == "p_busy") return p_busy;
        return jammer_avg_power;
    }
};

/// A sweep aborted at one grid value.
class SweepError : public std::runtime_error {
public:
    SweepError(double value, const std::string& series, const std::string& what)
        : std::runtime_error("sweep failed at value " + format_value(value) + " (series " +
                             series + "): " + what),
          value_(value) {}

    double value() const noexcept { return value_; }

private:
    static std::string format_value(double v) {
        std::ostringstream ss;
        ss.precision(9);
        ss << v;
        return ss.str();
    }
    double value_;
};

namespace detail {

/// Alternative spellings of one scenario quantity; setting one clears the others.
inline const std::vector<std::vector<std::string>>& alias_groups() {
    static const std::vector<std::vector<std::string>> groups{
        {"power.p_t", "power.p_t_db", "power.p_t_dbm"},
        {"power.p_d", "power.p_d_db"},
        {"power.p_t_max", "power.p_t_max_db"},
        {"power.p_j_max", "power.p_j_max_db"},
        {"traffic.lambda", "traffic.q_t"},
        {"channel.gamma_min", "channel.gamma_min_db"},
    };
    return groups;
}

inline std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string item;
    while (std::getline(ss, item, '.')) {
        if (item.empty()) {
            throw ValidationError(path, "malformed parameter path");
        }
        parts.push_back(item);
    }
    if (parts.empty()) {
        throw ValidationError(path, "malformed parameter path");
    }
    return parts;
}

inline void erase_path(nlohmann::json& doc, const std::string& path) {
    const auto parts = split_path(path);
    nlohmann::json* node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object() || !node->contains(parts[i])) {
            return;
        }
        node = &(*node)[parts[i]];
    }
    if (node->is_object()) {
        node->erase(parts.back());
    }
}

inline void set_path(nlohmann::json& doc, const std::string& path, const nlohmann::json& value) {
    for (const auto& group : alias_groups()) {
        if (std::find(group.begin(), group.end(), path) != group.end()) {
            for (const auto& other : group) {
                if (other != path) {
                    erase_path(doc, other);
                }
            }
        }
    }
    if (path == "power.p_t" || path == "power.p_t_db") {
        erase_path(doc, "power.noise_floor_dbm");
    }
    const auto parts = split_path(path);
    nlohmann::json* node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i])) {
            (*node)[parts[i]] = nlohmann::json::object();
        }
        node = &(*node)[parts[i]];
        if (!node->is_object()) {
            throw ValidationError(path, "does not resolve to a scenario field");
        }
    }
    (*node)[parts.back()] = value;
}

inline double round_grid(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace detail

inline std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw ValidationError("grid", "needs start <= stop and step > 0");
    }
    std::vector<double> out;
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) {
        out.push_back(detail::round_grid(start + static_cast<double>(i) * step));
    }
    return out;
}

/// The scenario evaluated at one grid value of one series.
inline Scenario scenario_at(const SweepSpec& spec, double value, const Series& series) {
    nlohmann::json doc = spec.base;
    detail::set_path(doc, spec.parameter, value);
    for (const auto& [path, v] : series.overrides) {
        detail::set_path(doc, path, v);
    }
    return scenario_from_json(doc, spec.base_dir);
}

inline ResultRow evaluate_analytic(const Scenario& s) {
    const AnalyticResult a = closed_loop_paoi(s);
    ResultRow row;
    row.engine = Engine::analytic;
    row.p_busy = a.p_busy;
    row.p_j = a.p_j;
    row.p_loss = a.p_loss;
    row.paoi = a.paoi;
    row.jammer_avg_power = a.jammer_avg_power;
    return row;
}

inline ResultRow evaluate_simulation(Scenario s, const std::vector<std::uint64_t>& seeds) {
    std::vector<AoiStats> reps;
    for (std::uint64_t seed : seeds) {
        s.sim.seed = seed;
        reps.push_back(run(s));
        if (!reps.back().mean_paoi) {
            throw std::runtime_error("simulation produced no informative deliveries");
        }
    }
    ResultRow row;
    row.engine = Engine::simulation;
    std::vector<double> means;
    for (const auto& r : reps) {
        const double n = static_cast<double>(reps.size());
        row.p_busy += r.jammer_activation_rate / n;
        row.p_j += r.p_j / n;
        row.p_loss += r.loss_rate.value_or(0.0) / n;
        row.paoi += *r.mean_paoi / n;
        row.jammer_avg_power += r.jammer_avg_power / n;
        means.push_back(*r.mean_paoi);
    }
    row.paoi_ci = reps.size() == 1 ? reps.front().paoi_ci : ci99_half_width(means);
    if (!row.paoi_ci) {
        row.paoi_ci = 0.0;
    }
    return row;
}

/// One row per (grid value, series, engine), ordered by grid value. Points run on a
/// worker pool; the table is assembled in grid order.
inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned workers = 0) {
    spec.validate();
    struct Task {
        double value;
        const Series* series;
        Engine engine;
    };
    std::vector<Task> tasks;
    for (double v : spec.values) {
        for (const auto& s : spec.series) {
            for (Engine e : spec.engines) {
                tasks.push_back({v, &s, e});
            }
        }
    }

    // Build every scenario up front so configuration errors surface before any simulation.
    std::vector<Scenario> scenarios;
    scenarios.reserve(tasks.size());
    for (const auto& t : tasks) {
        try {
            scenarios.push_back(scenario_at(spec, t.value, *t.series));
        } catch (const std::exception& e) {
            throw SweepError(t.value, t.series->name, e.what());
        }
    }

    std::vector<ResultRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                const Scenario& sc = scenarios[i];
                if (tasks[i].engine == Engine::analytic) {
                    rows[i] = evaluate_analytic(sc);
                } else {
                    std::vector<std::uint64_t> seeds = spec.seeds;
                    if (seeds.empty()) {
                        for (int r = 0; r < spec.replications; ++r) {
                            seeds.push_back(sc.sim.seed + static_cast<std::uint64_t>(r));
                        }
                    }
                    rows[i] = evaluate_simulation(sc, seeds);
                }
                rows[i].swept_value = tasks[i].value;
                rows[i].series = tasks[i].series->name;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw SweepError(tasks[i].value, tasks[i].series->name, e.what());
            }
        }
    }
    return rows;
}

namespace detail {

inline std::vector<Engine> parse_engines(const std::string& s) {
    if (s == "analytic") return {Engine::analytic};
    if (s == "simulation") return {Engine::simulation};
    if (s == "both") return {Engine::analytic, Engine::simulation};
    throw ValidationError("engines", "expected analytic, simulation or both, got " + s);
}

}  // namespace detail

inline SweepSpec sweep_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    detail::FieldReader r(j, "");
    if (auto v = r.integer("schema_version"); v && *v != kSchemaVersion) {
        throw ValidationError("schema_version", "unsupported version " + std::to_string(*v));
    }
    SweepSpec spec;
    spec.base_dir = base_dir;
    spec.name = r.string("name").value_or("sweep");
    r.exclusive({"base", "base_path"});
    if (const auto* b = r.raw("base")) {
        if (!b->is_object()) {
            throw ValidationError("base", "expected a scenario object");
        }
        spec.base = *b;
    } else if (auto path = r.string("base_path")) {
        std::filesystem::path p(*path);
        if (p.is_relative()) {
            p = base_dir / p;
        }
        spec.base = detail::parse_json_text(detail::read_text_file(p.string()), p.string());
        spec.base_dir = p.parent_path();
    }
    spec.parameter = r.string("parameter").value_or("");
    r.exclusive({"values", "grid"});
    if (const auto* v = r.raw("values")) {
        if (!v->is_array() ||
            !std::all_of(v->begin(), v->end(), [](const auto& x) { return x.is_number(); })) {
            throw ValidationError("values", "expected an array of numbers");
        }
        spec.values = v->get<std::vector<double>>();
    } else if (const auto* g = r.raw("grid")) {
        detail::FieldReader gr(*g, "grid");
        const auto start = gr.number("start");
        const auto stop = gr.number("stop");
        const auto step = gr.number("step");
        gr.finish();
        if (!start || !stop || !step) {
            throw ValidationError("grid", "needs start, stop and step");
        }
        spec.values = linear_grid(*start, *stop, *step);
    }
    if (const auto* s = r.raw("series")) {
        if (!s->is_array()) {
            throw ValidationError("series", "expected an array");
        }
        spec.series.clear();
        for (const auto& item : *s) {
            detail::FieldReader sr(item, "series");
            Series series;
            series.name = sr.string("name").value_or("series" + std::to_string(spec.series.size()));
            if (const auto* o = sr.raw("overrides")) {
                if (!o->is_object()) {
                    throw ValidationError("series.overrides", "expected an object");
                }
                for (const auto& [k, v] : o->items()) {
                    series.overrides.emplace_back(k, v);
                }
            }
            sr.finish();
            spec.series.push_back(std::move(series));
        }
    }
    spec.engines = detail::parse_engines(r.string("engines").value_or("analytic"));
    spec.replications = static_cast<int>(r.integer("replications").value_or(1));
    if (const auto* seeds = r.raw("seeds")) {
        if (!seeds->is_array() || !std::all_of(seeds->begin(), seeds->end(), [](const auto& x) {
                return x.is_number_unsigned() || (x.is_number_integer() && x.template get<long long>() >= 0);
            })) {
            throw ValidationError("seeds", "expected an array of non-negative integers");
        }
        spec.seeds = seeds->get<std::vector<std::uint64_t>>();
    }
    spec.metric = r.string("metric").value_or("paoi");
    spec.x_label = r.string("x_label").value_or(spec.parameter);
    spec.y_label = r.string("y_label").value_or(spec.metric);
    r.finish();
    spec.validate();
    return spec;
}

inline SweepSpec load_sweep(const std::string& path) {
    const std::filesystem::path p(path);
    return sweep_from_json(detail::parse_json_text(detail::read_text_file(path), path),
                           p.parent_path());
}

// Figure recipes. The T->J SNR is pinned to 0 dB where the reference setup holds it
// fixed; the fixed-ROC placeholder detector is used unless the recipe varies power.

namespace detail {

inline Series series(std::string name,
                     std::vector<std::pair<std::string, nlohmann::json>> overrides) {
    return Series{std::move(name), std::move(overrides)};
}

inline nlohmann::json fixed_snr_base() {
    return nlohmann::json{{"schema_version", kSchemaVersion},
                          {"detector", {{"type", "fixed"}, {"snr_db", 0.0}}}};
}

inline std::vector<Series> model_decoy_series(bool sweep_sets_q) {
    const nlohmann::json decoy_q = 1.0;
    std::vector<Series> out;
    for (const char* model : {"M1", "M2"}) {
        std::vector<std::pair<std::string, nlohmann::json>> with{{"traffic.model", model}};
        if (!sweep_sets_q) {
            with.emplace_back("traffic.q", decoy_q);
        }
        out.push_back(series(std::string(model) + "_decoy", with));
        out.push_back(series(std::string(model) + "_no_decoy",
                             {{"traffic.model", model}, {"traffic.q", 0.0}}));
    }
    return out;
}

}  // namespace detail

inline std::vector<std::string> recipe_names() {
    return {"fig4a", "fig4b", "fig5a", "fig5b", "fig6"};
}

inline SweepSpec recipe(const std::string& name) {
    SweepSpec spec;
    spec.name = name;
    spec.base = detail::fixed_snr_base();
    if (name == "fig4a") {
        spec.parameter = "traffic.q";
        spec.values = linear_grid(0.1, 0.9, 0.1);
        spec.series = {detail::series("decoy", {}),
                       detail::series("no_decoy", {{"traffic.q", 0.0}})};
        spec.metric = "p_j";
        spec.x_label = "decoy probability q (q_t = 0.6)";
        spec.y_label = "jamming power P_J";
    } else if (name == "fig4b") {
        spec.parameter = "traffic.q_t";
        spec.values = linear_grid(0.1, 0.9, 0.1);
        spec.series = {detail::series("decoy", {{"traffic.q", 1.0}}),
                       detail::series("no_decoy", {{"traffic.q", 0.0}})};
        spec.metric = "p_j";
        spec.x_label = "transmit probability q_t (q_d = 1 - q_t)";
        spec.y_label = "jamming power P_J";
    } else if (name == "fig5a") {
        spec.parameter = "traffic.q";
        spec.values = linear_grid(0.1, 0.9, 0.1);
        spec.series = detail::model_decoy_series(true);
        spec.x_label = "decoy probability q (q_t = 0.6)";
        spec.y_label = "average peak AoI";
    } else if (name == "fig5b") {
        spec.parameter = "traffic.q_t";
        spec.values = linear_grid(0.1, 0.9, 0.1);
        spec.base["channel"] = {{"alpha", 0.5}};
        spec.series = detail::model_decoy_series(false);
        spec.x_label = "transmit probability q_t = lambda";
        spec.y_label = "average peak AoI";
    } else if (name == "fig6") {
        spec.parameter = "power.p_t_db";
        spec.values = linear_grid(0.0, 20.0, 2.0);
        spec.base = nlohmann::json{
            {"schema_version", kSchemaVersion},
            {"channel", {{"alpha", 0.5}}},
            {"detector", {{"type", "energy"}, {"n_samples", 16}, {"p_false_alarm", 0.1}}}};
        spec.series = detail::model_decoy_series(false);
        spec.x_label = "transmit power P_T (dB over noise)";
        spec.y_label = "average peak AoI";
    } else {
        std::string known;
        for (const auto& n : recipe_names()) {
            known += " " + n;
        }
        throw LookupError("unknown recipe " + name + "; available:" + known);
    }
    spec.validate();
    return spec;
}

}  // namespace paoi_jam
