#pragma once

// JSON scenario documents. Unknown fields are rejected; omitted fields take the
// baseline defaults (unit noise, gamma_min = 1, unit jamming budget, d = 1,
// lambda = q_t = 0.6). Powers are linear unless the key ends in _db / _dbm.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "detector_table.hpp"
#include "errors.hpp"
#include "scenario.hpp"
#include "units.hpp"

namespace paoi_jam {

inline constexpr int kSchemaVersion = 1;

namespace detail {

/// Reads fields of one JSON object and remembers which keys were consumed.
class FieldReader {
public:
    FieldReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ValidationError(path_.empty() ? "$" : path_, "expected an object");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    std::string field(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    std::optional<double> number(const std::string& key) {
        if (!claim(key)) {
            return std::nullopt;
        }
        const auto& v = j_.at(key);
        if (!v.is_number()) {
            throw ValidationError(field(key), "expected a number");
        }
        return v.get<double>();
    }

    double number(const std::string& key, double fallback) {
        return number(key).value_or(fallback);
    }

    std::optional<long long> integer(const std::string& key) {
        if (!claim(key)) {
            return std::nullopt;
        }
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) {
            throw ValidationError(field(key), "expected an integer");
        }
        return v.get<long long>();
    }

    std::optional<std::string> string(const std::string& key) {
        if (!claim(key)) {
            return std::nullopt;
        }
        const auto& v = j_.at(key);
        if (!v.is_string()) {
            throw ValidationError(field(key), "expected a string");
        }
        return v.get<std::string>();
    }

    const nlohmann::json* raw(const std::string& key) {
        return claim(key) ? &j_.at(key) : nullptr;
    }

    /// At most one of `keys` may be present.
    void exclusive(std::initializer_list<const char*> keys) const {
        std::string found;
        for (const char* k : keys) {
            if (j_.contains(k)) {
                if (!found.empty()) {
                    throw ValidationError(field(k), "conflicts with " + field(found));
                }
                found = k;
            }
        }
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) {
                throw ValidationError(field(key), "unknown field");
            }
        }
    }

private:
    bool claim(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline std::optional<double> linear_or_db(FieldReader& r, const std::string& key) {
    r.exclusive({key.c_str(), (key + "_db").c_str()});
    if (auto lin = r.number(key)) {
        return lin;
    }
    if (auto db = r.number(key + "_db")) {
        return db_to_linear(*db);
    }
    return std::nullopt;
}

inline const nlohmann::json& empty_object() {
    static const nlohmann::json e = nlohmann::json::object();
    return e;
}

inline ChannelConfig read_channel(const nlohmann::json& j) {
    FieldReader r(j, "channel");
    const double h2 = r.number("h2", 1.0);
    const double alpha = r.number("alpha", 1.0);
    const double h3 = r.number("h3", 1.0);
    const double h4 = r.number("h4", 1.0);
    std::array<double, 4> sigma2{1.0, 1.0, 1.0, 1.0};
    if (const auto* s = r.raw("sigma2")) {
        if (s->is_number()) {
            sigma2.fill(s->get<double>());
        } else if (s->is_array() && s->size() == 4 &&
                   std::all_of(s->begin(), s->end(), [](const auto& v) { return v.is_number(); })) {
            for (std::size_t i = 0; i < 4; ++i) {
                sigma2[i] = (*s)[i].get<double>();
            }
        } else {
            throw ValidationError("channel.sigma2", "expected a number or an array of 4 numbers");
        }
    }
    const double gamma_min = linear_or_db(r, "gamma_min").value_or(1.0);
    r.finish();
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ValidationError("channel.alpha", "must lie in (0,1]");
    }
    ChannelConfig c;
    c.h2 = h2;
    c.alpha = alpha;
    c.h1 = h2 / alpha;
    c.h3 = h3;
    c.h4 = h4;
    c.sigma2 = sigma2;
    c.gamma_min = gamma_min;
    return c;
}

inline PowerConfig read_power(const nlohmann::json& j) {
    FieldReader r(j, "power");
    PowerConfig p;
    r.exclusive({"p_t", "p_t_db", "p_t_dbm"});
    const auto dbm = r.number("p_t_dbm");
    const auto floor = r.number("noise_floor_dbm");
    if (dbm) {
        if (!floor) {
            throw ValidationError("power.noise_floor_dbm", "required when p_t_dbm is given");
        }
        p.p_t = dbm_to_relative_linear(*dbm, *floor);
    } else {
        if (floor) {
            throw ValidationError("power.noise_floor_dbm", "only meaningful with p_t_dbm");
        }
        p.p_t = linear_or_db(r, "p_t").value_or(10.0);
    }
    p.p_d = linear_or_db(r, "p_d").value_or(p.p_t);
    p.p_t_max = linear_or_db(r, "p_t_max");
    p.p_j_max = linear_or_db(r, "p_j_max").value_or(1.0);
    r.finish();
    return p;
}

inline TrafficConfig read_traffic(const nlohmann::json& j) {
    FieldReader r(j, "traffic");
    TrafficConfig t;
    if (auto m = r.string("model")) {
        if (*m == "M1" || *m == "queued") {
            t.model = UpdateModel::queued;
        } else if (*m == "M2" || *m == "jit") {
            t.model = UpdateModel::jit;
        } else {
            throw ValidationError("traffic.model", "expected M1 or M2, got " + *m);
        }
    }
    t.d = r.number("d", 1.0);
    if (!(t.d > 0.0)) {
        throw ValidationError("traffic.d", "must be > 0");
    }
    r.exclusive({"lambda", "q_t"});
    if (auto lambda = r.number("lambda")) {
        t.lambda = *lambda;
    } else if (auto q_t = r.number("q_t")) {
        if (!(*q_t >= 0.0 && *q_t <= 1.0)) {
            throw ValidationError("traffic.q_t", "must lie in [0,1]");
        }
        t.lambda = *q_t / t.d;
    } else {
        t.lambda = 0.6 / t.d;
    }
    t.q = r.number("q", 0.0);
    r.finish();
    return t;
}

inline int read_packet_size(FieldReader& r) {
    const auto n = r.integer("n_samples").value_or(16);
    if (n < 1 || n > 1'000'000) {
        throw ValidationError(r.field("n_samples"), "must lie in [1, 1e6]");
    }
    return static_cast<int>(n);
}

inline DetectorSpec read_detector(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    FieldReader r(j, "detector");
    DetectorSpec spec;
    const std::string type = r.string("type").value_or("fixed");
    if (auto mode = r.string("decision_mode")) {
        if (*mode == "exclusive") {
            spec.mode = DecisionMode::exclusive;
        } else if (*mode == "paper_literal") {
            spec.mode = DecisionMode::paper_literal;
        } else {
            throw ValidationError("detector.decision_mode",
                                  "expected exclusive or paper_literal, got " + *mode);
        }
    }
    spec.snr_db = r.number("snr_db");
    spec.decoy_snr_offset_db = r.number("decoy_snr_offset_db", 3.0);

    if (type == "fixed") {
        FixedRocDetector f;
        f.roc.p_m_t = r.number("p_m_t", f.roc.p_m_t);
        f.roc.p_m_d = r.number("p_m_d", f.roc.p_m_d);
        f.roc.p_f_t = r.number("p_f_t", f.roc.p_f_t);
        f.roc.p_f_d = r.number("p_f_d", f.roc.p_f_d);
        spec.kind = f;
    } else if (type == "energy") {
        EnergyDetectorSpec e;
        e.n_samples = read_packet_size(r);
        r.exclusive({"p_false_alarm", "threshold"});
        e.p_false_alarm = r.number("p_false_alarm", e.p_false_alarm);
        e.threshold = r.number("threshold");
        spec.kind = e;
    } else if (type == "table") {
        TableDetectorSpec t;
        t.n_samples = read_packet_size(r);
        const auto path = r.string("path");
        if (!path) {
            throw ValidationError("detector.path", "required for a table detector");
        }
        t.path = *path;
        std::filesystem::path resolved(*path);
        if (resolved.is_relative()) {
            resolved = base_dir / resolved;
        }
        t.model = std::make_shared<const TableDetector>(load_detector_table(resolved.string()));
        spec.kind = t;
    } else {
        throw ValidationError("detector.type", "expected fixed, energy or table, got " + type);
    }
    r.finish();
    return spec;
}

inline SimulationConfig read_simulation(const nlohmann::json& j) {
    FieldReader r(j, "simulation");
    SimulationConfig s;
    if (const auto* seed = r.raw("seed")) {
        if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long long>() >= 0)) {
            throw ValidationError("simulation.seed", "expected a non-negative integer");
        }
        s.seed = seed->get<std::uint64_t>();
    }
    if (auto n = r.integer("n_slots")) {
        if (*n < 1) {
            throw ValidationError("simulation.n_slots", "must be >= 1");
        }
        s.n_slots = static_cast<std::uint64_t>(*n);
    }
    s.burn_in_fraction = r.number("burn_in_fraction", s.burn_in_fraction);
    if (auto b = r.integer("batches")) {
        s.batches = static_cast<int>(*b);
    }
    r.finish();
    return s;
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir = ".") {
    detail::FieldReader r(j, "");
    if (auto v = r.integer("schema_version"); v && *v != kSchemaVersion) {
        throw ValidationError("schema_version", "unsupported version " + std::to_string(*v));
    }
    const auto section = [&](const char* key) -> const nlohmann::json& {
        const auto* s = r.raw(key);
        return s ? *s : detail::empty_object();
    };
    Scenario s;
    s.channel = detail::read_channel(section("channel"));
    s.power = detail::read_power(section("power"));
    s.traffic = detail::read_traffic(section("traffic"));
    s.detector = detail::read_detector(section("detector"), base_dir);
    {
        detail::FieldReader jr(section("jammer"), "jammer");
        if (auto mode = jr.string("mode")) {
            if (*mode == "oracle") {
                s.jammer_mode = JammerMode::oracle;
            } else if (*mode == "adaptive") {
                s.jammer_mode = JammerMode::adaptive;
            } else {
                throw ValidationError("jammer.mode", "expected oracle or adaptive, got " + *mode);
            }
        }
        jr.finish();
    }
    s.sim = detail::read_simulation(section("simulation"));
    r.finish();
    s.validate();
    return s;
}

inline Scenario scenario_from_text(const std::string& text, const std::string& origin = "<scenario>",
                                   const std::filesystem::path& base_dir = ".") {
    const std::string trimmed = text.find_first_not_of(" \t\r\n") == std::string::npos ? "{}" : text;
    return scenario_from_json(detail::parse_json_text(trimmed, origin), base_dir);
}

inline Scenario load_scenario(const std::string& path) {
    const std::filesystem::path p(path);
    return scenario_from_text(detail::read_text_file(path), path, p.parent_path());
}

/// Canonical document for a scenario: linear units, every field explicit.
inline nlohmann::json scenario_to_json(const Scenario& s) {
    using nlohmann::json;
    json detector = json::object();
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FixedRocDetector>) {
                detector["type"] = "fixed";
                detector["p_m_t"] = k.roc.p_m_t;
                detector["p_m_d"] = k.roc.p_m_d;
                detector["p_f_t"] = k.roc.p_f_t;
                detector["p_f_d"] = k.roc.p_f_d;
            } else if constexpr (std::is_same_v<K, EnergyDetectorSpec>) {
                detector["type"] = "energy";
                detector["n_samples"] = k.n_samples;
                if (k.threshold) {
                    detector["threshold"] = *k.threshold;
                } else {
                    detector["p_false_alarm"] = k.p_false_alarm;
                }
            } else {
                detector["type"] = "table";
                detector["n_samples"] = k.n_samples;
                detector["path"] = k.path;
            }
        },
        s.detector.kind);
    detector["decision_mode"] =
        s.detector.mode == DecisionMode::exclusive ? "exclusive" : "paper_literal";
    if (s.detector.snr_db) {
        detector["snr_db"] = *s.detector.snr_db;
    }
    detector["decoy_snr_offset_db"] = s.detector.decoy_snr_offset_db;

    json power{{"p_t", s.power.p_t}, {"p_d", s.power.p_d}, {"p_j_max", s.power.p_j_max}};
    if (s.power.p_t_max) {
        power["p_t_max"] = *s.power.p_t_max;
    }
    return json{
        {"schema_version", kSchemaVersion},
        {"channel",
         {{"h2", s.channel.h2},
          {"alpha", s.channel.alpha},
          {"h3", s.channel.h3},
          {"h4", s.channel.h4},
          {"sigma2", s.channel.sigma2},
          {"gamma_min", s.channel.gamma_min}}},
        {"power", power},
        {"traffic",
         {{"model", to_string(s.traffic.model)},
          {"lambda", s.traffic.lambda},
          {"q", s.traffic.q},
          {"d", s.traffic.d}}},
        {"detector", detector},
        {"jammer", {{"mode", s.jammer_mode == JammerMode::oracle ? "oracle" : "adaptive"}}},
        {"simulation",
         {{"seed", s.sim.seed},
          {"n_slots", s.sim.n_slots},
          {"burn_in_fraction", s.sim.burn_in_fraction},
          {"batches", s.sim.batches}}},
    };
}

}  // namespace paoi_jam
