#pragma once

// Tabulated detector curves: (snr_db, packet size) -> (p_detect, p_false_alarm),
// as exported by the calibration tool.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "detection.hpp"
#include "errors.hpp"
#include "units.hpp"

namespace paoi_jam {

struct DetectorTable {
    std::vector<int> packet_sizes;
    std::vector<double> snr_db;
    /// Row per packet size, column per snr_db entry.
    std::vector<std::vector<double>> p_detect;
    std::vector<std::vector<double>> p_false_alarm;
    nlohmann::json metadata = nlohmann::json::object();

    void validate() const {
        if (packet_sizes.empty()) {
            throw ValidationError("packet_sizes", "must not be empty");
        }
        if (snr_db.size() < 2) {
            throw ValidationError("snr_db", "needs at least 2 grid points");
        }
        for (std::size_t i = 1; i < snr_db.size(); ++i) {
            if (!(snr_db[i] > snr_db[i - 1])) {
                throw ValidationError("snr_db", "must be strictly increasing");
            }
        }
        for (std::size_t i = 0; i < packet_sizes.size(); ++i) {
            if (packet_sizes[i] < 1) {
                throw ValidationError("packet_sizes", "entries must be >= 1");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (packet_sizes[j] == packet_sizes[i]) {
                    throw ValidationError("packet_sizes", "duplicate entry " +
                                                              std::to_string(packet_sizes[i]));
                }
            }
        }
        check_matrix(p_detect, "p_detect");
        check_matrix(p_false_alarm, "p_false_alarm");
    }

    std::size_t row_of(int n_samples) const {
        const auto it = std::find(packet_sizes.begin(), packet_sizes.end(), n_samples);
        if (it == packet_sizes.end()) {
            std::ostringstream msg;
            msg << "packet size " << n_samples << " not in table; available:";
            for (int n : packet_sizes) {
                msg << ' ' << n;
            }
            throw LookupError(msg.str());
        }
        return static_cast<std::size_t>(it - packet_sizes.begin());
    }

private:
    void check_matrix(const std::vector<std::vector<double>>& m, const char* name) const {
        if (m.size() != packet_sizes.size()) {
            throw ValidationError(name, "needs one row per packet size");
        }
        for (const auto& row : m) {
            if (row.size() != snr_db.size()) {
                throw ValidationError(name, "row length must equal snr_db length");
            }
            for (double v : row) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw ValidationError(name, "probabilities must lie in [0,1]");
                }
            }
        }
    }
};

struct TableLookup {
    double p_detect = 0.0;
    double p_false_alarm = 0.0;
};

namespace detail {

inline double interpolate_row(const std::vector<double>& grid, const std::vector<double>& row,
                              double x) {
    if (x <= grid.front()) {
        return row.front();
    }
    if (x >= grid.back()) {
        return row.back();
    }
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(grid.begin(), grid.end(), x) - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - grid[lo]) / (grid[hi] - grid[lo]);
    return row[lo] + w * (row[hi] - row[lo]);
}

}  // namespace detail

/// Linear interpolation in snr_db, clamped to the edge values outside the grid.
inline TableLookup table_detector_lookup(const DetectorTable& table, double snr_db,
                                         int n_samples) {
    const std::size_t r = table.row_of(n_samples);
    TableLookup out;
    out.p_detect = std::clamp(detail::interpolate_row(table.snr_db, table.p_detect[r], snr_db),
                              0.0, 1.0);
    out.p_false_alarm = std::clamp(
        detail::interpolate_row(table.snr_db, table.p_false_alarm[r], snr_db), 0.0, 1.0);
    return out;
}

/// DetectorModel backed by a table. The noise-only class carries no SNR, so the
/// false-alarm rate is the mean of the row.
class TableDetector final : public DetectorModel {
public:
    explicit TableDetector(DetectorTable table) : table_(std::move(table)) { table_.validate(); }

    double p_detect(double snr, int n_samples) const override {
        if (!(snr > 0.0)) {
            return table_.p_detect[table_.row_of(n_samples)].front();
        }
        return table_detector_lookup(table_, linear_to_db(snr), n_samples).p_detect;
    }

    double p_false_alarm(int n_samples) const override {
        const auto& row = table_.p_false_alarm[table_.row_of(n_samples)];
        double sum = 0.0;
        for (double v : row) {
            sum += v;
        }
        return sum / static_cast<double>(row.size());
    }

    const DetectorTable& table() const { return table_; }

private:
    DetectorTable table_;
};

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset),
                                           '\n'));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what(), line_of_offset(text, e.byte));
    }
}

}  // namespace detail

inline DetectorTable detector_table_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ValidationError("$", "detector table must be a JSON object");
    }
    static const char* const allowed[] = {"schema_version", "packet_sizes", "snr_db",
                                          "p_detect",       "p_false_alarm", "metadata"};
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(std::begin(allowed), std::end(allowed),
                         [&](const char* a) { return key == a; }) == std::end(allowed)) {
            throw ValidationError(key, "unknown field");
        }
    }
    for (const char* required : {"packet_sizes", "snr_db", "p_detect", "p_false_alarm"}) {
        if (!j.contains(required)) {
            throw ValidationError(required, "missing required field");
        }
    }
    DetectorTable t;
    try {
        t.packet_sizes = j.at("packet_sizes").get<std::vector<int>>();
        t.snr_db = j.at("snr_db").get<std::vector<double>>();
        t.p_detect = j.at("p_detect").get<std::vector<std::vector<double>>>();
        t.p_false_alarm = j.at("p_false_alarm").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::type_error& e) {
        throw ValidationError("$", std::string("wrong field type: ") + e.what());
    }
    if (j.contains("metadata")) {
        if (!j.at("metadata").is_object()) {
            throw ValidationError("metadata", "must be an object");
        }
        t.metadata = j.at("metadata");
    }
    t.validate();
    return t;
}

inline nlohmann::json detector_table_to_json(const DetectorTable& t) {
    return nlohmann::json{{"packet_sizes", t.packet_sizes},
                          {"snr_db", t.snr_db},
                          {"p_detect", t.p_detect},
                          {"p_false_alarm", t.p_false_alarm},
                          {"metadata", t.metadata}};
}

inline DetectorTable load_detector_table(const std::string& path) {
    const std::string text = detail::read_text_file(path);
    return detector_table_from_json(detail::parse_json_text(text, path));
}

}  // namespace paoi_jam
