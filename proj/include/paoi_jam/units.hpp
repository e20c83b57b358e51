#pragma once

#include <cmath>

namespace paoi_jam {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Power in dBm expressed relative to a noise floor given in dBm.
inline double dbm_to_relative_linear(double dbm, double noise_floor_dbm) {
    return db_to_linear(dbm - noise_floor_dbm);
}

}  // namespace paoi_jam
