#pragma once

namespace gwbec::constants {

// CODATA 2018 values. Golden-number tests depend on these exact literals.
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double pi = 3.14159265358979323846;

inline constexpr const char* table_version = "codata-2018";

}  // namespace gwbec::constants
