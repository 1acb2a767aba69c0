#pragma once

#include <optional>

namespace gwbec {

/// Trap geometry and condensate parameters defining the phonon spectrum.
struct CavityConfig {
    double length;       // m
    double sound_speed;  // m/s
    int max_mode;        // truncation of the mode ladder
    std::optional<double> atom_mass;  // kg, needed only for the regime check

    void validate() const;
};

struct RegimeCheck {
    double ratio;       // hbar k / (m c_s), dimensionless
    bool advisory;      // set when ratio exceeds the 0.01 margin
};

struct ThermalOccupation {
    double linear;  // may underflow to zero
    double log10;   // authoritative for astronomically small values
};

// omega_n = n pi c_s / L
double mode_frequency(int n, const CavityConfig& cfg);

// Omega = omega_m + omega_n; requires m != n, m + n odd (the first-order
// resonant beta vanishes for even m + n).
double resonant_drive_frequency(int m, int n, const CavityConfig& cfg);

// Linear-dispersion validity: hbar k << m c_s with k = n pi / L.
RegimeCheck check_phonon_regime(int n, const CavityConfig& cfg);

// Bose-Einstein occupation 1/(exp(hbar omega / kT) - 1), evaluated in
// log-space so values like 1e-625 are representable.
ThermalOccupation thermal_occupation(double frequency_hz, double temperature_k);

inline constexpr double regime_advisory_threshold = 0.01;

}  // namespace gwbec
