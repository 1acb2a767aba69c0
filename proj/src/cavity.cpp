#include "gwbec/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gwbec/constants.hpp"

namespace gwbec {

void CavityConfig::validate() const {
    if (length <= 0.0) throw std::invalid_argument("cavity length must be > 0");
    if (sound_speed <= 0.0) throw std::invalid_argument("sound speed must be > 0");
    if (max_mode < 2) throw std::invalid_argument("max_mode must be >= 2");
    if (atom_mass && *atom_mass <= 0.0)
        throw std::invalid_argument("atom mass must be > 0 when given");
}

double mode_frequency(int n, const CavityConfig& cfg) {
    cfg.validate();
    if (n < 1 || n > cfg.max_mode)
        throw std::domain_error("mode index " + std::to_string(n) +
                                " outside truncation [1, " +
                                std::to_string(cfg.max_mode) + "]");
    // n times the fundamental, so mode_frequency(n) == n * mode_frequency(1)
    // holds exactly in floating point
    return n * (constants::pi * cfg.sound_speed / cfg.length);
}

double resonant_drive_frequency(int m, int n, const CavityConfig& cfg) {
    if (m == n)
        throw std::domain_error("resonant pair needs distinct modes");
    if ((m + n) % 2 == 0)
        throw std::domain_error(
            "m + n must be odd: the first-order resonant beta coefficient "
            "vanishes for even m + n");
    return mode_frequency(m, cfg) + mode_frequency(n, cfg);
}

RegimeCheck check_phonon_regime(int n, const CavityConfig& cfg) {
    cfg.validate();
    if (!cfg.atom_mass)
        throw std::invalid_argument("regime check requires atom_mass");
    if (n < 1 || n > cfg.max_mode)
        throw std::domain_error("mode index outside truncation");
    const double k = n * constants::pi / cfg.length;
    const double ratio = constants::hbar * k / (*cfg.atom_mass * cfg.sound_speed);
    return {ratio, ratio > regime_advisory_threshold};
}

ThermalOccupation thermal_occupation(double frequency_hz, double temperature_k) {
    if (frequency_hz <= 0.0 || temperature_k <= 0.0)
        throw std::domain_error("thermal occupation needs positive frequency and temperature");
    const double omega = 2.0 * constants::pi * frequency_hz;
    const double x = constants::hbar * omega / (constants::k_boltzmann * temperature_k);
    // n = exp(-x) / (1 - exp(-x)); log10 n = (-x - log1p(-exp(-x))) / ln(10)
    const double log_n = -x - std::log1p(-std::exp(-x));
    const double log10_n = log_n / std::log(10.0);
    return {std::exp(log_n), log10_n};
}

}  // namespace gwbec
